/**
 * View-model builders for the scout UI.
 *
 * Everything here is a pure function from service payloads to display
 * models, so it can be tested without a DOM. No analytics are recomputed
 * client-side; the single exception is the consistency check that the
 * displayed retrieval score z agrees with s times rBar up to display
 * rounding, which guards against rendering a corrupted payload.
 */

import type { PlayerProfile, SearchHit, SearchPayload } from "./api.js";

// ---------------------------------------------------------------------------
// Score formatting
// ---------------------------------------------------------------------------

/** Decimal places used for every score shown in the UI. */
export const DISPLAY_DECIMALS = 4;

/** Format a score the way the tables display it. */
export function formatScore(value: number): string {
  return value.toFixed(DISPLAY_DECIMALS);
}

/**
 * True when two scores render to the same value up to one unit in the last
 * displayed decimal place.
 */
export function displayEqual(a: number, b: number): boolean {
  const unit = Math.pow(10, -DISPLAY_DECIMALS);
  return Math.abs(Number(formatScore(a)) - Number(formatScore(b))) <= unit + 1e-12;
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

/** One row of the ranked result table, ready to display. */
export interface ResultRow {
  /** Player identifier, used to select the row. */
  playerId: number;
  /** Display name. */
  name: string;
  /** Retrieval score as formatted for display. */
  z: string;
  /** Zone support as formatted for display. */
  s: string;
  /** Mean rating as formatted for display. */
  rBar: string;
  /** Whether displayed z equals displayed s times rBar within rounding. */
  consistent: boolean;
}

/** Ranked table plus the heatmap overlay of the selected row, if any. */
export interface ResultView {
  /** Rows in the exact order the server returned them. */
  rows: ResultRow[];
  /** Heatmap of the selected player, or null when none is selected. */
  overlay: number[] | null;
}

/**
 * Build display rows from a search payload.
 *
 * The payload order is the ranking; rows are mapped one-to-one and never
 * re-sorted here or anywhere else in the UI.
 */
export function rowsFromSearch(payload: SearchPayload): ResultRow[] {
  return payload.results.map((hit: SearchHit) => ({
    playerId: hit.playerId,
    name: hit.name,
    z: formatScore(hit.z),
    s: formatScore(hit.s),
    rBar: formatScore(hit.rBar),
    consistent: displayEqual(hit.z, hit.s * hit.rBar),
  }));
}

/** Build the full result view, overlaying the selected player's heatmap. */
export function buildResultView(payload: SearchPayload, selectedPlayerId: number | null): ResultView {
  const rows = rowsFromSearch(payload);
  let overlay: number[] | null = null;
  if (selectedPlayerId !== null) {
    const hit = payload.results.find((h) => h.playerId === selectedPlayerId);
    overlay = hit?.heatmap ?? null;
  }
  return { rows, overlay };
}

// ---------------------------------------------------------------------------
// Heatmap shading
// ---------------------------------------------------------------------------

/**
 * Opacity for one heatmap cell, monotone in the cell value: a larger value
 * never yields a lighter cell. Values are scaled by the payload maximum.
 */
export function heatmapAlpha(value: number, maxValue: number): number {
  if (!(maxValue > 0) || value <= 0) {
    return 0;
  }
  return Math.min(1, value / maxValue);
}

/** CSS color for one heatmap cell. */
export function heatmapColor(value: number, maxValue: number): string {
  return `rgba(16, 99, 57, ${heatmapAlpha(value, maxValue).toFixed(3)})`;
}

// ---------------------------------------------------------------------------
// Player profile
// ---------------------------------------------------------------------------

/** One bar of the role-frequency chart. */
export interface RoleBar {
  /** Role index the bar is for. */
  role: number;
  /** Share of the player's matches in that role, in [0, 1]. */
  share: number;
}

/** One point of the rating series chart. */
export interface SeriesPoint {
  /** Match identifier, in chronological order. */
  matchId: number;
  /** Time-decayed mean rating after that match. */
  rating: number;
}

/** Display model for the player profile panel. */
export interface ProfileView {
  /** Panel title: the player's name. */
  title: string;
  /** Mean rating as formatted for display. */
  rBar: string;
  /** Goal-adjusted mean rating as formatted for display. */
  rBarStar: string;
  /** Number of rated matches. */
  matchCount: number;
  /** Rating per match, in payload order. */
  series: SeriesPoint[];
  /** Role-frequency bars in role order, empty without role data. */
  roleBars: RoleBar[];
  /** Versatility rendered to two decimals, or "n/a" when unavailable. */
  versatility: string;
  /** Row-major heatmap values, or null when the player has no events. */
  heatmap: number[] | null;
}

/** Build the profile panel model from a player payload. */
export function profileView(profile: PlayerProfile): ProfileView {
  const roleBars: RoleBar[] =
    profile.roleShares === null ? [] : profile.roleShares.map((share, role) => ({ role, share }));
  return {
    title: profile.name,
    rBar: formatScore(profile.rBar),
    rBarStar: formatScore(profile.rBarStar),
    matchCount: profile.matchCount,
    series: profile.matches.map((m) => ({ matchId: m.matchId, rating: m.r })),
    roleBars,
    versatility: profile.versatility === null ? "n/a" : profile.versatility.toFixed(2),
    heatmap: profile.heatmap,
  };
}

// ---------------------------------------------------------------------------
// Banners and panels
// ---------------------------------------------------------------------------

/** Non-blocking notice shown above the results without clearing them. */
export interface Banner {
  /** Severity of the notice. */
  kind: "error" | "info";
  /** Text shown to the user. */
  message: string;
  /** Whether a retry button is offered. */
  retryable: boolean;
}

/** Banner for a failed search: the previous view stays usable. */
export function searchErrorBanner(message: string): Banner {
  return { kind: "error", message: `search failed: ${message}`, retryable: true };
}

/** Panel shown when a player id does not exist on the server. */
export function playerNotFoundPanel(playerId: number): Banner {
  return { kind: "info", message: `player ${playerId} not found`, retryable: false };
}

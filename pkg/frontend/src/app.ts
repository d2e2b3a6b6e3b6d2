/**
 * Browser entry point: wires the grid, search, and profile panels to the
 * pitchrank service on the same origin.
 *
 * All state lives in this module; the imported helpers are pure. The grid
 * dimensions come from GET /roles at startup and are never assumed.
 */

import { ApiError, isPlayerNotFound, ScoutClient } from "./api.js";
import type { GridDims, SearchPayload } from "./api.js";
import { canSubmit, emptySelection, toggleZone, zonesOf } from "./grid.js";
import type { GridSelection } from "./grid.js";
import {
  Banner,
  buildResultView,
  heatmapColor,
  playerNotFoundPanel,
  profileView,
  searchErrorBanner,
} from "./render.js";

const client = new ScoutClient("");

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

let grid: GridDims = { rows: 0, cols: 0 };
let selection: GridSelection = emptySelection(grid);
let lastPayload: SearchPayload | null = null;
let selectedPlayerId: number | null = null;
let retryAction: (() => void) | null = null;

// ---------------------------------------------------------------------------
// Element lookup
// ---------------------------------------------------------------------------

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

const gridEl = byId<HTMLDivElement>("grid");
const submitEl = byId<HTMLButtonElement>("submit");
const clearEl = byId<HTMLButtonElement>("clear");
const topKEl = byId<HTMLInputElement>("topk");
const bannerEl = byId<HTMLDivElement>("banner");
const resultsEl = byId<HTMLDivElement>("results");
const profileEl = byId<HTMLDivElement>("profile");
const modelEl = byId<HTMLDivElement>("model");

// ---------------------------------------------------------------------------
// Banner
// ---------------------------------------------------------------------------

function showBanner(banner: Banner, onRetry: (() => void) | null): void {
  retryAction = onRetry;
  bannerEl.replaceChildren();
  bannerEl.className = `banner banner-${banner.kind}`;
  const text = document.createElement("span");
  text.textContent = banner.message;
  bannerEl.appendChild(text);
  if (banner.retryable && onRetry !== null) {
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", () => {
      clearBanner();
      retryAction?.();
    });
    bannerEl.appendChild(retry);
  }
  bannerEl.hidden = false;
}

function clearBanner(): void {
  bannerEl.hidden = true;
  bannerEl.replaceChildren();
}

// ---------------------------------------------------------------------------
// Grid rendering
// ---------------------------------------------------------------------------

function renderGrid(overlay: number[] | null): void {
  gridEl.replaceChildren();
  gridEl.style.gridTemplateColumns = `repeat(${grid.cols}, 1fr)`;
  const maxValue = overlay === null ? 0 : Math.max(...overlay, 0);
  for (let zone = 0; zone < grid.rows * grid.cols; zone++) {
    const cell = document.createElement("button");
    cell.className = selection.selected.has(zone) ? "cell cell-on" : "cell";
    cell.title = `zone ${zone}`;
    if (overlay !== null) {
      cell.style.backgroundColor = heatmapColor(overlay[zone] ?? 0, maxValue);
    }
    cell.addEventListener("click", () => {
      selection = toggleZone(selection, zone);
      selectedPlayerId = null;
      renderGrid(null);
    });
    gridEl.appendChild(cell);
  }
  submitEl.disabled = !canSubmit(selection);
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

function renderResults(): void {
  resultsEl.replaceChildren();
  if (lastPayload === null) {
    return;
  }
  const view = buildResultView(lastPayload, selectedPlayerId);
  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  for (const label of ["name", "z", "s", "r̄"]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of view.rows) {
    const tr = body.insertRow();
    tr.className = row.playerId === selectedPlayerId ? "row-on" : "";
    if (!row.consistent) {
      tr.classList.add("row-suspect");
      tr.title = "score does not match s times mean rating";
    }
    for (const value of [row.name, row.z, row.s, row.rBar]) {
      tr.insertCell().textContent = value;
    }
    tr.addEventListener("click", () => {
      selectedPlayerId = row.playerId;
      renderResults();
      renderGrid(buildResultView(lastPayload!, selectedPlayerId).overlay);
      void showProfile(row.playerId);
    });
  }
  resultsEl.appendChild(table);
}

function runSearch(): void {
  const topK = Math.max(1, Number(topKEl.value) || 10);
  const body = { zones: zonesOf(selection), grid, top_k: topK };
  const attempt = (): void => {
    void client
      .search(body)
      .then((payload) => {
        if (payload === null) {
          return; // superseded by a newer search
        }
        clearBanner();
        lastPayload = payload;
        selectedPlayerId = null;
        renderResults();
      })
      .catch((err: unknown) => {
        const message = err instanceof ApiError ? err.message : String(err);
        showBanner(searchErrorBanner(message), attempt);
      });
  };
  attempt();
}

// ---------------------------------------------------------------------------
// Player profile
// ---------------------------------------------------------------------------

function sparkline(points: { rating: number }[]): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", "0 0 100 30");
  svg.setAttribute("class", "spark");
  const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
  const n = points.length;
  const coords = points.map((p, i) => {
    const x = n === 1 ? 50 : (i / (n - 1)) * 100;
    const y = 28 - p.rating * 26;
    return `${x.toFixed(1)},${y.toFixed(1)}`;
  });
  line.setAttribute("points", coords.join(" "));
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", "currentColor");
  svg.appendChild(line);
  return svg;
}

async function showProfile(playerId: number): Promise<void> {
  profileEl.replaceChildren();
  let view;
  try {
    view = profileView(await client.player(playerId));
  } catch (err) {
    if (isPlayerNotFound(err)) {
      const panel = playerNotFoundPanel(playerId);
      const p = document.createElement("p");
      p.className = "muted";
      p.textContent = panel.message;
      profileEl.appendChild(p);
      return;
    }
    throw err;
  }
  const title = document.createElement("h2");
  title.textContent = view.title;
  profileEl.appendChild(title);

  const summary = document.createElement("p");
  summary.textContent =
    `mean rating ${view.rBar}, goal-adjusted ${view.rBarStar}, ` +
    `${view.matchCount} matches, versatility ${view.versatility}`;
  profileEl.appendChild(summary);

  if (view.series.length > 0) {
    profileEl.appendChild(sparkline(view.series));
  }

  if (view.roleBars.length > 0) {
    const bars = document.createElement("div");
    bars.className = "rolebars";
    for (const bar of view.roleBars) {
      const rowEl = document.createElement("div");
      rowEl.className = "rolebar";
      const label = document.createElement("span");
      label.textContent = `role ${bar.role}`;
      const track = document.createElement("div");
      track.className = "track";
      const fill = document.createElement("div");
      fill.className = "fill";
      fill.style.width = `${(bar.share * 100).toFixed(1)}%`;
      track.appendChild(fill);
      rowEl.append(label, track);
      bars.appendChild(rowEl);
    }
    profileEl.appendChild(bars);
  }

  if (view.heatmap !== null) {
    const map = document.createElement("div");
    map.className = "miniheat";
    map.style.gridTemplateColumns = `repeat(${grid.cols}, 1fr)`;
    const maxValue = Math.max(...view.heatmap, 0);
    for (const value of view.heatmap) {
      const cell = document.createElement("div");
      cell.style.backgroundColor = heatmapColor(value, maxValue);
      map.appendChild(cell);
    }
    profileEl.appendChild(map);
  }
}

// ---------------------------------------------------------------------------
// Startup
// ---------------------------------------------------------------------------

async function init(): Promise<void> {
  try {
    const roles = await client.roles();
    grid = roles.grid;
    selection = emptySelection(grid);
    modelEl.textContent =
      `${roles.k} roles, silhouette ${roles.silhouette.toFixed(3)}, ` +
      `grid ${grid.rows}x${grid.cols}, bundle ${roles.bundleDigest.slice(0, 8)}`;
    renderGrid(null);
  } catch (err) {
    const message = err instanceof ApiError ? err.message : String(err);
    showBanner({ kind: "error", message: `service unavailable: ${message}`, retryable: true }, () => {
      void init();
    });
  }
}

submitEl.addEventListener("click", runSearch);
clearEl.addEventListener("click", () => {
  selection = emptySelection(grid);
  selectedPlayerId = null;
  renderGrid(null);
});

void init();

import { describe, expect, it } from "vitest";

import type { PlayerProfile, SearchPayload } from "../src/api.js";
import {
  buildResultView,
  displayEqual,
  formatScore,
  heatmapAlpha,
  playerNotFoundPanel,
  profileView,
  rowsFromSearch,
  searchErrorBanner,
} from "../src/render.js";
import { seededRandom } from "./util.js";

const GRID = { rows: 2, cols: 3 };

function hit(playerId: number, name: string, s: number, rBar: number, z = s * rBar) {
  return { playerId, name, z, s, rBar, heatmap: null };
}

describe("rowsFromSearch", () => {
  it("renders rows exactly in server order, never re-sorted", () => {
    const payload: SearchPayload = {
      grid: GRID,
      results: [hit(3, "C", 0.2, 0.5), hit(1, "A", 0.9, 0.9), hit(2, "B", 0.5, 0.6)],
    };
    const rows = rowsFromSearch(payload);
    expect(rows.map((r) => r.name)).toEqual(["C", "A", "B"]);
  });

  it("shows s = 1 for every player on an all-zones result", () => {
    const payload: SearchPayload = {
      grid: GRID,
      results: [hit(1, "A", 1.0, 0.73), hit(2, "B", 1.0, 0.41), hit(3, "C", 1.0, 0.12)],
    };
    for (const row of rowsFromSearch(payload)) {
      expect(row.s).toBe("1.0000");
      expect(row.consistent).toBe(true);
    }
  });

  it("confirms displayed z equals displayed s times rBar within rounding", () => {
    const rand = seededRandom(99);
    const results = Array.from({ length: 100 }, (_, i) => {
      const s = rand();
      const rBar = rand();
      return hit(i, `P${i}`, s, rBar, s * rBar + (rand() - 0.5) * 1e-9);
    });
    const rows = rowsFromSearch({ grid: GRID, results });
    expect(rows.every((r) => r.consistent)).toBe(true);
  });

  it("flags a row whose score disagrees with s times rBar", () => {
    const rows = rowsFromSearch({
      grid: GRID,
      results: [hit(1, "A", 0.5, 0.5, 0.5 * 0.5 + 0.01)],
    });
    expect(rows[0]!.consistent).toBe(false);
  });
});

describe("buildResultView", () => {
  it("overlays the selected player's heatmap and nothing otherwise", () => {
    const map = [0.5, 0.5, 0, 0, 0, 0];
    const payload: SearchPayload = {
      grid: GRID,
      results: [{ ...hit(1, "A", 0.5, 0.5), heatmap: map }],
    };
    expect(buildResultView(payload, 1).overlay).toEqual(map);
    expect(buildResultView(payload, null).overlay).toBeNull();
    expect(buildResultView(payload, 42).overlay).toBeNull();
  });
});

describe("score formatting", () => {
  it("formats to four decimals", () => {
    expect(formatScore(0.5)).toBe("0.5000");
    expect(formatScore(1)).toBe("1.0000");
  });

  it("treats values within one display unit as equal", () => {
    expect(displayEqual(0.12344999, 0.12345001)).toBe(true);
    expect(displayEqual(0.1234, 0.1236)).toBe(false);
  });
});

describe("heatmapAlpha", () => {
  it("is monotone: a larger value never yields a lighter cell", () => {
    const rand = seededRandom(7);
    const values = Array.from({ length: 200 }, () => rand()).sort((a, b) => a - b);
    const maxValue = values[values.length - 1]!;
    let previous = -1;
    for (const value of values) {
      const alpha = heatmapAlpha(value, maxValue);
      expect(alpha).toBeGreaterThanOrEqual(previous);
      previous = alpha;
    }
  });

  it("is zero for empty or all-zero maps", () => {
    expect(heatmapAlpha(0, 0)).toBe(0);
    expect(heatmapAlpha(0.5, 0)).toBe(0);
  });
});

describe("profileView", () => {
  function profile(overrides: Partial<PlayerProfile>): PlayerProfile {
    return {
      playerId: 1,
      name: "P1",
      rBar: 0.6,
      rBarStar: 0.62,
      matchCount: 10,
      matches: [
        { matchId: 1, r: 0.5, rStar: 0.5, roles: [0], primaryRole: 0 },
        { matchId: 2, r: 0.7, rStar: 0.72, roles: [0], primaryRole: 0 },
      ],
      roles: [0],
      versatility: 0,
      roleShares: [1, 0, 0, 0],
      heatmap: null,
      ...overrides,
    };
  }

  it("shows versatility 0.00 for a single-role player", () => {
    expect(profileView(profile({})).versatility).toBe("0.00");
  });

  it("shows versatility 1.00 for a player uniform over eight roles", () => {
    const view = profileView(
      profile({
        versatility: 1,
        roles: [0, 1, 2, 3, 4, 5, 6, 7],
        roleShares: new Array(8).fill(1 / 8),
      }),
    );
    expect(view.versatility).toBe("1.00");
    expect(view.roleBars).toHaveLength(8);
    expect(view.roleBars.map((b) => b.role)).toEqual([0, 1, 2, 3, 4, 5, 6, 7]);
  });

  it("degrades gracefully without role data", () => {
    const view = profileView(profile({ versatility: null, roleShares: null, roles: [] }));
    expect(view.versatility).toBe("n/a");
    expect(view.roleBars).toEqual([]);
  });

  it("keeps the rating series in payload order", () => {
    const view = profileView(profile({}));
    expect(view.series).toEqual([
      { matchId: 1, rating: 0.5 },
      { matchId: 2, rating: 0.7 },
    ]);
  });
});

describe("banners", () => {
  it("builds a retryable, non-blocking error banner for a failed search", () => {
    const banner = searchErrorBanner("grid is 10x10");
    expect(banner.kind).toBe("error");
    expect(banner.retryable).toBe(true);
    expect(banner.message).toContain("grid is 10x10");
  });

  it("builds a not-found panel for a missing player", () => {
    const panel = playerNotFoundPanel(999);
    expect(panel.message).toContain("not found");
    expect(panel.retryable).toBe(false);
  });
});

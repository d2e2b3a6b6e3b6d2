/**
 * Zone selection state for the pitch grid.
 *
 * A selection mirrors the tessellation the service reports (rows x cols)
 * and carries the set of chosen zone indices. The binary query vector Q is
 * derived from it and can be reconstructed from a rendered selection
 * without loss, which keeps what is sent and what is shown identical.
 */

import type { GridDims } from "./api.js";

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/** Immutable zone selection over a concrete grid. */
export interface GridSelection {
  /** Number of horizontal bands, taken from the service configuration. */
  readonly rows: number;
  /** Number of vertical bands, taken from the service configuration. */
  readonly cols: number;
  /** Selected zone indices, each in [0, rows * cols). */
  readonly selected: ReadonlySet<number>;
}

// ---------------------------------------------------------------------------
// Construction and updates
// ---------------------------------------------------------------------------

/** Create an empty selection over the given grid. */
export function emptySelection(grid: GridDims): GridSelection {
  return { rows: grid.rows, cols: grid.cols, selected: new Set() };
}

/** Total number of zones in the selection's grid. */
export function zoneCount(selection: GridSelection): number {
  return selection.rows * selection.cols;
}

/**
 * Flip membership of one zone, returning a new selection.
 *
 * An index outside [0, rows * cols) is ignored: the selection is returned
 * unchanged and a warning is logged.
 */
export function toggleZone(selection: GridSelection, zone: number): GridSelection {
  const total = zoneCount(selection);
  if (!Number.isInteger(zone) || zone < 0 || zone >= total) {
    console.warn(`ignoring out-of-range zone index ${zone} (grid has ${total} zones)`);
    return selection;
  }
  const selected = new Set(selection.selected);
  if (selected.has(zone)) {
    selected.delete(zone);
  } else {
    selected.add(zone);
  }
  return { rows: selection.rows, cols: selection.cols, selected };
}

// ---------------------------------------------------------------------------
// Query vector
// ---------------------------------------------------------------------------

/** Binary query vector: length rows * cols, 1 exactly at selected zones. */
export function toQ(selection: GridSelection): number[] {
  const q = new Array<number>(zoneCount(selection)).fill(0);
  for (const zone of selection.selected) {
    q[zone] = 1;
  }
  return q;
}

/** Selected zone indices in ascending order, as sent to the service. */
export function zonesOf(selection: GridSelection): number[] {
  return [...selection.selected].sort((a, b) => a - b);
}

/**
 * Rebuild a selection from a binary query vector.
 *
 * Inverse of toQ: any entry above zero marks its zone selected. Throws when
 * the vector length does not match the grid.
 */
export function selectionFromQ(grid: GridDims, q: readonly number[]): GridSelection {
  const total = grid.rows * grid.cols;
  if (q.length !== total) {
    throw new Error(`query vector has length ${q.length}, expected ${total}`);
  }
  const selected = new Set<number>();
  for (let zone = 0; zone < q.length; zone++) {
    if ((q[zone] ?? 0) > 0) {
      selected.add(zone);
    }
  }
  return { rows: grid.rows, cols: grid.cols, selected };
}

/** True when a search may be submitted: at least one zone is selected. */
export function canSubmit(selection: GridSelection): boolean {
  return selection.selected.size > 0;
}

/**
 * The sphere view model: a direct, order-preserving mirror of the latest
 * /sessions/{sid}/spheres response plus the current selection. The client
 * holds no recommendation logic of its own.
 */

import { SphereNode, SpheresPayload } from './types.js';

export interface Selection {
  kind: string;
  id: string;
}

export interface SphereViewModel {
  sessionId: string;
  center: string;
  white: SphereNode[];
  blue: SphereNode[];
  gray: SphereNode[];
  selection: Selection | null;
}

/** Build the view model; ring arrays are copied as-is, order included. */
export function buildViewModel(
  sessionId: string,
  center: string,
  spheres: SpheresPayload,
  selection: Selection | null = null,
): SphereViewModel {
  return {
    sessionId,
    center,
    white: [...spheres.white],
    blue: [...spheres.blue],
    gray: [...spheres.gray],
    selection,
  };
}

/** Star icons for a report row or node tooltip, e.g. 4 -> "★★★★☆". */
export function starIcons(stars: number): string {
  const filled = Math.min(5, Math.max(0, stars));
  return '★'.repeat(filled) + '☆'.repeat(5 - filled);
}

/**
 * Deterministic radial layout for the concentric spheres scene.
 *
 * The center sits innermost; the blue (context) ring is closer to the
 * center than the gray (context recommendations) ring, which is closer
 * than the white (baseline) ring. Nodes are placed clockwise starting at
 * 12 o'clock in list order, so positions are a pure function of ring order.
 */

export interface Point {
  x: number;
  y: number;
}

export interface SceneGeometry {
  width: number;
  height: number;
  center: Point;
  centerRadius: number;
  blueRadius: number;
  grayRadius: number;
  whiteRadius: number;
}

export const DEFAULT_GEOMETRY: SceneGeometry = {
  width: 640,
  height: 640,
  center: { x: 320, y: 320 },
  centerRadius: 42,
  blueRadius: 105,
  grayRadius: 185,
  whiteRadius: 275,
};

const MIN_NODE_RADIUS = 8;
const MAX_NODE_RADIUS = 22;

/**
 * Position index i of n nodes on a ring: clockwise from 12 o'clock.
 * Screen coordinates grow downward, so increasing angles move clockwise.
 */
export function nodePosition(index: number, count: number, ringRadius: number, center: Point): Point {
  const angle = -Math.PI / 2 + (2 * Math.PI * index) / Math.max(count, 1);
  return {
    x: center.x + ringRadius * Math.cos(angle),
    y: center.y + ringRadius * Math.sin(angle),
  };
}

/** Node size scales linearly with strength; context nodes use a fixed size. */
export function nodeRadius(strength: number | null): number {
  if (strength === null) {
    return (MIN_NODE_RADIUS + MAX_NODE_RADIUS) / 2;
  }
  const clamped = Math.min(1, Math.max(0, strength));
  return MIN_NODE_RADIUS + (MAX_NODE_RADIUS - MIN_NODE_RADIUS) * clamped;
}

export interface PlacedNode<T> {
  node: T;
  x: number;
  y: number;
  r: number;
}

/** Lay a ring's nodes out in their given order. */
export function placeRing<T extends { strength: number | null }>(
  nodes: readonly T[],
  ringRadius: number,
  geometry: SceneGeometry = DEFAULT_GEOMETRY,
): PlacedNode<T>[] {
  return nodes.map((node, index) => {
    const point = nodePosition(index, nodes.length, ringRadius, geometry.center);
    return { node, x: point.x, y: point.y, r: nodeRadius(node.strength) };
  });
}

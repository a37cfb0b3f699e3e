/** Pure geometry for the quiver picture: vertices on a circle, one curved
 * arc per arrow bundle, bowed so that opposite bundles never overlap. */

export interface Point {
  x: number;
  y: number;
}

export interface ArcGeometry {
  /** start point, pulled back to the vertex circle edge */
  x1: number;
  y1: number;
  /** end point on the target circle edge */
  x2: number;
  y2: number;
  /** quadratic Bezier control point */
  cx: number;
  cy: number;
  /** where the multiplicity label sits (on the curve, nudged outward) */
  labelX: number;
  labelY: number;
}

/** Positions of n vertices on the unit circle, vertex 1 at the top,
 * numbering clockwise.  Coordinates are rounded to 6 decimals so that
 * serialized layouts are reproducible across platforms. */
export function circlePositions(n: number): Point[] {
  const out: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
    out.push({ x: round6(Math.cos(angle)), y: round6(Math.sin(angle)) });
  }
  return out;
}

function round6(v: number): number {
  const r = Math.round(v * 1e6) / 1e6;
  return Object.is(r, -0) ? 0 : r;
}

/**
 * Geometry of a quadratic arc from `a` to `b`, trimmed by `margin` at both
 * ends (the vertex disc radius) and bowed sideways by `bend` (positive bows
 * to the left of the travel direction, so the two directions of a 2-cycle
 * separate).
 */
export function arcGeometry(a: Point, b: Point, bend: number, margin: number): ArcGeometry {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  // left-hand normal of the travel direction
  const nx = -uy;
  const ny = ux;
  const midX = (a.x + b.x) / 2 + nx * bend;
  const midY = (a.y + b.y) / 2 + ny * bend;
  const x1 = round6(a.x + ux * margin + nx * bend * (margin / len) * 2);
  const y1 = round6(a.y + uy * margin + ny * bend * (margin / len) * 2);
  const x2 = round6(b.x - ux * margin + nx * bend * (margin / len) * 2);
  const y2 = round6(b.y - uy * margin + ny * bend * (margin / len) * 2);
  // point on the Bezier at t = 1/2 is (ends + 2*control)/4
  const labelX = round6((x1 + x2) / 4 + midX / 2 + nx * 0.06 * Math.sign(bend || 1));
  const labelY = round6((y1 + y2) / 4 + midY / 2 + ny * 0.06 * Math.sign(bend || 1));
  return { x1, y1, x2, y2, cx: round6(midX), cy: round6(midY), labelX, labelY };
}

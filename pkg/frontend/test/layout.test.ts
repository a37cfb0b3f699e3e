import { describe, expect, it } from "vitest";

import { arcGeometry, circlePositions } from "../src/layout.js";

describe("circlePositions", () => {
  it("puts vertex 1 at the top and walks clockwise", () => {
    const pts = circlePositions(3);
    expect(pts).toEqual([
      { x: 0, y: -1 },
      { x: 0.866025, y: 0.5 },
      { x: -0.866025, y: 0.5 },
    ]);
  });

  it("gives the compass points for n = 4", () => {
    expect(circlePositions(4)).toEqual([
      { x: 0, y: -1 },
      { x: 1, y: 0 },
      { x: 0, y: 1 },
      { x: -1, y: 0 },
    ]);
  });

  it("keeps every vertex on the unit circle", () => {
    for (const n of [2, 3, 5, 6, 9]) {
      for (const p of circlePositions(n)) {
        expect(Math.hypot(p.x, p.y)).toBeCloseTo(1, 5);
      }
    }
  });

  it("serializes identically across calls", () => {
    expect(JSON.stringify(circlePositions(7))).toBe(JSON.stringify(circlePositions(7)));
  });
});

describe("arcGeometry", () => {
  const a = { x: 0, y: 0 };
  const b = { x: 10, y: 0 };

  it("trims a straight arc by the margin at both ends", () => {
    const geo = arcGeometry(a, b, 0, 1);
    expect(geo.x1).toBe(1);
    expect(geo.y1).toBe(0);
    expect(geo.x2).toBe(9);
    expect(geo.y2).toBe(0);
    expect(geo.cx).toBe(5);
    expect(geo.cy).toBe(0);
    expect(geo.labelX).toBe(5);
  });

  it("bows the control point to the left of the travel direction", () => {
    const forward = arcGeometry(a, b, 2, 1);
    expect(forward.cy).toBe(2);
    expect(forward.y1).toBeGreaterThan(0);
    const backward = arcGeometry(b, a, 2, 1);
    expect(backward.cy).toBe(-2);
    expect(backward.y1).toBeLessThan(0);
  });

  it("keeps the label clear of the curve", () => {
    const geo = arcGeometry(a, b, 2, 1);
    const curveMidY = (geo.y1 + geo.y2) / 4 + geo.cy / 2;
    expect(geo.labelY).toBeGreaterThan(curveMidY);
  });
});

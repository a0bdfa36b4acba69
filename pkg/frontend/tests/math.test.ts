import { describe, expect, it } from "vitest";

import {
  applyHomography,
  clampPose,
  gridPositions,
  mat3Identity,
  mat3Inverse,
  mat3Multiply,
  parallaxShift,
  planeHomography,
  type Intrinsics,
} from "../src/math.js";

const INTR: Intrinsics = { fx: 32, fy: 32, cx: 15.5, cy: 15.5 };

describe("planeHomography", () => {
  it("is the exact identity at the identity pose", () => {
    const hom = planeHomography(INTR, { tx: 0, ty: 0, tz: 0 }, 5);
    expect(Array.from(hom)).toEqual(Array.from(mat3Identity()));
  });

  it("maps target pixels back by fx*tx/d under pure x translation", () => {
    const depth = 2;
    const hom = planeHomography(INTR, { tx: 0.5, ty: 0, tz: 0 }, depth);
    const shift = parallaxShift(INTR, 0.5, depth);
    expect(shift).toBe(8);
    const src = applyHomography(hom, 20, 13)!;
    expect(src[0]).toBeCloseTo(20 - shift, 9);
    expect(src[1]).toBeCloseTo(13, 9);
  });

  it("shifts farther planes strictly less", () => {
    const shiftAt = (depth: number) => {
      const hom = planeHomography(INTR, { tx: 0.3, ty: 0, tz: 0 }, depth);
      const src = applyHomography(hom, 16, 16)!;
      return Math.abs(src[0] - 16);
    };
    const depths = [1, 2, 5, 20, 100];
    const shifts = depths.map(shiftAt);
    for (let i = 1; i < shifts.length; i++) {
      expect(shifts[i]).toBeLessThan(shifts[i - 1]);
    }
  });

  it("round-trips with its forward map", () => {
    const hom = planeHomography(INTR, { tx: 0.1, ty: -0.2, tz: 0.05 }, 3);
    const product = mat3Multiply(hom, mat3Inverse(hom));
    const eye = mat3Identity();
    for (let i = 0; i < 9; i++) {
      expect(product[i]).toBeCloseTo(eye[i], 9);
    }
  });

  it("rejects non-positive depths", () => {
    expect(() => planeHomography(INTR, { tx: 0, ty: 0, tz: 0 }, 0)).toThrow();
  });
});

describe("gridPositions", () => {
  it("produces the 7x7 evaluation layout with exact endpoints", () => {
    const grid = gridPositions(7, 0.3);
    expect(grid).toHaveLength(49);
    expect(grid[24]).toEqual({ tx: 0, ty: 0, tz: 0 });
    expect(grid[0]).toEqual({ tx: -0.3, ty: -0.3, tz: 0 });
    expect(grid[48]).toEqual({ tx: 0.3, ty: 0.3, tz: 0 });
    expect(grid[6]).toEqual({ tx: 0.3, ty: -0.3, tz: 0 });
  });

  it("is row-major", () => {
    const grid = gridPositions(3, 1);
    expect(grid[1]).toEqual({ tx: 0, ty: -1, tz: 0 });
    expect(grid[3]).toEqual({ tx: -1, ty: 0, tz: 0 });
  });
});

describe("clampPose", () => {
  it("keeps every axis inside the bounds", () => {
    const pose = clampPose({ tx: 1, ty: -2, tz: 0.1 }, 0.3);
    expect(pose).toEqual({ tx: 0.3, ty: -0.3, tz: 0.1 });
  });
});

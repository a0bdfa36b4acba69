/**
 * Scene metadata: parsing/validation of the export's meta.json and the
 * plane-subset selection behind the plane-count slider.
 */

import type { Intrinsics } from "./math.js";

export const SUPPORTED_FORMAT_VERSION = 1;

export interface SceneMeta {
  planeCount: number;
  width: number;
  height: number;
  depths: number[];
  intrinsics: Intrinsics;
  planeFiles: string[];
}

function fail(msg: string): never {
  throw new Error(`invalid scene metadata: ${msg}`);
}

export function parseMeta(raw: unknown): SceneMeta {
  if (typeof raw !== "object" || raw === null) {
    fail("not an object");
  }
  const doc = raw as Record<string, unknown>;
  if (doc.format_version !== SUPPORTED_FORMAT_VERSION) {
    fail(`unsupported format version ${String(doc.format_version)}`);
  }
  const planeCount = doc.plane_count;
  const width = doc.width;
  const height = doc.height;
  if (
    typeof planeCount !== "number" ||
    !Number.isInteger(planeCount) ||
    planeCount < 1
  ) {
    fail("plane_count must be a positive integer");
  }
  if (typeof width !== "number" || typeof height !== "number" || width < 1 || height < 1) {
    fail("missing raster dimensions");
  }
  const depths = doc.depths;
  if (!Array.isArray(depths) || depths.length !== planeCount) {
    fail("depths must list one depth per plane");
  }
  if (!depths.every((d) => typeof d === "number" && isFinite(d) && d > 0)) {
    fail("depths must be positive numbers");
  }
  for (let i = 1; i < depths.length; i++) {
    if (!(depths[i] < depths[i - 1])) {
      fail("depths must be strictly decreasing (back-to-front)");
    }
  }
  const intr = doc.intrinsics as Record<string, unknown> | undefined;
  if (
    !intr ||
    typeof intr.fx !== "number" ||
    typeof intr.fy !== "number" ||
    typeof intr.cx !== "number" ||
    typeof intr.cy !== "number" ||
    !(intr.fx > 0) ||
    !(intr.fy > 0)
  ) {
    fail("intrinsics must provide positive fx, fy and numeric cx, cy");
  }
  const planeFiles = doc.plane_files;
  if (!Array.isArray(planeFiles) || planeFiles.length !== planeCount) {
    fail(`plane_files must list exactly plane_count (${planeCount}) entries`);
  }
  if (!planeFiles.every((f) => typeof f === "string" && f.length > 0)) {
    fail("plane_files entries must be file names");
  }
  return {
    planeCount,
    width,
    height,
    depths: depths as number[],
    intrinsics: { fx: intr.fx, fy: intr.fy, cx: intr.cx, cy: intr.cy },
    planeFiles: planeFiles as string[],
  };
}

export const PLANE_COUNT_STOPS = [32, 64, 128] as const;

/**
 * Back-to-front indices of the planes to draw when the slider asks for
 * `requested` of `total` planes: evenly spaced including both ends, all
 * planes when the archive is smaller than the request.
 */
export function selectPlaneIndices(total: number, requested: number): number[] {
  if (total < 1) {
    throw new Error("empty plane stack");
  }
  if (requested >= total) {
    return Array.from({ length: total }, (_, i) => i);
  }
  if (requested < 1) {
    throw new Error(`plane request must be >= 1, got ${requested}`);
  }
  if (requested === 1) {
    return [total - 1];
  }
  const out: number[] = [];
  const step = (total - 1) / (requested - 1);
  for (let i = 0; i < requested; i++) {
    out.push(Math.round(i * step));
  }
  return out;
}

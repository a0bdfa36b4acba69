/**
 * Plane-homography math shared by the GPU renderer and the CPU reference
 * compositor. Mirrors the desktop renderer exactly: for a camera
 * translation t and a fronto-parallel plane at depth d, the source->target
 * map is K (I + t nᵀ / d) K⁻¹ with n = (0, 0, 1); the renderer consumes
 * its inverse (target pixel -> source pixel) for backward sampling.
 */

export interface Intrinsics {
  fx: number;
  fy: number;
  cx: number;
  cy: number;
}

export interface Pose {
  tx: number;
  ty: number;
  tz: number;
}

/** Row-major 3x3 matrix. */
export type Mat3 = Float64Array;

export function mat3Identity(): Mat3 {
  return new Float64Array([1, 0, 0, 0, 1, 0, 0, 0, 1]);
}

export function mat3Multiply(a: Mat3, b: Mat3): Mat3 {
  const out = new Float64Array(9);
  for (let r = 0; r < 3; r++) {
    for (let c = 0; c < 3; c++) {
      out[3 * r + c] =
        a[3 * r] * b[c] + a[3 * r + 1] * b[3 + c] + a[3 * r + 2] * b[6 + c];
    }
  }
  return out;
}

export function mat3Inverse(m: Mat3): Mat3 {
  const [a, b, c, d, e, f, g, h, i] = m;
  const ae = e * i - f * h;
  const bd = d * i - f * g;
  const cd = d * h - e * g;
  const det = a * ae - b * bd + c * cd;
  if (!isFinite(det) || Math.abs(det) <= 1e-12) {
    throw new Error("singular homography");
  }
  return new Float64Array([
    ae / det,
    (c * h - b * i) / det,
    (b * f - c * e) / det,
    -bd / det,
    (a * i - c * g) / det,
    (c * d - a * f) / det,
    cd / det,
    (b * g - a * h) / det,
    (a * e - b * d) / det,
  ]);
}

export function isIdentityPose(pose: Pose): boolean {
  return pose.tx === 0 && pose.ty === 0 && pose.tz === 0;
}

/**
 * Target-pixel -> source-pixel homography for the plane at `depth`.
 * Exact identity for the identity pose, so the reference view reproduces
 * the textures bit-for-bit.
 */
export function planeHomography(intr: Intrinsics, pose: Pose, depth: number): Mat3 {
  if (!(depth > 0) || !isFinite(depth)) {
    throw new Error(`plane depth must be positive, got ${depth}`);
  }
  if (isIdentityPose(pose)) {
    return mat3Identity();
  }
  const k = new Float64Array([intr.fx, 0, intr.cx, 0, intr.fy, intr.cy, 0, 0, 1]);
  const kInv = new Float64Array([
    1 / intr.fx,
    0,
    -intr.cx / intr.fx,
    0,
    1 / intr.fy,
    -intr.cy / intr.fy,
    0,
    0,
    1,
  ]);
  // M = I + t nᵀ / d: translation column scaled by inverse depth.
  const m = new Float64Array([
    1, 0, pose.tx / depth,
    0, 1, pose.ty / depth,
    0, 0, 1 + pose.tz / depth,
  ]);
  const forward = mat3Multiply(k, mat3Multiply(m, kInv));
  return mat3Inverse(forward);
}

/** Apply a homography to pixel coordinates; returns null behind the camera. */
export function applyHomography(m: Mat3, x: number, y: number): [number, number] | null {
  const w = m[6] * x + m[7] * y + m[8];
  if (w <= 1e-12) {
    return null;
  }
  return [(m[0] * x + m[1] * y + m[2]) / w, (m[3] * x + m[4] * y + m[5]) / w];
}

/** Horizontal pixel shift of the plane at `depth` under a pure x move. */
export function parallaxShift(intr: Intrinsics, tx: number, depth: number): number {
  return (intr.fx * tx) / depth;
}

export function clampPose(pose: Pose, bound: number): Pose {
  const clamp = (v: number) => Math.min(bound, Math.max(-bound, v));
  return { tx: clamp(pose.tx), ty: clamp(pose.ty), tz: clamp(pose.tz) };
}

/**
 * Row-major n x n grid of x-y viewpoints over [-extent, extent]^2 with
 * exact endpoints; the center of an odd grid is the exact identity.
 */
export function gridPositions(n = 7, extent = 0.3): Pose[] {
  if (n < 1) {
    throw new Error(`grid size must be >= 1, got ${n}`);
  }
  const offsets: number[] = [];
  if (n === 1) {
    offsets.push(0);
  } else {
    const half = (n - 1) / 2;
    for (let i = 0; i < n; i++) {
      offsets.push((extent * (i - half)) / half);
    }
  }
  const poses: Pose[] = [];
  for (const y of offsets) {
    for (const x of offsets) {
      poses.push({ tx: x, ty: y, tz: 0 });
    }
  }
  return poses;
}

/**
 * CPU reference compositor: the same backward warp + back-to-front over
 * fold the GPU path draws, on RGBA8 textures. Used by the test suite to
 * pin the viewer's output against the desktop renderer, and at load time
 * to build the reference-view image backing the foreground-only toggle.
 */

import { applyHomography, planeHomography, type Intrinsics, type Pose } from "./math.js";

export interface PlaneTexture {
  /** RGBA8, row-major, straight alpha. */
  data: Uint8Array | Uint8ClampedArray;
  width: number;
  height: number;
}

function sampleBilinear(
  tex: PlaneTexture,
  x: number,
  y: number,
  out: Float64Array,
): boolean {
  const w = tex.width;
  const h = tex.height;
  if (x < 0 || x > w - 1 || y < 0 || y > h - 1) {
    out[0] = out[1] = out[2] = out[3] = 0;
    return false;
  }
  const x0 = Math.floor(x);
  const y0 = Math.floor(y);
  const x1 = Math.min(x0 + 1, w - 1);
  const y1 = Math.min(y0 + 1, h - 1);
  const fx = x - x0;
  const fy = y - y0;
  const w00 = (1 - fy) * (1 - fx);
  const w01 = (1 - fy) * fx;
  const w10 = fy * (1 - fx);
  const w11 = fy * fx;
  const d = tex.data;
  const i00 = 4 * (y0 * w + x0);
  const i01 = 4 * (y0 * w + x1);
  const i10 = 4 * (y1 * w + x0);
  const i11 = 4 * (y1 * w + x1);
  for (let c = 0; c < 4; c++) {
    out[c] =
      (w00 * d[i00 + c] + w01 * d[i01 + c] + w10 * d[i10 + c] + w11 * d[i11 + c]) / 255;
  }
  return true;
}

export interface ComposeOptions {
  /** Draw only these plane indices (back-to-front); all when omitted. */
  planeIndices?: number[];
  /** Take colors from this texture instead of each plane (alpha stays per-plane). */
  colorSource?: PlaneTexture;
}

/**
 * Render the plane stack at `pose`; returns RGB in [0, 1], row-major,
 * sized like the first plane.
 */
export function compose(
  planes: PlaneTexture[],
  depths: number[],
  intr: Intrinsics,
  pose: Pose,
  options: ComposeOptions = {},
): Float64Array {
  if (planes.length === 0 || planes.length !== depths.length) {
    throw new Error("plane/depth count mismatch");
  }
  const { width, height } = planes[0];
  const indices = options.planeIndices ?? planes.map((_, i) => i);
  const out = new Float64Array(width * height * 3);
  const rgba = new Float64Array(4);
  const colorRgba = new Float64Array(4);
  for (const k of indices) {
    const hom = planeHomography(intr, pose, depths[k]);
    const plane = planes[k];
    for (let y = 0; y < height; y++) {
      for (let x = 0; x < width; x++) {
        const src = applyHomography(hom, x, y);
        if (src === null) {
          continue;
        }
        if (!sampleBilinear(plane, src[0], src[1], rgba)) {
          continue;
        }
        let r = rgba[0];
        let g = rgba[1];
        let b = rgba[2];
        const a = rgba[3];
        if (options.colorSource) {
          sampleBilinear(options.colorSource, src[0], src[1], colorRgba);
          r = colorRgba[0];
          g = colorRgba[1];
          b = colorRgba[2];
        }
        const o = 3 * (y * width + x);
        out[o] = r * a + out[o] * (1 - a);
        out[o + 1] = g * a + out[o + 1] * (1 - a);
        out[o + 2] = b * a + out[o + 2] * (1 - a);
      }
    }
  }
  return out;
}

/** Reference-view composite as an RGBA8 texture (alpha forced opaque). */
export function identityComposite(planes: PlaneTexture[], depths: number[]): PlaneTexture {
  const intr = { fx: 1, fy: 1, cx: 0, cy: 0 };
  const rgb = compose(planes, depths, intr, { tx: 0, ty: 0, tz: 0 });
  const { width, height } = planes[0];
  const data = new Uint8Array(width * height * 4);
  for (let p = 0; p < width * height; p++) {
    data[4 * p] = Math.round(rgb[3 * p] * 255);
    data[4 * p + 1] = Math.round(rgb[3 * p + 1] * 255);
    data[4 * p + 2] = Math.round(rgb[3 * p + 2] * 255);
    data[4 * p + 3] = 255;
  }
  return { data, width, height };
}

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { PNG } from "pngjs";

import type { PlaneTexture } from "../src/compositor.js";
import { parseMeta, type SceneMeta } from "../src/meta.js";

export const FIXTURES = join(__dirname, "fixtures");

export function readPng(path: string): PlaneTexture {
  const png = PNG.sync.read(readFileSync(path));
  return { data: new Uint8Array(png.data), width: png.width, height: png.height };
}

export interface LoadedScene {
  meta: SceneMeta;
  planes: PlaneTexture[];
}

export function loadScene(name: string): LoadedScene {
  const dir = join(FIXTURES, name);
  const meta = parseMeta(JSON.parse(readFileSync(join(dir, "meta.json"), "utf8")));
  const planes = meta.planeFiles.map((f) => readPng(join(dir, f)));
  return { meta, planes };
}

/** Max per-channel |difference| between an RGB float frame and a PNG, in 1/255 units. */
export function maxChannelError(frame: Float64Array, reference: PlaneTexture): number {
  const pixels = reference.width * reference.height;
  let worst = 0;
  for (let p = 0; p < pixels; p++) {
    for (let c = 0; c < 3; c++) {
      const got = frame[3 * p + c] * 255;
      const want = reference.data[4 * p + c];
      worst = Math.max(worst, Math.abs(got - want));
    }
  }
  return worst;
}

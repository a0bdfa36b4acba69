import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { compose, identityComposite } from "../src/compositor.js";
import { parallaxShift, type Pose } from "../src/math.js";
import { selectPlaneIndices } from "../src/meta.js";
import { FIXTURES, loadScene, maxChannelError, readPng } from "./helpers.js";

const IDENTITY: Pose = { tx: 0, ty: 0, tz: 0 };

describe("identity pose vs desktop renderer", () => {
  it("matches the desktop identity render within 2/255 (smooth scene)", () => {
    const { meta, planes } = loadScene("scene_smooth");
    const frame = compose(planes, meta.depths, meta.intrinsics, IDENTITY);
    const reference = readPng(join(FIXTURES, "scene_smooth_identity.png"));
    expect(maxChannelError(frame, reference)).toBeLessThanOrEqual(2);
  });

  it("matches the desktop identity render within 2/255 (two-plane scene)", () => {
    const { meta, planes } = loadScene("scene_twoplane");
    const frame = compose(planes, meta.depths, meta.intrinsics, IDENTITY);
    const reference = readPng(join(FIXTURES, "scene_twoplane_identity.png"));
    expect(maxChannelError(frame, reference)).toBeLessThanOrEqual(2);
  });
});

describe("translated pose vs desktop renderer", () => {
  it("matches the desktop render of the same translation within 2/255", () => {
    const { meta, planes } = loadScene("scene_twoplane");
    const frame = compose(planes, meta.depths, meta.intrinsics, {
      tx: 0.5,
      ty: 0,
      tz: 0,
    });
    const reference = readPng(join(FIXTURES, "scene_twoplane_shifted.png"));
    expect(maxChannelError(frame, reference)).toBeLessThanOrEqual(2);
  });
});

describe("parallax ordering under drag", () => {
  it("near content shifts strictly more than far content", () => {
    const { meta, planes } = loadScene("scene_twoplane");
    const pose: Pose = { tx: 0.5, ty: 0, tz: 0 };
    const nearShift = parallaxShift(meta.intrinsics, pose.tx, meta.depths[1]);
    const farShift = parallaxShift(meta.intrinsics, pose.tx, meta.depths[0]);
    expect(nearShift).toBeGreaterThan(farShift);

    // Pixel-level confirmation: track the green square (near plane) and
    // the far plane's uncovered left border in a middle row.
    const at = compose(planes, meta.depths, meta.intrinsics, IDENTITY);
    const moved = compose(planes, meta.depths, meta.intrinsics, pose);
    const width = meta.width;
    const row = 16;
    const greenLeft = (frame: Float64Array) => {
      for (let x = 0; x < width; x++) {
        const o = 3 * (row * width + x);
        if (frame[o + 1] > 0.5 && frame[o] < 0.4) {
          return x;
        }
      }
      return -1;
    };
    const redLeft = (frame: Float64Array) => {
      for (let x = 0; x < width; x++) {
        const o = 3 * (row * width + x);
        if (frame[o] > 0.4) {
          return x;
        }
      }
      return -1;
    };
    const greenMoved = greenLeft(moved) - greenLeft(at);
    const redMoved = redLeft(moved) - redLeft(at);
    expect(greenMoved).toBe(Math.round(nearShift));
    expect(redMoved).toBe(Math.round(farShift));
    expect(greenMoved).toBeGreaterThan(redMoved);
  });
});

describe("rendering behavior", () => {
  it("is pure in the pose: same pose gives an identical frame", () => {
    const { meta, planes } = loadScene("scene_smooth");
    const pose: Pose = { tx: 0.12, ty: -0.07, tz: 0.02 };
    const a = compose(planes, meta.depths, meta.intrinsics, pose);
    const b = compose(planes, meta.depths, meta.intrinsics, pose);
    expect(Buffer.from(a.buffer).equals(Buffer.from(b.buffer))).toBe(true);
  });

  it("plane-count stops 32/64/128 all render without errors", () => {
    const { meta, planes } = loadScene("scene_smooth");
    for (const requested of [32, 64, 128]) {
      const indices = selectPlaneIndices(meta.planeCount, requested);
      const frame = compose(planes, meta.depths, meta.intrinsics, IDENTITY, {
        planeIndices: indices,
      });
      for (const v of frame) {
        expect(v).toBeGreaterThanOrEqual(0);
        expect(v).toBeLessThanOrEqual(1);
      }
    }
  });

  it("foreground-only mode swaps colors but keeps per-plane visibility", () => {
    const { meta, planes } = loadScene("scene_twoplane");
    const fg = identityComposite(planes, meta.depths);
    const pose: Pose = { tx: 0.5, ty: 0, tz: 0 };
    const normal = compose(planes, meta.depths, meta.intrinsics, pose);
    const fgOnly = compose(planes, meta.depths, meta.intrinsics, pose, {
      colorSource: fg,
    });
    // At the reference pose the two modes agree by construction.
    const refNormal = compose(planes, meta.depths, meta.intrinsics, IDENTITY);
    const refFgOnly = compose(planes, meta.depths, meta.intrinsics, IDENTITY, {
      colorSource: fg,
    });
    let refDiff = 0;
    for (let i = 0; i < refNormal.length; i++) {
      refDiff = Math.max(refDiff, Math.abs(refNormal[i] - refFgOnly[i]));
    }
    expect(refDiff).toBeLessThanOrEqual(2 / 255);
    // Away from it, dis-occlusions expose the difference.
    let moveDiff = 0;
    for (let i = 0; i < normal.length; i++) {
      moveDiff = Math.max(moveDiff, Math.abs(normal[i] - fgOnly[i]));
    }
    expect(moveDiff).toBeGreaterThan(0.1);
  });
});

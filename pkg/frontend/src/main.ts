/**
 * Viewer entry point: loads a web-exported plane stack (meta.json plus one
 * RGBA PNG per plane), uploads the textures, and redraws on every pose or
 * setting change. Any load failure surfaces in the on-page error banner.
 */

import { planeHomography } from "./math.js";
import { parseMeta, selectPlaneIndices, type SceneMeta } from "./meta.js";
import { identityComposite, type PlaneTexture } from "./compositor.js";
import { PlaneRenderer } from "./renderer.js";
import { attachControls, initialState } from "./controls.js";

function showError(message: string): void {
  const banner = document.getElementById("error")!;
  banner.textContent = message;
  banner.style.display = "block";
}

async function fetchMeta(sceneUrl: string): Promise<SceneMeta> {
  const response = await fetch(`${sceneUrl}/meta.json`);
  if (!response.ok) {
    throw new Error(`cannot fetch meta.json: HTTP ${response.status}`);
  }
  return parseMeta(await response.json());
}

function loadPlaneImage(url: string): Promise<HTMLImageElement> {
  return new Promise((resolve, reject) => {
    const img = new Image();
    img.onload = () => resolve(img);
    img.onerror = () => reject(new Error(`cannot load plane image ${url}`));
    img.src = url;
  });
}

function toPlaneTexture(img: HTMLImageElement): PlaneTexture {
  const canvas = document.createElement("canvas");
  canvas.width = img.width;
  canvas.height = img.height;
  const ctx = canvas.getContext("2d")!;
  ctx.drawImage(img, 0, 0);
  const data = ctx.getImageData(0, 0, img.width, img.height).data;
  return { data, width: img.width, height: img.height };
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const sceneUrl = params.get("scene") ?? "scene";
  const canvas = document.getElementById("view") as HTMLCanvasElement;

  const meta = await fetchMeta(sceneUrl);
  // Completion barrier: every plane must arrive before the first draw.
  const images = await Promise.all(
    meta.planeFiles.map((f) => loadPlaneImage(`${sceneUrl}/${f}`)),
  );
  for (const img of images) {
    if (img.width !== meta.width || img.height !== meta.height) {
      throw new Error(
        `plane size ${img.width}x${img.height} does not match meta ` +
          `${meta.width}x${meta.height}`,
      );
    }
  }

  canvas.width = meta.width;
  canvas.height = meta.height;
  const renderer = new PlaneRenderer(canvas);
  renderer.setPlanes(images, meta.width, meta.height);
  const textures = images.map(toPlaneTexture);
  renderer.setColorTexture(identityComposite(textures, meta.depths));

  const state = initialState(0.3);
  const redraw = () => {
    const indices = selectPlaneIndices(meta.planeCount, state.planeRequest);
    const homs = indices.map((k) =>
      planeHomography(meta.intrinsics, state.pose, meta.depths[k]),
    );
    renderer.draw(indices, homs, state.foregroundOnly);
  };

  attachControls(
    state,
    {
      canvas,
      planeSlider: document.getElementById("planes") as HTMLInputElement,
      planeLabel: document.getElementById("planes-label")!,
      foregroundToggle: document.getElementById("fg-only") as HTMLInputElement,
      poseReadout: document.getElementById("pose")!,
    },
    redraw,
  );
  document.getElementById("scene-info")!.textContent =
    `${meta.planeCount} planes, ${meta.width}x${meta.height}`;
  redraw();
}

start().catch((err) => showError(err instanceof Error ? err.message : String(err)));

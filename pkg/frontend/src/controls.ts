/**
 * Input handling: drag translates on x-y, the wheel dollies on z, `g`
 * snaps to successive 7x7 grid viewpoints, a slider picks how many
 * planes are drawn, and a checkbox switches to the foreground-only
 * layer set. The pose is clamped to the configured bounds on every
 * update, so no input sequence can escape them.
 */

import { clampPose, gridPositions, type Pose } from "./math.js";
import { PLANE_COUNT_STOPS } from "./meta.js";

export interface ViewerState {
  pose: Pose;
  bound: number;
  planeRequest: number;
  foregroundOnly: boolean;
}

export interface ControlElements {
  canvas: HTMLCanvasElement;
  planeSlider: HTMLInputElement;
  planeLabel: HTMLElement;
  foregroundToggle: HTMLInputElement;
  poseReadout: HTMLElement;
}

const WHEEL_STEP = 0.0005;

export function initialState(bound = 0.3): ViewerState {
  return {
    pose: { tx: 0, ty: 0, tz: 0 },
    bound,
    planeRequest: PLANE_COUNT_STOPS[PLANE_COUNT_STOPS.length - 1],
    foregroundOnly: false,
  };
}

export function formatPose(pose: Pose): string {
  const f = (v: number) => v.toFixed(3);
  return `t = (${f(pose.tx)}, ${f(pose.ty)}, ${f(pose.tz)}) m`;
}

export function attachControls(
  state: ViewerState,
  el: ControlElements,
  onChange: () => void,
): void {
  const update = (pose: Pose) => {
    state.pose = clampPose(pose, state.bound);
    el.poseReadout.textContent = formatPose(state.pose);
    onChange();
  };

  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  el.canvas.addEventListener("pointerdown", (e) => {
    dragging = true;
    lastX = e.clientX;
    lastY = e.clientY;
    el.canvas.setPointerCapture(e.pointerId);
  });
  el.canvas.addEventListener("pointermove", (e) => {
    if (!dragging) {
      return;
    }
    const scale = (2 * state.bound) / el.canvas.clientWidth;
    const pose = state.pose;
    update({
      tx: pose.tx + (e.clientX - lastX) * scale,
      ty: pose.ty + (e.clientY - lastY) * scale,
      tz: pose.tz,
    });
    lastX = e.clientX;
    lastY = e.clientY;
  });
  el.canvas.addEventListener("pointerup", () => {
    dragging = false;
  });
  el.canvas.addEventListener("wheel", (e) => {
    e.preventDefault();
    const pose = state.pose;
    update({ tx: pose.tx, ty: pose.ty, tz: pose.tz + e.deltaY * WHEEL_STEP });
  });

  const grid = gridPositions(7, state.bound);
  let gridStop = -1;
  window.addEventListener("keydown", (e) => {
    if (e.key === "g") {
      gridStop = (gridStop + 1) % grid.length;
      update({ ...grid[gridStop] });
    }
  });

  el.planeSlider.min = "0";
  el.planeSlider.max = String(PLANE_COUNT_STOPS.length - 1);
  el.planeSlider.step = "1";
  el.planeSlider.value = String(PLANE_COUNT_STOPS.length - 1);
  el.planeSlider.addEventListener("input", () => {
    state.planeRequest = PLANE_COUNT_STOPS[Number(el.planeSlider.value)];
    el.planeLabel.textContent = `${state.planeRequest} planes`;
    onChange();
  });

  el.foregroundToggle.addEventListener("change", () => {
    state.foregroundOnly = el.foregroundToggle.checked;
    onChange();
  });

  el.poseReadout.textContent = formatPose(state.pose);
  el.planeLabel.textContent = `${state.planeRequest} planes`;
}

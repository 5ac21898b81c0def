// DOM wiring: canvas, radius slider, verdict badge, MST length readout.

import { ApiClient } from "./api.js";
import { DragState, pointerDown, pointerMove, pointerUp } from "./input.js";
import { renderScene } from "./render.js";
import { ExplorerStore } from "./store.js";
import { Camera } from "./transform.js";

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const slider = document.getElementById("radius") as HTMLInputElement;
const sliderLabel = document.getElementById("radius-value")!;
const badge = document.getElementById("badge")!;
const lengthLabel = document.getElementById("mst-length")!;
const hint = document.getElementById("hint")!;

const api = new ApiClient("");
const store = new ExplorerStore(api);
const cam = new Camera();
let drag: DragState | null = null;

function fmtBadge(): void {
    const b = store.badge;
    if (b.kind === "none") {
        badge.textContent = "no vertices";
        badge.className = "badge none";
        return;
    }
    badge.textContent = `${b.kind} @r${b.revision}`;
    badge.className = `badge ${b.kind}`;
}

function redraw(): void {
    renderScene(ctx, canvas.width, canvas.height, store.snapshot, cam, store.selected);
    const len = store.displayedMstLength;
    lengthLabel.textContent = len === null ? "-" : len.toFixed(6);
    fmtBadge();
}

store.onChange = redraw;

function pointerInfo(ev: MouseEvent) {
    const rect = canvas.getBoundingClientRect();
    return {
        x: ev.clientX - rect.left,
        y: ev.clientY - rect.top,
        modifier: ev.ctrlKey || ev.metaKey,
    };
}

canvas.addEventListener("mousedown", (ev) => {
    drag = pointerDown(store, cam, pointerInfo(ev));
});
canvas.addEventListener("mousemove", (ev) => {
    if (ev.buttons) pointerMove(store, cam, drag, pointerInfo(ev));
});
canvas.addEventListener("mouseup", (ev) => {
    pointerUp(store, cam, drag, pointerInfo(ev));
    drag = null;
});

slider.addEventListener("input", () => {
    const value = Number(slider.value);
    sliderLabel.textContent = value.toFixed(3);
    store.setRadius(value);
});

async function boot(): Promise<void> {
    const snap = await store.init({});
    cam.fit(snap.domain, canvas.width, canvas.height);
    const d = snap.domain.boundary;
    let diam = 0;
    for (const [x, y] of d) diam = Math.max(diam, Math.hypot(x - d[0][0], y - d[0][1]));
    slider.min = (0.01 * diam).toString();
    slider.max = (0.8 * diam).toString();
    slider.step = (0.005 * diam).toString();
    slider.value = snap.s.toString();
    sliderLabel.textContent = snap.s.toFixed(3);
    hint.textContent = "click: add vertex / drag: move / ctrl-click: remove";
    redraw();
}

void boot();

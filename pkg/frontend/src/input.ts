// Pointer gesture interpretation, kept DOM-free for testability: click on
// empty space adds a vertex (anywhere, on or off the domain), pointer-down
// near a vertex starts a drag, modifier-click removes.

import { ExplorerStore } from "./store.js";
import { Camera } from "./transform.js";
import { Pt } from "./types.js";

export const HIT_RADIUS_PX = 10;

export interface PointerInfo {
    x: number;           // screen coordinates
    y: number;
    modifier: boolean;   // ctrl/cmd-click
}

export interface DragState {
    index: number;
    moved: boolean;
}

export function hitVertex(store: ExplorerStore, cam: Camera, p: PointerInfo): number | null {
    const snap = store.snapshot;
    if (!snap) return null;
    let best: number | null = null;
    let bestD = HIT_RADIUS_PX;
    snap.centers.forEach((c, i) => {
        const [sx, sy] = cam.toScreen(c);
        const d = Math.hypot(sx - p.x, sy - p.y);
        if (d <= bestD) {
            bestD = d;
            best = i;
        }
    });
    return best;
}

export function pointerDown(store: ExplorerStore, cam: Camera, p: PointerInfo): DragState | null {
    const hit = hitVertex(store, cam, p);
    if (hit === null) {
        store.selected = null;
        return null;
    }
    if (p.modifier) {
        void store.removeVertex(hit);
        store.selected = null;
        return null;
    }
    store.selected = hit;
    return { index: hit, moved: false };
}

export function pointerMove(store: ExplorerStore, cam: Camera, drag: DragState | null,
                            p: PointerInfo): void {
    if (!drag) return;
    drag.moved = true;
    const world: Pt = cam.toWorld([p.x, p.y]);
    store.dragVertex(drag.index, world);
}

export function pointerUp(store: ExplorerStore, cam: Camera, drag: DragState | null,
                          p: PointerInfo): void {
    if (drag) {
        if (drag.moved) {
            store.dragVertex(drag.index, cam.toWorld([p.x, p.y]));
        }
        return;
    }
    if (!p.modifier) {
        void store.addVertex(cam.toWorld([p.x, p.y]));
    }
}

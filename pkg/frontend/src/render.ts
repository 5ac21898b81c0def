// Immediate-mode canvas rendering of a session snapshot: domain fill with
// hole cutouts, translucent radius disks, MST edges, vertices, and the
// uncovered-witness marker.  Takes a minimal 2D-context interface so tests
// can record draw calls without a DOM.

import { Camera } from "./transform.js";
import { Pt, SessionSnapshot } from "./types.js";

export interface Ctx2D {
    fillStyle: string | CanvasGradient | CanvasPattern;
    strokeStyle: string | CanvasGradient | CanvasPattern;
    lineWidth: number;
    globalAlpha: number;
    clearRect(x: number, y: number, w: number, h: number): void;
    beginPath(): void;
    moveTo(x: number, y: number): void;
    lineTo(x: number, y: number): void;
    closePath(): void;
    arc(x: number, y: number, r: number, a0: number, a1: number): void;
    fill(rule?: "evenodd" | "nonzero"): void;
    stroke(): void;
}

const COLORS = {
    domain: "#d9e2ec",
    outline: "#243b53",
    disk: "#2f80ed",
    tree: "#c0392b",
    vertex: "#c0392b",
    selected: "#f2994a",
    witness: "#e8590c",
};

function tracePath(ctx: Ctx2D, cam: Camera, ring: Pt[]): void {
    ring.forEach((p, i) => {
        const [x, y] = cam.toScreen(p);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
    });
    ctx.closePath();
}

export function renderScene(
    ctx: Ctx2D,
    width: number,
    height: number,
    snap: SessionSnapshot | null,
    cam: Camera,
    selected: number | null = null,
): void {
    ctx.clearRect(0, 0, width, height);
    if (!snap || !snap.domain || snap.domain.boundary.length < 3) {
        return; // defensive no-op on malformed snapshots
    }
    // domain with holes as cutouts
    ctx.beginPath();
    tracePath(ctx, cam, snap.domain.boundary);
    for (const hole of snap.domain.holes) tracePath(ctx, cam, hole);
    ctx.fillStyle = COLORS.domain;
    ctx.fill("evenodd");
    ctx.strokeStyle = COLORS.outline;
    ctx.lineWidth = 1.5;
    ctx.stroke();

    // translucent radius disks
    const r = snap.s * cam.scale;
    ctx.globalAlpha = 0.18;
    ctx.fillStyle = COLORS.disk;
    for (const c of snap.centers) {
        const [x, y] = cam.toScreen(c);
        ctx.beginPath();
        ctx.arc(x, y, r, 0, 2 * Math.PI);
        ctx.fill();
    }
    ctx.globalAlpha = 1;

    // MST edges
    ctx.strokeStyle = COLORS.tree;
    ctx.lineWidth = 2;
    for (const [i, j] of snap.mst.edges) {
        const a = cam.toScreen(snap.centers[i]);
        const b = cam.toScreen(snap.centers[j]);
        ctx.beginPath();
        ctx.moveTo(a[0], a[1]);
        ctx.lineTo(b[0], b[1]);
        ctx.stroke();
    }

    // vertices
    snap.centers.forEach((c, i) => {
        const [x, y] = cam.toScreen(c);
        ctx.beginPath();
        ctx.arc(x, y, i === selected ? 6 : 4, 0, 2 * Math.PI);
        ctx.fillStyle = i === selected ? COLORS.selected : COLORS.vertex;
        ctx.fill();
    });

    // uncovered witness
    if (snap.verdict && snap.verdict.witness) {
        const [x, y] = cam.toScreen(snap.verdict.witness);
        ctx.beginPath();
        ctx.arc(x, y, 9, 0, 2 * Math.PI);
        ctx.strokeStyle = COLORS.witness;
        ctx.lineWidth = 2.5;
        ctx.stroke();
    }
}

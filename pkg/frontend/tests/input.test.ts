// Pointer gesture logic with a scripted fake API.

import { describe, expect, it } from "vitest";

import { MutateResult } from "../src/api.js";
import { hitVertex, pointerDown, pointerMove, pointerUp } from "../src/input.js";
import { ExplorerStore } from "../src/store.js";
import { Camera } from "../src/transform.js";
import { Mutation, SessionSnapshot } from "../src/types.js";

class FakeApi {
    revision = 0;
    centers: [number, number][] = [];
    log: Mutation[] = [];

    private snap(): SessionSnapshot {
        return {
            id: "i", name: null, revision: this.revision, s: 0.3,
            centers: [...this.centers],
            mst: { length: this.centers.length, edges: [] },
            verdict: null, verdict_refined: false,
            domain: { boundary: [[0, 0], [2, 0], [2, 1.4], [0, 1.4]], holes: [] },
        };
    }

    async createSession(): Promise<SessionSnapshot> { return this.snap(); }
    async getSession(): Promise<SessionSnapshot> { return this.snap(); }

    async mutate(_id: string, m: Mutation): Promise<MutateResult> {
        this.log.push(m);
        if (m.op === "add_vertex") this.centers.push(m.point);
        if (m.op === "remove_vertex") this.centers.splice(m.index, 1);
        if (m.op === "move_vertex") this.centers[m.index] = m.point;
        this.revision += 1;
        return { conflict: false, snapshot: this.snap() };
    }
}

async function setup() {
    const api = new FakeApi();
    const store = new ExplorerStore(api as never);
    await store.init();
    const cam = new Camera();
    cam.fit(store.snapshot!.domain, 960, 640);
    return { api, store, cam };
}

describe("pointer gestures", () => {
    it("click on empty space adds a vertex at the clicked world point", async () => {
        const { api, store, cam } = await setup();
        const world: [number, number] = [1.2, 0.9];
        const [sx, sy] = cam.toScreen(world);
        const drag = pointerDown(store, cam, { x: sx, y: sy, modifier: false });
        expect(drag).toBeNull();
        pointerUp(store, cam, drag, { x: sx, y: sy, modifier: false });
        await store.flush();
        const added = api.log[0] as { point: [number, number] };
        const err = Math.hypot(added.point[0] - world[0], added.point[1] - world[1]);
        expect(err * cam.scale).toBeLessThan(0.5);  // within half a pixel
    });

    it("off-domain clicks still add vertices (centers need not lie inside)", async () => {
        const { api, store, cam } = await setup();
        const [sx, sy] = cam.toScreen([-0.4, -0.3]);
        pointerUp(store, cam, null, { x: sx, y: sy, modifier: false });
        await store.flush();
        expect(api.log.length).toBe(1);
        expect(api.log[0].op).toBe("add_vertex");
    });

    it("drag on a vertex emits move mutations, modifier-click removes", async () => {
        const { api, store, cam } = await setup();
        await store.addVertex([0.5, 0.5]);
        await store.flush();
        const [sx, sy] = cam.toScreen([0.5, 0.5]);
        expect(hitVertex(store, cam, { x: sx + 3, y: sy - 2, modifier: false })).toBe(0);

        const drag = pointerDown(store, cam, { x: sx, y: sy, modifier: false });
        expect(drag).toEqual({ index: 0, moved: false });
        pointerMove(store, cam, drag, { x: sx + 60, y: sy, modifier: false });
        pointerUp(store, cam, drag, { x: sx + 60, y: sy, modifier: false });
        await store.flush();
        expect(api.log.some((m) => m.op === "move_vertex")).toBe(true);

        const [px, py] = cam.toScreen(store.snapshot!.centers[0]);
        pointerDown(store, cam, { x: px, y: py, modifier: true });
        await store.flush();
        expect(api.log[api.log.length - 1].op).toBe("remove_vertex");
        expect(store.snapshot!.centers.length).toBe(0);
    });

    it("add then remove returns the displayed length to its prior value", async () => {
        const { store, cam } = await setup();
        await store.addVertex([0.4, 0.4]);
        await store.flush();
        const before = store.displayedMstLength;
        const [sx, sy] = cam.toScreen([1.5, 1.0]);
        pointerUp(store, cam, null, { x: sx, y: sy, modifier: false });
        await store.flush();
        expect(store.displayedMstLength).not.toBe(before);
        const [px, py] = cam.toScreen(store.snapshot!.centers[1]);
        pointerDown(store, cam, { x: px, y: py, modifier: true });
        await store.flush();
        expect(store.displayedMstLength).toBe(before);
    });
});

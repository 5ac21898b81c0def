// Client-side session state.  The server is the single source of truth for
// every displayed number: the store only forwards mutations, reconciles
// revisions (stale responses are discarded, conflicts trigger a refetch),
// debounces the radius slider, and throttles vertex drags.

import { ApiClient } from "./api.js";
import { Mutation, Pt, SessionSnapshot } from "./types.js";

export const SLIDER_DEBOUNCE_MS = 100;
export const DRAG_MIN_INTERVAL_MS = 34; // <= 30 mutations per second

export type BadgeState =
    | { kind: "none" }
    | { kind: "covered" | "uncovered" | "unknown"; revision: number };

type Timer = ReturnType<typeof setTimeout>;

export interface StoreOptions {
    now?: () => number;
    setTimer?: (fn: () => void, ms: number) => Timer;
    clearTimer?: (t: Timer) => void;
}

export class ExplorerStore {
    snapshot: SessionSnapshot | null = null;
    selected: number | null = null;
    pendingSlider: number | null = null;
    badge: BadgeState = { kind: "none" };
    onChange: (() => void) | null = null;

    private readonly now: () => number;
    private readonly setTimer: (fn: () => void, ms: number) => Timer;
    private readonly clearTimer: (t: Timer) => void;
    private sliderTimer: Timer | null = null;
    private lastDragSent = -Infinity;
    private dragTrailer: Timer | null = null;
    private inflight = Promise.resolve();

    constructor(readonly api: ApiClient, opts: StoreOptions = {}) {
        this.now = opts.now ?? (() => Date.now());
        this.setTimer = opts.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
        this.clearTimer = opts.clearTimer ?? ((t) => clearTimeout(t));
    }

    get revision(): number {
        return this.snapshot?.revision ?? -1;
    }

    get displayedMstLength(): number | null {
        return this.snapshot ? this.snapshot.mst.length : null;
    }

    async init(body: object = {}): Promise<SessionSnapshot> {
        const snap = await this.api.createSession(body);
        this.accept(snap);
        return snap;
    }

    /** Adopt a server snapshot unless something newer is already displayed. */
    accept(snap: SessionSnapshot): boolean {
        if (this.snapshot && snap.revision < this.snapshot.revision) {
            return false; // stale response: never overwrite a newer frame
        }
        this.snapshot = snap;
        this.badge = snap.verdict
            ? { kind: snap.verdict.status, revision: snap.revision }
            : { kind: "none" };
        this.onChange?.();
        return true;
    }

    private async send(make: (revision: number) => Mutation): Promise<void> {
        // mutations are serialized client-side so revisions stay coherent
        this.inflight = this.inflight.then(async () => {
            if (!this.snapshot) return;
            const result = await this.api.mutate(this.snapshot.id, make(this.snapshot.revision));
            if (result.conflict) {
                this.accept(result.current);
            } else {
                this.accept(result.snapshot);
            }
        });
        return this.inflight;
    }

    addVertex(p: Pt): Promise<void> {
        return this.send((revision) => ({ op: "add_vertex", point: p, revision }));
    }

    removeVertex(index: number): Promise<void> {
        return this.send((revision) => ({ op: "remove_vertex", index, revision }));
    }

    moveVertexImmediate(index: number, p: Pt): Promise<void> {
        return this.send((revision) => ({ op: "move_vertex", index, point: p, revision }));
    }

    /** Drag handler: at most one move mutation per DRAG_MIN_INTERVAL_MS, with
     * a trailing send so the final position always lands. */
    dragVertex(index: number, p: Pt): void {
        const elapsed = this.now() - this.lastDragSent;
        if (this.dragTrailer !== null) {
            this.clearTimer(this.dragTrailer);
            this.dragTrailer = null;
        }
        if (elapsed >= DRAG_MIN_INTERVAL_MS) {
            this.lastDragSent = this.now();
            void this.moveVertexImmediate(index, p);
        } else {
            this.dragTrailer = this.setTimer(() => {
                this.dragTrailer = null;
                this.lastDragSent = this.now();
                void this.moveVertexImmediate(index, p);
            }, DRAG_MIN_INTERVAL_MS - elapsed);
        }
    }

    /** Radius slider: coalesce rapid events, send once after 100 ms idle. */
    setRadius(s: number): void {
        this.pendingSlider = s;
        if (this.sliderTimer !== null) {
            this.clearTimer(this.sliderTimer);
        }
        this.sliderTimer = this.setTimer(() => {
            this.sliderTimer = null;
            const value = this.pendingSlider;
            this.pendingSlider = null;
            if (value !== null) {
                void this.send((revision) => ({ op: "set_radius", s: value, revision }));
            }
        }, SLIDER_DEBOUNCE_MS);
    }

    /** Wait for queued mutations (and an optional pending slider) to land. */
    async flush(): Promise<void> {
        while (this.sliderTimer !== null || this.dragTrailer !== null) {
            await new Promise((r) => setTimeout(r, 10));
        }
        await this.inflight;
    }
}

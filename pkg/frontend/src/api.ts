// Thin fetch wrapper over the session service.  A 409 (stale revision)
// resolves to { conflict, current } so callers can reconcile instead of
// throwing.

import { JobPayload, Mutation, SessionSnapshot } from "./types.js";

export type MutateResult =
    | { conflict: false; snapshot: SessionSnapshot }
    | { conflict: true; current: SessionSnapshot };

export class ApiClient {
    constructor(readonly base: string) {}

    private async json<T>(path: string, init?: RequestInit): Promise<T> {
        const rsp = await fetch(this.base + path, {
            headers: { "Content-Type": "application/json" },
            ...init,
        });
        if (!rsp.ok) {
            const body = await rsp.text();
            throw new Error(`${rsp.status} ${path}: ${body}`);
        }
        return rsp.json() as Promise<T>;
    }

    createSession(body: object = {}): Promise<SessionSnapshot> {
        return this.json("/sessions", { method: "POST", body: JSON.stringify(body) });
    }

    getSession(id: string): Promise<SessionSnapshot> {
        return this.json(`/sessions/${id}`);
    }

    async mutate(id: string, mutation: Mutation): Promise<MutateResult> {
        const rsp = await fetch(`${this.base}/sessions/${id}/ops`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(mutation),
        });
        if (rsp.status === 409) {
            const body = await rsp.json();
            return { conflict: true, current: body.detail.detail as SessionSnapshot };
        }
        if (!rsp.ok) {
            throw new Error(`${rsp.status} mutate: ${await rsp.text()}`);
        }
        return { conflict: false, snapshot: (await rsp.json()) as SessionSnapshot };
    }

    async exportScenario(id: string): Promise<string> {
        const rsp = await fetch(`${this.base}/sessions/${id}/export?kind=scenario`);
        if (!rsp.ok) throw new Error(`export failed: ${rsp.status}`);
        return rsp.text();
    }

    startOptimize(id: string, body: object): Promise<JobPayload> {
        return this.json(`/sessions/${id}/optimize`, {
            method: "POST",
            body: JSON.stringify(body),
        });
    }

    pollJob(id: string): Promise<JobPayload> {
        return this.json(`/jobs/${id}`);
    }

    acceptJob(id: string): Promise<SessionSnapshot> {
        return this.json(`/jobs/${id}/accept`, { method: "POST" });
    }
}

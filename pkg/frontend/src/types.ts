// Wire types of the session service (mdp.scenario payloads and snapshots).

export type Pt = [number, number];

export interface VerdictPayload {
    status: "covered" | "uncovered" | "unknown";
    witness: Pt | null;
    margin: number | null;
    tolerance: number;
}

export interface MstPayload {
    length: number;
    edges: [number, number][];
}

export interface DomainPayload {
    boundary: Pt[];
    holes: Pt[][];
}

export interface SessionSnapshot {
    id: string;
    name: string | null;
    revision: number;
    s: number;
    centers: Pt[];
    mst: MstPayload;
    verdict: VerdictPayload | null;
    verdict_refined: boolean;
    domain: DomainPayload;
}

export type Mutation =
    | { op: "add_vertex"; point: Pt; revision: number }
    | { op: "move_vertex"; index: number; point: Pt; revision: number }
    | { op: "remove_vertex"; index: number; revision: number }
    | { op: "set_radius"; s: number; revision: number };

export interface JobPayload {
    id: string;
    session: string;
    status: "running" | "done" | "cancelled" | "failed" | "accepted";
    iteration: number;
    total: number;
    best_objective: number | null;
    error: string | null;
}

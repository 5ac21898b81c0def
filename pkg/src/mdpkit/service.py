"""Stateful session API for interactive exploration.

A session holds a domain, a set of tree vertices, and the radius s; every
mutation (add, move, remove a vertex, or change s) recomputes the MST and the
coverage verdict and bumps a revision counter.  Mutations are serialized per
session, responses always describe one consistent revision, and optimistic
clients pass the revision they saw (a stale revision gets a 409 with the
current state).

Coverage during mutations runs at an interactive tolerance (1e-4 x diameter);
a background pass refines the verdict to full tolerance for the same
revision.  Optimizer runs are jobs: start one, poll its monotone best-so-far
progress, then accept (atomic center swap) or cancel.
"""

from __future__ import annotations

import math
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, HTTPException, Query, Response
from pydantic import BaseModel, Field

from .coverage import CoverageVerdict, certify_cover
from .formats import Scenario, dump_scenario, load_domain, load_scenario, render_svg
from .formats import FormatError
from .geom import Domain, GeometryError, Point2
from .optimize import OptimizerParams, local_search
from .spanning import CenterSet, MSTResult, kruskal_mst

INTERACTIVE_TOL_FACTOR = 1e-4
REFINED_TOL_FACTOR = 1e-6
DEFAULT_S_FACTOR = 0.05


def _verdict_payload(v: CoverageVerdict | None) -> dict[str, Any] | None:
    if v is None:
        return None
    return {
        "status": v.status,
        "witness": [v.witness.x, v.witness.y] if v.witness else None,
        "margin": v.margin,
        "tolerance": v.tolerance,
    }


def _mst_payload(mst: MSTResult | None) -> dict[str, Any]:
    if mst is None:
        return {"length": 0.0, "edges": []}
    return {"length": mst.length, "edges": [[i, j] for i, j in mst.tree.edges]}


@dataclass
class Session:
    id: str
    domain: Domain
    s: float
    name: str | None = None
    centers: list[Point2] = field(default_factory=list)
    revision: int = 0
    mst: MSTResult | None = None
    verdict: CoverageVerdict | None = None
    refined: bool = False
    lock: threading.RLock = field(default_factory=threading.RLock)

    def recompute(self) -> None:
        if self.centers:
            cs = CenterSet(self.centers, self.s)
            self.mst = kruskal_mst(cs)
            self.verdict = certify_cover(
                self.domain, cs, self.s, INTERACTIVE_TOL_FACTOR * self.domain.diameter
            )
        else:
            self.mst = None
            self.verdict = None
        self.refined = False

    def snapshot(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "revision": self.revision,
            "s": self.s,
            "centers": [[p.x, p.y] for p in self.centers],
            "mst": _mst_payload(self.mst),
            "verdict": _verdict_payload(self.verdict),
            "verdict_refined": self.refined,
            "domain": {
                "boundary": [[float(x), float(y)] for x, y in self.domain.boundary],
                "holes": [[[float(x), float(y)] for x, y in h] for h in self.domain.holes],
            },
        }


@dataclass
class Job:
    id: str
    session_id: str
    status: str = "running"          # running / done / cancelled / failed / accepted
    iteration: int = 0
    total: int = 0
    best_objective: float = math.inf
    result_centers: list[Point2] | None = None
    error: str | None = None
    cancel: threading.Event = field(default_factory=threading.Event)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def payload(self) -> dict[str, Any]:
        with self.lock:
            return {
                "id": self.id,
                "session": self.session_id,
                "status": self.status,
                "iteration": self.iteration,
                "total": self.total,
                "best_objective": None if math.isinf(self.best_objective) else self.best_objective,
                "error": self.error,
            }


class CreateSessionBody(BaseModel):
    domain: dict[str, Any] | None = None
    scenario: dict[str, Any] | None = None
    s: float | None = Field(default=None, gt=0)
    name: str | None = None


class OpBody(BaseModel):
    op: str
    revision: int
    point: tuple[float, float] | None = None
    index: int | None = None
    s: float | None = None


class OptimizeBody(BaseModel):
    revision: int
    n_max: int = 40
    iterations: int = 1500
    seed: int = 0
    step_scale: float = 0.3
    cooling: float = 0.9995
    restarts: int = 1


def _error(status: int, code: str, message: str, detail: Any = None):
    raise HTTPException(status_code=status,
                        detail={"code": code, "message": message, "detail": detail})


def create_app(default_domain_text: str | None = None) -> FastAPI:
    app = FastAPI(title="mdpkit session service", version="1")
    sessions: dict[str, Session] = {}
    jobs: dict[str, Job] = {}
    registry_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        with registry_lock:
            sess = sessions.get(sid)
        if sess is None:
            _error(404, "unknown_session", f"no session '{sid}'")
        return sess

    def refine_async(sess: Session, revision: int) -> None:
        def work():
            with sess.lock:
                if sess.revision != revision or not sess.centers:
                    return
                cs = CenterSet(sess.centers, sess.s)
            refined = certify_cover(sess.domain, cs, sess.s,
                                    REFINED_TOL_FACTOR * sess.domain.diameter)
            with sess.lock:
                if sess.revision == revision:
                    sess.verdict = refined
                    sess.refined = True
        threading.Thread(target=work, daemon=True).start()

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(sessions)}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        import json as _json
        try:
            if body.scenario is not None:
                sc = load_scenario(_json.dumps({"format": "mdp.scenario/1", **body.scenario}))
                domain, centers, s = sc.domain, list(sc.centers), sc.s
                name = body.name or sc.name
            else:
                if body.domain is not None:
                    text = _json.dumps({"format": "mdp.domain/1", **body.domain})
                elif default_domain_text is not None:
                    text = default_domain_text
                else:
                    _error(422, "missing_domain", "no domain payload and no default domain")
                domain = load_domain(text)
                centers = []
                s = body.s if body.s is not None else DEFAULT_S_FACTOR * domain.diameter
                name = body.name
        except FormatError as e:
            _error(422, "invalid_domain", str(e), {"where": e.where})
        sess = Session(id=uuid.uuid4().hex[:12], domain=domain, s=float(s),
                       centers=centers, name=name)
        sess.recompute()
        with registry_lock:
            sessions[sess.id] = sess
        return sess.snapshot()

    @app.get("/sessions/{sid}")
    def get_snapshot(sid: str):
        sess = get_session(sid)
        with sess.lock:
            return sess.snapshot()

    @app.post("/sessions/{sid}/ops")
    def mutate(sid: str, body: OpBody):
        sess = get_session(sid)
        with sess.lock:
            if body.revision != sess.revision:
                _error(409, "stale_revision", "session changed since this revision",
                       sess.snapshot())
            try:
                if body.op == "add_vertex":
                    if body.point is None:
                        _error(422, "missing_point", "add_vertex needs a point")
                    sess.centers.append(Point2(*body.point))
                elif body.op == "remove_vertex":
                    if body.index is None or not (0 <= body.index < len(sess.centers)):
                        _error(422, "bad_index", "remove_vertex index out of range")
                    sess.centers.pop(body.index)
                elif body.op == "move_vertex":
                    if body.index is None or not (0 <= body.index < len(sess.centers)):
                        _error(422, "bad_index", "move_vertex index out of range")
                    if body.point is None:
                        _error(422, "missing_point", "move_vertex needs a point")
                    sess.centers[body.index] = Point2(*body.point)
                elif body.op == "set_radius":
                    if body.s is None or not (body.s > 0):
                        _error(422, "bad_radius", "set_radius needs s > 0")
                    sess.s = float(body.s)
                else:
                    _error(422, "unknown_op", f"unknown op '{body.op}'")
                sess.recompute()
            except GeometryError as e:
                # e.g. duplicate centers; surface and keep the old revision
                _error(422, "invalid_mutation", str(e))
            sess.revision += 1
            snap = sess.snapshot()
        refine_async(sess, snap["revision"])
        return snap

    @app.post("/sessions/{sid}/optimize", status_code=202)
    def start_optimize(sid: str, body: OptimizeBody):
        sess = get_session(sid)
        with sess.lock:
            if body.revision != sess.revision:
                _error(409, "stale_revision", "session changed since this revision",
                       sess.snapshot())
            domain, s = sess.domain, sess.s
        job = Job(id=uuid.uuid4().hex[:12], session_id=sid, total=body.iterations)
        with registry_lock:
            jobs[job.id] = job

        params = OptimizerParams(
            n_max=body.n_max, iterations=body.iterations, seed=body.seed,
            step_scale=body.step_scale, cooling=body.cooling, restarts=body.restarts,
        )

        def on_progress(it: int, best: float) -> bool:
            with job.lock:
                job.iteration = it
                job.best_objective = min(job.best_objective, best)
            return not job.cancel.is_set()

        def work():
            try:
                state = local_search(domain, s, params, on_progress=on_progress)
                with job.lock:
                    if job.cancel.is_set():
                        job.status = "cancelled"
                    else:
                        job.status = "done"
                        job.best_objective = min(job.best_objective, state.objective)
                        job.result_centers = list(state.centers.points)
            except Exception as e:  # noqa: BLE001 - job surface reports any failure
                with job.lock:
                    job.status = "failed"
                    job.error = str(e)

        threading.Thread(target=work, daemon=True).start()
        return job.payload()

    @app.get("/jobs/{jid}")
    def poll_job(jid: str):
        with registry_lock:
            job = jobs.get(jid)
        if job is None:
            _error(404, "unknown_job", f"no job '{jid}'")
        return job.payload()

    @app.post("/jobs/{jid}/cancel")
    def cancel_job(jid: str):
        with registry_lock:
            job = jobs.get(jid)
        if job is None:
            _error(404, "unknown_job", f"no job '{jid}'")
        job.cancel.set()
        with job.lock:
            if job.status == "running":
                job.status = "cancelled"
        return job.payload()

    @app.post("/jobs/{jid}/accept")
    def accept_job(jid: str):
        with registry_lock:
            job = jobs.get(jid)
        if job is None:
            _error(404, "unknown_job", f"no job '{jid}'")
        with job.lock:
            if job.status != "done" or job.result_centers is None:
                _error(409, "job_not_done", f"job status is '{job.status}'")
            centers = list(job.result_centers)
            job.status = "accepted"
        sess = get_session(job.session_id)
        with sess.lock:
            sess.centers = centers
            sess.recompute()
            sess.revision += 1
            snap = sess.snapshot()
        refine_async(sess, snap["revision"])
        return snap

    @app.get("/sessions/{sid}/export")
    def export(sid: str, kind: str = Query("scenario", pattern="^(svg|scenario)$")):
        sess = get_session(sid)
        with sess.lock:
            if kind == "scenario":
                sc = Scenario(domain=sess.domain, s=sess.s,
                              centers=tuple(sess.centers), name=sess.name)
                return Response(content=dump_scenario(sc), media_type="application/json")
            centers = CenterSet(sess.centers, sess.s) if sess.centers else None
            tree = sess.mst.tree if sess.mst else None
            witness = sess.verdict.witness if sess.verdict else None
            svg = render_svg(sess.domain, centers, tree, witness)
            return Response(content=svg, media_type="image/svg+xml")

    return app

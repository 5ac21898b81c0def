"""Stochastic search for short covering configurations: approximate the
n-center spanning length of a domain at radius s by simulated annealing over
ball-center sets, with certified coverage as a hard feasibility constraint.

Every move that breaks coverage is rejected outright, so each intermediate
incumbent is a valid upper bound for the spanning length.  Runs are
deterministic for a fixed seed: the generator is numpy's PCG64, one child
stream per restart spawned from SeedSequence((seed, restart_index)).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .coverage import CoverageVerdict, certify_cover
from .geom import Domain, GeometryError, Point2
from .prongs import CoverageRejectedError
from .spanning import CenterSet, MSTResult, _mst_adjacency, fermat_point, kruskal_mst

ProgressFn = Callable[[int, float], bool]


@dataclass(frozen=True)
class OptimizerParams:
    n_max: int = 40
    iterations: int = 2000
    seed: int = 0
    step_scale: float = 0.3          # initial perturbation sigma, fraction of s
    cooling: float = 0.9975
    coverage_tol: float | None = None  # None: 1e-3 x domain diameter
    restarts: int = 1

    def __post_init__(self):
        if self.n_max < 1 or self.iterations < 0 or self.restarts < 1:
            raise GeometryError("n_max, iterations and restarts must be positive")
        if not (0 < self.cooling < 1):
            raise GeometryError("cooling must lie in (0, 1)")
        if not (self.step_scale > 0):
            raise GeometryError("step_scale must be positive")


@dataclass(frozen=True)
class Perturb:
    index: int
    offset: tuple[float, float]


@dataclass(frozen=True)
class Remove:
    index: int


@dataclass(frozen=True)
class AddFermat:
    triple: tuple[int, int, int]


@dataclass(frozen=True)
class SplitEdge:
    edge_index: int


Move = Perturb | Remove | AddFermat | SplitEdge


@dataclass(frozen=True)
class ConfigState:
    centers: CenterSet
    mst: MSTResult
    verdict: CoverageVerdict

    @property
    def objective(self) -> float:
        return self.mst.length if self.verdict.covered else math.inf


def _coverage_tol(domain: Domain, params_tol: float | None) -> float:
    return params_tol if params_tol is not None else 1e-3 * domain.diameter


def init_hex_cover(domain: Domain, s: float, tol: float | None = None) -> CenterSet:
    """Feasible starting configuration: a triangular lattice whose covering
    radius is s*(1-1e-3), restricted to points within s of the domain.

    If certification does not confirm coverage the lattice is refined (up to
    three retries with smaller covering radius) before giving up.
    """
    if not (s > 0):
        raise GeometryError("s must be positive")
    tol = _coverage_tol(domain, tol)
    for factor in (1.0 - 1e-3, 0.95, 0.85, 0.7):
        spacing = math.sqrt(3.0) * s * factor
        pts = _hex_lattice(domain, s, spacing)
        centers = CenterSet(pts, s)
        if certify_cover(domain, centers, s, tol).covered:
            return centers
    raise CoverageRejectedError("hex lattice cover failed to certify after refinement")


def _hex_lattice(domain: Domain, s: float, spacing: float) -> list[tuple[float, float]]:
    x0, y0, x1, y1 = domain.bbox
    pad = s + spacing
    dy = spacing * math.sqrt(3.0) / 2.0
    anchor_x, anchor_y = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    rows = np.arange(math.floor((y0 - pad - anchor_y) / dy), math.ceil((y1 + pad - anchor_y) / dy) + 1)
    cols = np.arange(math.floor((x0 - pad - anchor_x) / spacing), math.ceil((x1 + pad - anchor_x) / spacing) + 1)
    cc, rr = np.meshgrid(cols, rows)
    xs = anchor_x + cc * spacing + (np.abs(rr) % 2) * spacing / 2.0
    ys = anchor_y + rr * dy
    pts = np.stack([xs.ravel(), ys.ravel()], axis=1)
    keep = domain.distance(pts) <= s
    kept = pts[keep]
    order = np.lexsort((kept[:, 0], kept[:, 1]))
    return [tuple(p) for p in kept[order]]


def prune_redundant(x: CenterSet, domain: Domain, tol: float | None = None) -> CenterSet:
    """Greedily drop centers whose removal keeps the domain covered.

    Candidates are scanned MST leaves first, longest leaf edge first, then
    the remaining centers by index; every removal is re-certified.
    """
    tol = _coverage_tol(domain, tol)
    s = x.s
    pts = list(x.points)
    while len(pts) > 1:
        mst = kruskal_mst(CenterSet(pts, s))
        adj = _mst_adjacency(mst.tree.edges)
        lengths = {}
        for i, j in mst.tree.edges:
            d = pts[i].distance_to(pts[j])
            lengths[i] = max(lengths.get(i, 0.0), d)
            lengths[j] = max(lengths.get(j, 0.0), d)
        leaves = sorted((i for i in range(len(pts)) if len(adj.get(i, [])) == 1),
                        key=lambda i: (-lengths.get(i, 0.0), i))
        others = [i for i in range(len(pts)) if len(adj.get(i, [])) != 1]
        removed = False
        for i in leaves + others:
            trial = pts[:i] + pts[i + 1:]
            if certify_cover(domain, CenterSet(trial, s), s, tol).covered:
                pts = trial
                removed = True
                break
        if not removed:
            break
    return CenterSet(pts, s)


def _propose(pts: list[Point2], mst: MSTResult, rng: np.random.Generator,
             sigma: float, s: float, n_max: int) -> tuple[Move | None, list[Point2] | None]:
    n = len(pts)
    r = rng.random()
    if r < 0.60 or n == 1:
        i = int(rng.integers(n))
        kind = rng.random()
        if kind < 0.5 and n > 1:
            # descent-flavored offset: step against the gradient of the MST
            # length at this center (sum of unit vectors away from its MST
            # neighbors), plus a little isotropic noise
            adj = _mst_adjacency(mst.tree.edges)
            gx = gy = 0.0
            for j in adj.get(i, []):
                dx, dy = pts[i].x - pts[j].x, pts[i].y - pts[j].y
                norm = math.hypot(dx, dy)
                if norm > 0:
                    gx += dx / norm
                    gy += dy / norm
            eta = s * 10.0 ** rng.uniform(-3.5, -0.5)
            noise = rng.normal(0.0, 0.1 * eta, 2)
            off = (-eta * gx + float(noise[0]), -eta * gy + float(noise[1]))
        else:
            # mixture of the annealed scale and a log-uniform scale so fine
            # positioning moves exist at every temperature
            scale = sigma if kind < 0.75 else s * 10.0 ** rng.uniform(-3.5, 0.15)
            o = rng.normal(0.0, scale, 2)
            off = (float(o[0]), float(o[1]))
        move = Perturb(i, off)
        trial = list(pts)
        trial[i] = Point2(pts[i].x + off[0], pts[i].y + off[1])
        return move, trial
    if r < 0.72:
        # bias removal toward centers that carry little tree length, so
        # redundant points migrate to where splits are needed
        cost = np.zeros(n)
        for i, j in mst.tree.edges:
            d = pts[i].distance_to(pts[j])
            cost[i] += d
            cost[j] += d
        scale = max(cost.mean(), 1e-12)
        w = np.exp(-cost / (0.5 * scale))
        w /= w.sum()
        i = int(rng.choice(n, p=w))
        return Remove(i), pts[:i] + pts[i + 1:]
    if r < 0.85:
        if n >= n_max:
            return None, None
        adj = _mst_adjacency(mst.tree.edges)
        junctions = [(v, nb) for v, nb in sorted(adj.items()) if len(nb) >= 2]
        if not junctions:
            return None, None
        v, nb = junctions[int(rng.integers(len(junctions)))]
        nb = sorted(nb)
        u, w = (nb[0], nb[1]) if len(nb) == 2 else tuple(
            nb[k] for k in sorted(rng.choice(len(nb), size=2, replace=False))
        )
        f = fermat_point(pts[u], pts[v], pts[w])
        return AddFermat((u, v, w)), pts + [f]
    if not mst.tree.edges or n >= n_max:
        return None, None
    # bias splits toward long edges: the midpoint then anneals into place
    lengths = np.array([pts[i].distance_to(pts[j]) for i, j in mst.tree.edges])
    w = lengths ** 2
    w /= w.sum()
    e = int(rng.choice(len(lengths), p=w))
    i, j = mst.tree.edges[e]
    mid = Point2(0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y))
    return SplitEdge(e), pts + [mid]


def _evaluate(domain: Domain, pts: list[Point2], s: float, tol: float) -> ConfigState | None:
    try:
        centers = CenterSet(pts, s)
    except GeometryError:
        return None
    mst = kruskal_mst(centers)
    verdict = certify_cover(domain, centers, s, tol)
    return ConfigState(centers, mst, verdict)


def _chain(domain: Domain, s: float, p: OptimizerParams, start: ConfigState,
           rng: np.random.Generator, tol: float,
           on_progress: ProgressFn | None) -> ConfigState:
    cur = best = start
    t0 = 0.2 * s
    temp = t0
    for it in range(p.iterations):
        sigma = p.step_scale * s * max(temp / t0, 0.02)
        move, trial_pts = _propose(list(cur.centers.points), cur.mst, rng, sigma, s, p.n_max)
        if trial_pts is not None:
            accepted_state = _try_move(domain, trial_pts, s, tol, cur, temp, rng)
            if accepted_state is not None:
                cur = accepted_state
                if cur.objective < best.objective:
                    best = cur
        temp *= p.cooling
        if on_progress is not None and not on_progress(it + 1, best.objective):
            break
    return best


def _try_move(domain: Domain, trial_pts: list[Point2], s: float, tol: float,
              cur: ConfigState, temp: float,
              rng: np.random.Generator) -> ConfigState | None:
    """Metropolis step with coverage-feasibility rejection.  The acceptance
    draw for worsening moves happens before certification, so moves the
    temperature already rules out skip the coverage check entirely."""
    try:
        centers = CenterSet(trial_pts, s)
    except GeometryError:
        return None
    mst = kruskal_mst(centers)
    delta = mst.length - cur.objective
    if delta >= 0:
        if rng.random() >= math.exp(-delta / max(temp, 1e-300)):
            return None
    verdict = certify_cover(domain, centers, s, tol)
    if not verdict.covered:
        return None
    return ConfigState(centers, mst, verdict)


def local_search(domain: Domain, s: float, p: OptimizerParams,
                 on_progress: ProgressFn | None = None) -> ConfigState:
    """Simulated annealing over covering center sets, minimizing MST length.

    Starts from the pruned hex cover, rejects every non-covered move, always
    accepts improvements, accepts worsenings with probability exp(-delta/T),
    and returns the best covered state ever visited (never worse than the
    initial cover).  Deterministic for fixed params; restarts use independent
    child streams and the best restart wins, ties broken by restart index.
    """
    tol = _coverage_tol(domain, p.coverage_tol)
    x0 = prune_redundant(init_hex_cover(domain, s, tol), domain, tol)
    start = _evaluate(domain, list(x0.points), s, tol)
    if start is None or not start.verdict.covered:
        raise CoverageRejectedError("initial cover failed certification")

    def run(restart: int) -> ConfigState:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((p.seed, restart))))
        return _chain(domain, s, p, start, rng, tol,
                      on_progress if restart == 0 else None)

    if p.restarts == 1:
        return run(0)
    workers = _max_workers(p.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(p.restarts)))
    else:
        results = [run(r) for r in range(p.restarts)]
    best_idx = min(range(p.restarts), key=lambda r: (results[r].objective, r))
    return results[best_idx]


def _max_workers(restarts: int) -> int:
    cap = os.environ.get("MDP_THREADS")
    if cap is None:
        return 1
    try:
        return max(1, min(restarts, int(cap)))
    except ValueError:
        return 1


def sigma_n_curve(domain: Domain, s: float, n_values: list[int],
                  p: OptimizerParams) -> list[tuple[int, float]]:
    """Best objective per center budget, post-processed into the best-so-far
    envelope so the reported sequence is nonincreasing in n.

    Every state behind a reported value is re-certified with an independent
    coverage call before it may enter the envelope.
    """
    if sorted(n_values) != list(n_values):
        raise GeometryError("n_values must be sorted ascending")
    tol = _coverage_tol(domain, p.coverage_tol)
    out: list[tuple[int, float]] = []
    best = math.inf
    for n in n_values:
        state = local_search(domain, s, replace(p, n_max=n))
        recheck = certify_cover(domain, state.centers, s, tol)
        if not recheck.covered:
            raise CoverageRejectedError("reported state failed feasibility recheck")
        best = min(best, state.objective)
        out.append((n, best))
    return out

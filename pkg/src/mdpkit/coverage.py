"""Certified coverage decisions and certified maximum-distance intervals.

The decision procedure subdivides a quadtree over the domain and exploits the
fact that x -> dist(x, shape) is 1-Lipschitz: a square cell with center c and
half-diagonal r satisfies dist(x, shape) <= dist(c, shape) + r for every x in
the cell, so the cell is certified covered as soon as dist(c, shape) + r <= s.
Cells are discarded only when they are certifiably outside the domain, so a
Covered verdict is a sound certificate (up to floating round-off in the
distance arithmetic; set membership itself is exact).

Verdicts are three-valued: near-tangent configurations where dist == s along
a positive-length arc cannot be decided numerically, and come back Unknown
once subdivision reaches the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial import cKDTree

from .geom import (
    Domain,
    GeometryError,
    Point2,
    Polyline,
    Segment,
    Tree,
    _point_in_ring_batch,
    points_array,
    segments_distance_batch,
)
from .spanning import CenterSet

Shape = Union[CenterSet, Tree, Polyline, Segment, np.ndarray]

DEFAULT_TOL_FACTOR = 1e-6      # default tolerance = 1e-6 x domain diameter
_MAX_LEVELS = 64
_MAX_EXACT_WITNESS_CHECKS = 512  # exact membership tests per level


class ToleranceError(RuntimeError):
    """Raised when branch and bound cannot reach the requested tolerance."""


@dataclass(frozen=True)
class CoverageVerdict:
    """Outcome of a coverage certification.

    status   -- "covered", "uncovered" or "unknown"
    witness  -- a point of the domain with dist(witness, shape) > s
                (present exactly when uncovered)
    margin   -- covered: certified slack s - sup dist upper bound;
                uncovered: dist(witness, shape) - s; unknown: None
    tolerance -- the subdivision tolerance the run used
    """

    status: str
    witness: Point2 | None
    margin: float | None
    tolerance: float

    @property
    def covered(self) -> bool:
        return self.status == "covered"


@dataclass(frozen=True)
class DistInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise GeometryError("interval lo exceeds hi")

    @property
    def width(self) -> float:
        return self.hi - self.lo


# ---------------------------------------------------------------------------
# distance fields


class _PointField:
    def __init__(self, pts: np.ndarray):
        self._tree = cKDTree(pts)

    def dist(self, q: np.ndarray) -> np.ndarray:
        return self._tree.query(q)[0]


class _SegmentField:
    def __init__(self, segs: np.ndarray):
        self._segs = segs

    def dist(self, q: np.ndarray) -> np.ndarray:
        return segments_distance_batch(q, self._segs)


def _distance_field(shape: Shape):
    if isinstance(shape, CenterSet):
        return _PointField(shape.as_array())
    if isinstance(shape, Tree):
        if not shape.edges:
            return _PointField(shape.as_array())
        return _SegmentField(shape.segment_array())
    if isinstance(shape, Polyline):
        segs = np.stack([points_array(shape.vertices[:-1]),
                         points_array(shape.vertices[1:])], axis=1)
        return _SegmentField(segs)
    if isinstance(shape, Segment):
        return _SegmentField(np.array([[[shape.a.x, shape.a.y], [shape.b.x, shape.b.y]]]))
    arr = np.asarray(shape, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise GeometryError("shape must be a nonempty CenterSet, Tree, or (N,2) point array")
    return _PointField(arr)


# ---------------------------------------------------------------------------
# quadtree cells

_OUTSIDE, _INSIDE, _STRADDLE = 0, 1, 2


def _root_cell(domain: Domain) -> tuple[float, float, float]:
    x0, y0, x1, y1 = domain.bbox
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    half = 0.5 * max(x1 - x0, y1 - y0)
    half = half * (1.0 + 1e-9) + 1e-12
    return cx, cy, half


def _segment_box_hits(edges: np.ndarray, cx, cy, h) -> np.ndarray:
    """Conservative segment-vs-box test for every (cell, edge) pair.

    True whenever the edge could touch the box: the edge bounding box
    overlaps the (slightly expanded) cell and the four cell corners do not
    lie strictly on one side of the edge's supporting line.  Never misses a
    real intersection; may report True for near misses, which only costs
    extra subdivision.
    """
    ax, ay = edges[:, 0, 0], edges[:, 0, 1]
    bx, by = edges[:, 1, 0], edges[:, 1, 1]
    scale = float(np.abs(edges).max()) + 1.0
    guard = 1e-12 * scale
    hx = h[:, None] + guard
    lox, hix = cx[:, None] - hx, cx[:, None] + hx
    loy, hiy = cy[:, None] - hx, cy[:, None] + hx
    overlap = (np.minimum(ax, bx)[None, :] <= hix) & (np.maximum(ax, bx)[None, :] >= lox) \
        & (np.minimum(ay, by)[None, :] <= hiy) & (np.maximum(ay, by)[None, :] >= loy)
    if not overlap.any():
        return overlap
    ex, ey = (bx - ax)[None, :], (by - ay)[None, :]
    eps = 4e-15 * scale * scale
    pos = np.ones(overlap.shape, dtype=bool)
    neg = np.ones(overlap.shape, dtype=bool)
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            qx = (cx + sx * h)[:, None] - ax[None, :]
            qy = (cy + sy * h)[:, None] - ay[None, :]
            cross = ex * qy - ey * qx
            pos &= cross > eps
            neg &= cross < -eps
    return overlap & ~(pos | neg)


def _classify_fresh(domain: Domain, cx, cy, h) -> np.ndarray:
    """Classify cells against the domain: certifiably outside, certifiably
    inside, or possibly straddling (conservative)."""
    rings = [domain.boundary, *domain.holes]
    n = cx.shape[0]
    touched_any = np.zeros(n, dtype=bool)
    inside_ring = []
    touched_ring = []
    offset = 0
    for ring in rings:
        k = ring.shape[0]
        edges = domain.edge_array()[offset:offset + k]
        offset += k
        t = _segment_box_hits(edges, cx, cy, h).any(axis=1)
        touched_ring.append(t)
        touched_any |= t
        inside_ring.append(_point_in_ring_batch(cx, cy, ring))
    out = np.full(n, _STRADDLE, dtype=np.int8)
    outside = ~touched_ring[0] & ~inside_ring[0]
    inside = inside_ring[0] & ~touched_any
    for t, ins in zip(touched_ring[1:], inside_ring[1:]):
        outside |= ~t & ins
        inside &= ~ins
    out[outside] = _OUTSIDE
    out[inside] = _INSIDE
    return out


def _classify(domain: Domain, level: int, cx, cy, h) -> np.ndarray:
    """Memoized classification: the decomposition is shape-independent, so
    repeated certifications over one domain reuse it."""
    cache: dict[int, int] = domain.__dict__.setdefault("_coverage_cell_cache", {})
    if level > 24:
        return _classify_fresh(domain, cx, cy, h)
    rx, ry, rh = _root_cell(domain)
    side = 2.0 * h[0] if h.shape[0] else 1.0
    ix = np.floor((cx - (rx - rh)) / side).astype(np.int64)
    iy = np.floor((cy - (ry - rh)) / side).astype(np.int64)
    keys = (np.int64(level) << 58) | (ix << 29) | iy
    codes = np.full(cx.shape[0], -1, dtype=np.int8)
    miss = []
    key_list = keys.tolist()
    for i, key in enumerate(key_list):
        code = cache.get(key)
        if code is None:
            miss.append(i)
        else:
            codes[i] = code
    if miss:
        midx = np.asarray(miss, dtype=int)
        fresh = _classify_fresh(domain, cx[midx], cy[midx], h[midx])
        codes[midx] = fresh
        for i, code in zip(miss, fresh.tolist()):
            cache[key_list[i]] = code
    return codes


def _interleave(cx, cy, q):
    """Children of each parent, contiguous and in NW, NE, SW, SE order, so
    the array order remains the deterministic traversal order."""
    n = cx.shape[0]
    ncx = np.empty(4 * n)
    ncy = np.empty(4 * n)
    offs = ((-1.0, 1.0), (1.0, 1.0), (-1.0, -1.0), (1.0, -1.0))
    for k, (ox, oy) in enumerate(offs):
        ncx[k::4] = cx + ox * q
        ncy[k::4] = cy + oy * q
    nh = np.repeat(q, 4)
    return ncx, ncy, nh


def _resolve_tol(domain: Domain, tol: float | None) -> float:
    if tol is None:
        return DEFAULT_TOL_FACTOR * domain.diameter
    if not (tol > 0):
        raise GeometryError("tol must be positive")
    return float(tol)


def certify_cover(domain: Domain, shape: Shape, s: float, tol: float | None = None) -> CoverageVerdict:
    """Decide whether every point of the domain lies within s of the shape.

    Covered and Uncovered both come with certificates: Covered means every
    quadtree leaf met the Lipschitz bound; Uncovered returns a witness point
    that is exactly inside the domain with dist > s (re-checkable).  Unknown
    means subdivision hit `tol` (default 1e-6 x diameter) without resolving.
    """
    if not (s > 0):
        raise GeometryError("s must be positive")
    tol = _resolve_tol(domain, tol)
    field = _distance_field(shape)
    cx, cy, h = (np.array([v]) for v in _root_cell(domain))
    sqrt2 = math.sqrt(2.0)
    max_ub = 0.0
    unknown = False
    level = 0
    while cx.shape[0]:
        if level > _MAX_LEVELS:
            raise ToleranceError("coverage subdivision exceeded the level cap")
        codes = _classify(domain, level, cx, cy, h)
        keep = codes != _OUTSIDE
        cx, cy, h = cx[keep], cy[keep], h[keep]
        if not cx.shape[0]:
            break
        d = field.dist(np.stack([cx, cy], axis=1))
        ub = d + h * sqrt2
        accepted = ub <= s
        if accepted.any():
            max_ub = max(max_ub, float(ub[accepted].max()))
        rest = ~accepted
        # witness scan: cell centers already beyond s, prefiltered with the
        # cheap float membership test, then confirmed exactly in
        # deterministic (traversal) order
        cand = np.flatnonzero(rest & (d > s))
        if cand.shape[0]:
            cand = cand[:_MAX_EXACT_WITNESS_CHECKS]
            flt = domain.contains_batch(np.stack([cx[cand], cy[cand]], axis=1))
            for i in cand[flt]:
                p = Point2(float(cx[i]), float(cy[i]))
                if domain.contains(p):
                    return CoverageVerdict("uncovered", p, float(d[i] - s), tol)
        cx, cy, h = cx[rest], cy[rest], h[rest]
        too_small = 2.0 * h < tol
        if too_small.any():
            unknown = True
            cx, cy, h = cx[~too_small], cy[~too_small], h[~too_small]
        if cx.shape[0]:
            cx, cy, h = _interleave(cx, cy, h / 2.0)
        level += 1
    if unknown:
        return CoverageVerdict("unknown", None, None, tol)
    return CoverageVerdict("covered", None, s - max_ub, tol)


def max_distance(domain: Domain, shape: Shape, tol: float | None = None) -> DistInterval:
    """Certified interval around sup over the domain of dist(x, shape).

    Branch and bound: the lower bound grows from distances at points known to
    lie in the domain, the upper bound shrinks as Lipschitz cell bounds are
    refined, and cells whose bound cannot beat the lower bound are pruned.
    """
    tol = _resolve_tol(domain, tol)
    field = _distance_field(shape)
    lb = float(field.dist(_boundary_samples(domain)).max())
    cx, cy, h = (np.array([v]) for v in _root_cell(domain))
    sqrt2 = math.sqrt(2.0)
    level = 0
    while True:
        if level > _MAX_LEVELS:
            raise ToleranceError("max_distance subdivision exceeded the level cap")
        codes = _classify(domain, level, cx, cy, h)
        keep = codes != _OUTSIDE
        cx, cy, h, codes = cx[keep], cy[keep], h[keep], codes[keep]
        if not cx.shape[0]:
            return DistInterval(lb, lb)
        centers = np.stack([cx, cy], axis=1)
        d = field.dist(centers)
        inside = codes == _INSIDE
        straddle = ~inside
        if straddle.any():
            # float membership: a misclassified center sits within float
            # round-off of the boundary, so the induced lower-bound error is
            # far below any practical tolerance (dist is 1-Lipschitz)
            inside = inside.copy()
            inside[straddle] = domain.contains_batch(centers[straddle])
        if inside.any():
            lb = max(lb, float(d[inside].max()))
        ub_cells = d + h * sqrt2
        active = ub_cells > lb
        if not active.any():
            return DistInterval(lb, lb)
        hi = max(lb, float(ub_cells[active].max()))
        if hi - lb <= tol:
            return DistInterval(lb, hi)
        cx, cy, h = _interleave(cx[active], cy[active], h[active] / 2.0)
        level += 1


def min_cover_radius(domain: Domain, shape: Shape, tol: float | None = None) -> DistInterval:
    """The smallest s for which certify_cover would say covered; identical to
    max_distance by the closed-neighborhood duality."""
    return max_distance(domain, shape, tol)


def _boundary_samples(domain: Domain, per_edge: int = 8) -> np.ndarray:
    """Ring vertices plus evenly spaced points along every ring edge; all lie
    in the (closed) domain and seed the max-distance lower bound."""
    edges = domain.edge_array()
    t = np.linspace(0.0, 1.0, per_edge)
    pts = edges[:, 0, None, :] * (1.0 - t)[None, :, None] + edges[:, 1, None, :] * t[None, :, None]
    return pts.reshape(-1, 2)

"""Constructive covers: prong and spoke configurations whose radius-s balls
cover the s-neighborhood of a curve while the connector stays barely longer
than the curve itself.

Three builders:

* segment_prong_cover: a segment of length L subdivided n times, centers
  lifted by delta_n = (L/(2n))^2 / s above and below plus two horizontal
  extension tips; 2n+4 centers, excess length exactly 2(n+2) delta_n.
* polyline_prong_cover: every edge split into sub-unit pieces, each piece
  treated as the spine of a thin rectangle (width mu = alpha * rho) with
  vertical prongs of length mu/2 + delta and four horizontal prongs of
  length mu/2; total length per piece stays below rho (1 + 2 beta).
* spoke_cover: four axis-aligned arms of length 2*lip*xi from one point,
  total length 8*lip*xi, covering the (lip*xi + s)-ball around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coverage import certify_cover
from .geom import (
    Domain,
    GeometryError,
    Point2,
    Polyline,
    Segment,
    Tree,
    disk_polygon,
    h1_length,
)
from .spanning import CenterSet


class CoverageRejectedError(GeometryError):
    """A constructive cover failed its numerical coverage verification."""


@dataclass(frozen=True)
class SegmentProngParams:
    """Derived quantities of the segment construction."""

    L: float
    s: float
    n: int

    @property
    def delta_n(self) -> float:
        return (self.L / (2.0 * self.n)) ** 2 / self.s

    @property
    def valid(self) -> bool:
        # the lifted balls must still reach the spine: delta_n < s - delta_n
        return self.delta_n < self.s - self.delta_n

    @property
    def min_n(self) -> int:
        return math.floor(self.L / (self.s * math.sqrt(2.0))) + 1

    @property
    def excess(self) -> float:
        return 2.0 * (self.n + 2) * self.delta_n


@dataclass(frozen=True)
class ProngCover:
    """A constructive cover: ball centers, the connector tree containing
    them, and the length bookkeeping."""

    centers: CenterSet
    connector: Tree
    base_length: float

    @property
    def excess(self) -> float:
        return h1_length(self.connector) - self.base_length


@dataclass(frozen=True)
class RectPiece:
    """One spine piece of a polyline cover with its rectangle bookkeeping."""

    spine: Segment
    rho: float
    mu: float
    alpha: float
    n: int
    s: float

    @property
    def delta(self) -> float:
        return (self.rho / (2.0 * self.n)) ** 2 / self.s

    @property
    def aspect_ok(self) -> bool:
        return self.mu / self.rho < self.alpha and self.rho < 1.0


@dataclass(frozen=True)
class SpokeSet:
    """Four axis-aligned spokes around a center."""

    center: Point2
    arm: float
    points: tuple[Point2, Point2, Point2, Point2]
    tree: Tree
    total_length: float


def _frame(seg: Segment) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    L = seg.length
    if L <= 0:
        raise GeometryError("segment must have positive length")
    a = np.array([seg.a.x, seg.a.y])
    u = (np.array([seg.b.x, seg.b.y]) - a) / L
    v = np.array([-u[1], u[0]])
    return a, u, v, L


def segment_prong_cover(seg: Segment, s: float, n: int) -> ProngCover:
    """Prong cover of the s-neighborhood of a segment.

    Centers: the two horizontal extension tips at distance delta_n beyond the
    endpoints, plus tips (x_k, +-delta_n) over the n+1 equally spaced spine
    points x_k, in left-to-right order with top before bottom.  The connector
    is the spine plus all prongs; its length exceeds L by 2(n+2) delta_n.
    """
    if not (s > 0):
        raise GeometryError("s must be positive")
    if n < 1:
        raise GeometryError("n must be at least 1")
    a, u, v, L = _frame(seg)
    params = SegmentProngParams(L=L, s=s, n=n)
    if not params.valid:
        raise GeometryError(
            f"n={n} too small: delta_n >= s - delta_n; need n > L/(s*sqrt(2)) "
            f"~= {L / (s * math.sqrt(2)):.6g} (minimum n = {params.min_n})"
        )
    d = params.delta_n
    spine = [a + (k * L / n) * u for k in range(n + 1)]
    left = a - d * u
    right = a + (L + d) * u

    centers: list[np.ndarray] = [left]
    for k in range(n + 1):
        centers.append(spine[k] + d * v)
        centers.append(spine[k] - d * v)
    centers.append(right)

    pts: list[np.ndarray] = [left, right] + spine
    pts += [spine[k] + d * v for k in range(n + 1)]
    pts += [spine[k] - d * v for k in range(n + 1)]
    i_left, i_right = 0, 1
    i_spine = lambda k: 2 + k
    i_top = lambda k: 2 + (n + 1) + k
    i_bot = lambda k: 2 + 2 * (n + 1) + k
    edges = [(i_left, i_spine(0)), (i_spine(n), i_right)]
    edges += [(i_spine(k), i_spine(k + 1)) for k in range(n)]
    edges += [(i_spine(k), i_top(k)) for k in range(n + 1)]
    edges += [(i_spine(k), i_bot(k)) for k in range(n + 1)]
    connector = Tree([tuple(p) for p in pts], edges)
    return ProngCover(
        centers=CenterSet([tuple(c) for c in centers], s),
        connector=connector,
        base_length=L,
    )


def _alpha_and_n(s: float, beta: float) -> tuple[float, int]:
    """Pick the aspect bound alpha and prong count n for a polyline cover.

    n0 forces 1/(s*n) <= beta and n > 1/s; alpha = beta/(12*n0) shrunk
    further if needed so alpha + beta < s; the working n is floor(beta /
    (4*alpha)), which keeps (2n+2)*alpha <= beta.
    """
    n0 = max(math.ceil(1.0 / (s * beta)), math.floor(1.0 / s) + 1, 1)
    alpha = min(beta / (12.0 * n0), (s - beta) / 2.0)
    n = math.floor(beta / (4.0 * alpha))
    return alpha, n


def polyline_prong_cover(poly: Polyline, s: float, beta: float) -> ProngCover:
    """Rectangle-prong cover of the s-neighborhood of a polyline.

    Every edge is split into pieces of length below 1; each piece of length
    rho gets a rectangle of width mu < alpha * rho, n+1 vertical prong pairs
    of length mu/2 + delta (delta = (rho/(2n))^2/s) and four horizontal
    prongs of length mu/2.  The per-piece length stays within rho*(1+2*beta),
    so the total excess is at most 2*beta*length(poly).
    """
    if not (s > 0):
        raise GeometryError("s must be positive")
    if not (0 < beta < s):
        raise GeometryError("beta must satisfy 0 < beta < s")
    alpha, n = _alpha_and_n(s, beta)
    pieces = plan_rect_pieces(poly, s, alpha, n)

    # deterministic assembly with vertex dedup: adjacent pieces can share
    # identical prongs at a joint, so a union-find keeps only the edges that
    # do not close a cycle (dropping a coincident duplicate only shortens)
    index: dict[tuple[float, float], int] = {}
    pts: list[tuple[float, float]] = []
    edges: list[tuple[int, int]] = []
    parent: list[int] = []

    def _find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def vid(p: np.ndarray) -> int:
        key = (round(float(p[0]), 12), round(float(p[1]), 12))
        if key not in index:
            index[key] = len(pts)
            pts.append((float(p[0]), float(p[1])))
            parent.append(len(parent))
        return index[key]

    def add_edge(i: int, j: int) -> None:
        if i == j:
            return
        ri, rj = _find(i), _find(j)
        if ri == rj:
            return
        parent[ri] = rj
        edges.append((i, j) if i < j else (j, i))

    centers: list[tuple[float, float]] = []
    center_keys: set[tuple[float, float]] = set()

    def add_center(p: np.ndarray) -> None:
        key = (round(float(p[0]), 12), round(float(p[1]), 12))
        if key not in center_keys:
            center_keys.add(key)
            centers.append((float(p[0]), float(p[1])))

    for piece in pieces:
        a, u, v, rho = _frame(piece.spine)
        mu = piece.mu
        delta = piece.delta
        # the last attach point reuses the piece endpoint's exact floats so
        # adjacent pieces share one vertex after dedup
        attach = [a + (k * rho / n) * u for k in range(n)]
        attach.append(np.array([piece.spine.b.x, piece.spine.b.y]))
        prev = None
        for k in range(n + 1):
            i_at = vid(attach[k])
            if prev is not None:
                add_edge(prev, i_at)
            prev = i_at
            if k == 0 or k == n:
                # end verticals pass through the rectangle corners where the
                # horizontal prongs attach
                mid_top = vid(attach[k] + (mu / 2.0) * v)
                mid_bot = vid(attach[k] - (mu / 2.0) * v)
                tip_top = attach[k] + (mu / 2.0 + delta) * v
                tip_bot = attach[k] - (mu / 2.0 + delta) * v
                add_edge(i_at, mid_top)
                add_edge(mid_top, vid(tip_top))
                add_edge(i_at, mid_bot)
                add_edge(mid_bot, vid(tip_bot))
                sign = -1.0 if k == 0 else 1.0
                h_top = attach[k] + (mu / 2.0) * v + sign * (mu / 2.0) * u
                h_bot = attach[k] - (mu / 2.0) * v + sign * (mu / 2.0) * u
                add_edge(mid_top, vid(h_top))
                add_edge(mid_bot, vid(h_bot))
                add_center(h_top)
                add_center(h_bot)
            else:
                tip_top = attach[k] + (mu / 2.0 + delta) * v
                tip_bot = attach[k] - (mu / 2.0 + delta) * v
                add_edge(i_at, vid(tip_top))
                add_edge(i_at, vid(tip_bot))
            add_center(attach[k] + (mu / 2.0 + delta) * v)
            add_center(attach[k] - (mu / 2.0 + delta) * v)

    connector = Tree(pts, edges)
    return ProngCover(
        centers=CenterSet(centers, s),
        connector=connector,
        base_length=poly.length,
    )


def plan_rect_pieces(poly: Polyline, s: float, alpha: float, n: int) -> list[RectPiece]:
    """Split polyline edges into sub-unit spine pieces with their rectangle
    parameters."""
    pieces = []
    for edge in poly.edges():
        L = edge.length
        m = math.floor(L) + 1  # rho = L/m < 1
        a = np.array([edge.a.x, edge.a.y])
        b = np.array([edge.b.x, edge.b.y])
        for k in range(m):
            p = a + (b - a) * (k / m)
            q = a + (b - a) * ((k + 1) / m)
            rho = L / m
            pieces.append(RectPiece(
                spine=Segment(Point2(*p), Point2(*q)),
                rho=rho, mu=0.5 * alpha * rho, alpha=alpha, n=n, s=s,
            ))
    return pieces


def spoke_cover(center: Point2, lip: float, xi: float, s: float) -> SpokeSet:
    """Four axis-aligned spokes of arm 2*lip*xi around a point.

    Balls of radius s at the four tips cover the ball of radius lip*xi + s
    around the center; requires 2*lip*xi < s, and the coverage claim is
    verified against a 256-gon polygonization of the enlarged disk (the
    builder rejects configurations where the verification fails).  xi = 0
    degenerates to four coincident tips of total length exactly zero.
    """
    center = center if isinstance(center, Point2) else Point2(*center)
    if not (lip > 0):
        raise GeometryError("lip must be positive")
    if xi < 0:
        raise GeometryError("xi must be nonnegative")
    if not (s > 0):
        raise GeometryError("s must be positive")
    if xi == 0.0:
        tips = (center, center, center, center)
        tree = Tree([center], [])
        return SpokeSet(center=center, arm=0.0, points=tips, tree=tree, total_length=0.0)
    arm = 2.0 * lip * xi
    if not (arm < s):
        raise GeometryError("spoke precondition violated: need 2*lip*xi < s")
    tips = (
        Point2(center.x, center.y + arm),
        Point2(center.x + arm, center.y),
        Point2(center.x, center.y - arm),
        Point2(center.x - arm, center.y),
    )
    tree = Tree([center, *tips], [(0, 1), (0, 2), (0, 3), (0, 4)])
    enlarged = disk_polygon(center, lip * xi + s, segments=256)
    verdict = certify_cover(enlarged, CenterSet(tips, s), s)
    if verdict.status != "covered":
        raise CoverageRejectedError(
            f"four-spoke pattern does not cover the enlarged disk "
            f"(arm {arm:.6g} too large relative to s={s:.6g}; verdict {verdict.status})"
        )
    return SpokeSet(center=center, arm=arm, points=tips, tree=tree,
                    total_length=8.0 * lip * xi)


def prong_cover_domain(cover_target: Segment | Polyline, s: float,
                       cap_segments: int = 64) -> Domain:
    """Polygonization of the s-neighborhood the constructive covers target."""
    from .geom import stadium_polygon

    if isinstance(cover_target, Segment):
        return stadium_polygon(cover_target, s, cap_segments)
    return buffered_polyline_domain(cover_target, s, cap_segments)


def buffered_polyline_domain(poly: Polyline, s: float, cap_segments: int = 64) -> Domain:
    """Inscribed polygonization of B(poly, s) via shapely's buffer."""
    import shapely

    line = shapely.LineString([(p.x, p.y) for p in poly.vertices])
    buf = line.buffer(s, quad_segs=max(4, cap_segments // 2))
    if buf.geom_type != "Polygon":
        raise GeometryError("polyline buffer did not produce a single polygon")
    exterior = list(buf.exterior.coords)
    holes = [list(ring.coords) for ring in buf.interiors]
    return Domain(exterior, holes)

"""Planar primitives: points, segments, polylines, trees, and polygonal
domains with holes.

Distances are computed in floating point and may carry round-off; set
membership (point in domain) uses exact rational orientation tests so the
topology of an answer never flips near a boundary.  Everything here is
immutable and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np


class GeometryError(ValueError):
    """Invalid geometric input (empty geometry, degenerate configuration...)."""


class DomainError(GeometryError):
    """Invalid polygonal domain.  Carries the ring and vertex the problem was
    detected at (ring 0 is the outer boundary, holes follow in order)."""

    def __init__(self, message: str, ring: int | None = None, vertex: int | None = None):
        self.ring = ring
        self.vertex = vertex
        where = ""
        if ring is not None:
            where = f" (ring {ring}" + (f", vertex {vertex})" if vertex is not None else ")")
        super().__init__(message + where)


def _check_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise GeometryError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Point2:
    """A point in the plane.  Coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", _check_finite(self.x, "x"))
        object.__setattr__(self, "y", _check_finite(self.y, "y"))

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


PointLike = Point2 | Sequence[float]


def as_point(p: PointLike) -> Point2:
    if isinstance(p, Point2):
        return p
    x, y = p
    return Point2(float(x), float(y))


def points_array(points: Iterable[PointLike]) -> np.ndarray:
    """Pack points into an (N, 2) float array."""
    arr = np.asarray([(p.x, p.y) if isinstance(p, Point2) else (float(p[0]), float(p[1]))
                      for p in points], dtype=float)
    return arr.reshape(-1, 2)


@dataclass(frozen=True)
class Segment:
    """A closed line segment.  a == b is allowed; operations that need a
    positive length reject it individually."""

    a: Point2
    b: Point2

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))

    @property
    def length(self) -> float:
        return self.a.distance_to(self.b)


@dataclass(frozen=True)
class Polyline:
    """An open polygonal chain with at least two vertices and positive length."""

    vertices: tuple[Point2, ...]

    def __init__(self, vertices: Iterable[PointLike]):
        vs = tuple(as_point(v) for v in vertices)
        if len(vs) < 2:
            raise GeometryError("polyline needs at least 2 vertices")
        for i in range(len(vs) - 1):
            if vs[i] == vs[i + 1]:
                raise GeometryError(f"polyline has repeated consecutive vertex at index {i}")
        object.__setattr__(self, "vertices", vs)

    @property
    def length(self) -> float:
        vs = self.vertices
        return sum(vs[i].distance_to(vs[i + 1]) for i in range(len(vs) - 1))

    def edges(self) -> list[Segment]:
        vs = self.vertices
        return [Segment(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


class Tree:
    """An embedded tree: a point list plus undirected edges (index pairs).

    The edge graph must be acyclic, connected, and touch every listed point
    (a single point with no edges is the degenerate one-vertex tree).
    """

    def __init__(self, points: Iterable[PointLike], edges: Iterable[tuple[int, int]]):
        self.points: tuple[Point2, ...] = tuple(as_point(p) for p in points)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (int(i), int(j)) if i < j else (int(j), int(i)) for i, j in edges
        )
        n = len(self.points)
        if n == 0:
            raise GeometryError("empty geometry")
        seen = set()
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GeometryError(f"edge ({i},{j}) out of range")
            if i == j:
                raise GeometryError(f"self-loop at vertex {i}")
            if (i, j) in seen:
                raise GeometryError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            ri, rj = find(i), find(j)
            if ri == rj:
                raise GeometryError(f"edge ({i},{j}) closes a cycle")
            parent[ri] = rj
        if n > 1:
            if len(self.edges) != n - 1:
                raise GeometryError("tree must be connected (needs exactly n-1 edges)")
        self._arr = points_array(self.points)

    def as_array(self) -> np.ndarray:
        return self._arr

    def segment_array(self) -> np.ndarray:
        """Edges as an (M, 2, 2) array; empty for a one-point tree."""
        if not self.edges:
            return np.zeros((0, 2, 2))
        idx = np.asarray(self.edges, dtype=int)
        return self._arr[idx]

    @property
    def length(self) -> float:
        return h1_length(self)


# ---------------------------------------------------------------------------
# distances


def dist_point_segment(p: PointLike, s: Segment) -> float:
    """Euclidean distance from p to the closed segment s.

    A degenerate segment (a == b) is treated as a single point.
    """
    p = as_point(p)
    ax, ay, bx, by = s.a.x, s.a.y, s.b.x, s.b.y
    dx, dy = bx - ax, by - ay
    den = dx * dx + dy * dy
    if den == 0.0:
        return math.hypot(p.x - ax, p.y - ay)
    t = ((p.x - ax) * dx + (p.y - ay) * dy) / den
    t = min(1.0, max(0.0, t))
    return math.hypot(p.x - (ax + t * dx), p.y - (ay + t * dy))


def dist_point_tree(p: PointLike, t: Tree) -> float:
    """Distance from p to the union of a tree's edges (or its single point)."""
    p = as_point(p)
    if not t.edges:
        return p.distance_to(t.points[0])
    return float(
        segments_distance_batch(np.array([[p.x, p.y]]), t.segment_array())[0]
    )


def segments_distance_batch(pts: np.ndarray, segs: np.ndarray, chunk: int = 262144) -> np.ndarray:
    """Min distance from each point in pts (B,2) to a set of segments (M,2,2).

    Vectorized over points x segments; chunked so the temporary stays small.
    """
    if segs.shape[0] == 0:
        raise GeometryError("empty geometry")
    a = segs[:, 0, :]
    d = segs[:, 1, :] - a
    den = np.einsum("ij,ij->i", d, d)
    safe = np.where(den == 0.0, 1.0, den)
    out = np.empty(pts.shape[0])
    step = max(1, chunk // max(1, segs.shape[0]))
    for lo in range(0, pts.shape[0], step):
        block = pts[lo:lo + step]                        # (b,2)
        w = block[:, None, :] - a[None, :, :]            # (b,M,2)
        t = np.einsum("bmj,mj->bm", w, d) / safe[None, :]
        np.clip(t, 0.0, 1.0, out=t)
        t[:, den == 0.0] = 0.0
        closest = a[None, :, :] + t[:, :, None] * d[None, :, :]
        diff = block[:, None, :] - closest
        dist2 = np.einsum("bmj,bmj->bm", diff, diff)
        out[lo:lo + step] = np.sqrt(dist2.min(axis=1))
    return out


def h1_length(obj: Tree | Polyline) -> float:
    """Total edge length (the 1-dimensional Hausdorff measure of an embedded
    tree or polyline equals the sum of its segment lengths)."""
    if isinstance(obj, Polyline):
        return obj.length
    if not obj.edges:
        return 0.0
    segs = obj.segment_array()
    d = segs[:, 1, :] - segs[:, 0, :]
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def hausdorff_distance(a: Iterable[PointLike], b: Iterable[PointLike]) -> float:
    """Hausdorff distance between two finite nonempty point sets."""
    pa = points_array(list(a))
    pb = points_array(list(b))
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        raise GeometryError("hausdorff_distance needs nonempty sets")
    d2 = ((pa[:, None, :] - pb[None, :, :]) ** 2).sum(axis=2)
    d = np.sqrt(d2)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


# ---------------------------------------------------------------------------
# polygonal domain


def ring_area(ring: np.ndarray) -> float:
    """Signed shoelace area; positive for counterclockwise rings."""
    x, y = ring[:, 0], ring[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _orient_frac(ax, ay, bx, by, cx, cy) -> int:
    """Exact sign of the orientation of (a, b, c): adaptive float evaluation
    with a rational fallback when the float result is within its error bound."""
    l = (bx - ax) * (cy - ay)
    r = (by - ay) * (cx - ax)
    det = l - r
    bound = 4e-16 * (abs(l) + abs(r))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    v = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - \
        (Fraction(by) - Fraction(ay)) * (Fraction(cx) - Fraction(ax))
    return (v > 0) - (v < 0)


def _on_segment_exact(px, py, ax, ay, bx, by) -> bool:
    if _orient_frac(ax, ay, bx, by, px, py) != 0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _point_in_ring_exact(px: float, py: float, ring: np.ndarray) -> bool:
    """Even-odd test with exact predicates.  Points on the ring itself count
    as inside (closed-set convention)."""
    n = ring.shape[0]
    inside = False
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if _on_segment_exact(px, py, ax, ay, bx, by):
            return True
        if (ay > py) != (by > py):
            # Exact side-of-edge test decides whether the horizontal ray
            # through p crosses this edge to the right of p.
            orient = _orient_frac(ax, ay, bx, by, px, py)
            if by > ay:
                crosses = orient > 0
            else:
                crosses = orient < 0
            if crosses:
                inside = not inside
    return inside


def _point_in_ring_batch(px: np.ndarray, py: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """Vectorized even-odd crossing test (float arithmetic, no boundary
    guarantees; callers pair it with a conservative edge-proximity test)."""
    inside = np.zeros(px.shape[0], dtype=bool)
    n = ring.shape[0]
    ax, ay = ring[:, 0], ring[:, 1]
    bx, by = np.roll(ax, -1), np.roll(ay, -1)
    for i in range(n):
        cond = (ay[i] > py) != (by[i] > py)
        if not cond.any():
            continue
        xint = ax[i] + (py - ay[i]) * (bx[i] - ax[i]) / (by[i] - ay[i])
        inside ^= cond & (px < xint)
    return inside


def _segments_properly_cross(a, b, c, d) -> bool:
    """Exact proper/improper intersection of segments ab and cd, excluding the
    shared-endpoint case."""
    o1 = _orient_frac(*a, *b, *c)
    o2 = _orient_frac(*a, *b, *d)
    o3 = _orient_frac(*c, *d, *a)
    o4 = _orient_frac(*c, *d, *b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    # collinear overlap or endpoint touching interior
    for p, (u, v) in (((c), (a, b)), ((d), (a, b)), ((a), (c, d)), ((b), (c, d))):
        if p in (a, b) and p in (c, d):
            continue
        if _on_segment_exact(p[0], p[1], u[0], u[1], v[0], v[1]):
            return True
    return False


def _validate_ring(ring: np.ndarray, ring_index: int) -> None:
    n = ring.shape[0]
    if n < 3:
        raise DomainError("ring needs at least 3 vertices", ring=ring_index)
    for i in range(n):
        if np.all(ring[i] == ring[(i + 1) % n]):
            raise DomainError("repeated consecutive vertex", ring=ring_index, vertex=i)
    pts = [tuple(map(float, v)) for v in ring]
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share an endpoint by construction
            c, d = pts[j], pts[(j + 1) % n]
            if _segments_properly_cross(a, b, c, d):
                raise DomainError(
                    f"ring self-intersects between edges {i} and {j}",
                    ring=ring_index, vertex=i,
                )
    if abs(ring_area(ring)) == 0.0:
        raise DomainError("ring has zero area", ring=ring_index)


class Domain:
    """A compact region: one simple outer boundary ring minus disjoint holes.

    Rings are stored normalized: boundary counterclockwise, holes clockwise,
    without a repeated closing vertex.
    """

    def __init__(self, boundary: Iterable[PointLike], holes: Iterable[Iterable[PointLike]] = ()):
        self.boundary = self._normalize(boundary, ccw=True, ring_index=0)
        self.holes = tuple(
            self._normalize(h, ccw=False, ring_index=k + 1) for k, h in enumerate(holes)
        )
        self._validate()
        rings = [self.boundary, *self.holes]
        self._edges = np.concatenate([
            np.stack([r, np.roll(r, -1, axis=0)], axis=1) for r in rings
        ])
        xs = self.boundary[:, 0]
        ys = self.boundary[:, 1]
        self.bbox = (float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max()))

    @staticmethod
    def _normalize(ring: Iterable[PointLike], ccw: bool, ring_index: int) -> np.ndarray:
        arr = points_array(list(ring))
        if arr.shape[0] >= 2 and np.all(arr[0] == arr[-1]):
            arr = arr[:-1]
        if not np.isfinite(arr).all():
            raise DomainError("non-finite coordinate", ring=ring_index)
        _validate_ring(arr, ring_index)
        if (ring_area(arr) > 0) != ccw:
            arr = arr[::-1].copy()
        return arr

    def _validate(self) -> None:
        for k, hole in enumerate(self.holes):
            for vi, (px, py) in enumerate(hole):
                if not _point_in_ring_exact(px, py, self.boundary):
                    raise DomainError("hole vertex outside boundary", ring=k + 1, vertex=vi)
                if _point_on_ring(px, py, self.boundary):
                    raise DomainError("hole touches the boundary", ring=k + 1, vertex=vi)
            if _rings_cross(hole, self.boundary):
                raise DomainError("hole crosses the boundary", ring=k + 1)
        for i in range(len(self.holes)):
            for j in range(i + 1, len(self.holes)):
                if _rings_cross(self.holes[i], self.holes[j]):
                    raise DomainError("holes intersect", ring=j + 1)
                if _point_in_ring_exact(*self.holes[i][0], self.holes[j]) or \
                   _point_in_ring_exact(*self.holes[j][0], self.holes[i]):
                    raise DomainError("holes nested", ring=j + 1)

    # -- queries ------------------------------------------------------------

    @property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return math.hypot(x1 - x0, y1 - y0)

    def edge_array(self) -> np.ndarray:
        """All ring edges as (K, 2, 2)."""
        return self._edges

    def contains(self, p: PointLike) -> bool:
        """Exact closed-set membership: boundary points are in, hole interiors
        are out."""
        p = as_point(p)
        for hole in self.holes:
            if _point_on_ring(p.x, p.y, hole):
                return True
            if _point_in_ring_exact(p.x, p.y, hole):
                return False
        return _point_in_ring_exact(p.x, p.y, self.boundary)

    def contains_batch(self, pts: np.ndarray) -> np.ndarray:
        """Float even-odd membership for bulk sampling (oracle-grade, not
        boundary-exact)."""
        px, py = pts[:, 0], pts[:, 1]
        inside = _point_in_ring_batch(px, py, self.boundary)
        for hole in self.holes:
            inside &= ~_point_in_ring_batch(px, py, hole)
        return inside

    def distance(self, pts: np.ndarray) -> np.ndarray:
        """Distance from each point to the domain (0 for points inside)."""
        d = segments_distance_batch(pts, self._edges)
        d[self.contains_batch(pts)] = 0.0
        return d


def _point_on_ring(px: float, py: float, ring: np.ndarray) -> bool:
    n = ring.shape[0]
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if _on_segment_exact(px, py, ax, ay, bx, by):
            return True
    return False


def _rings_cross(r1: np.ndarray, r2: np.ndarray) -> bool:
    p1 = [tuple(map(float, v)) for v in r1]
    p2 = [tuple(map(float, v)) for v in r2]
    for i in range(len(p1)):
        a, b = p1[i], p1[(i + 1) % len(p1)]
        for j in range(len(p2)):
            c, d = p2[j], p2[(j + 1) % len(p2)]
            if _segments_properly_cross(a, b, c, d):
                return True
    return False


def point_in_domain(p: PointLike, d: Domain) -> bool:
    """Closed-set membership test with exact boundary handling."""
    return d.contains(p)


# ---------------------------------------------------------------------------
# polygonizations of disk neighborhoods


def disk_polygon(center: PointLike, radius: float, segments: int = 256) -> Domain:
    """Inscribed regular polygon approximating a closed disk (vertices on the
    circle, so the polygon is a subset of the disk)."""
    c = as_point(center)
    if radius <= 0:
        raise GeometryError("radius must be positive")
    ang = np.linspace(0.0, 2.0 * math.pi, segments, endpoint=False)
    ring = np.stack([c.x + radius * np.cos(ang), c.y + radius * np.sin(ang)], axis=1)
    return Domain(ring)


def stadium_polygon(seg: Segment, radius: float, cap_segments: int = 64) -> Domain:
    """Inscribed polygonization of the closed radius-neighborhood of a segment
    (a rectangle with two semicircular caps, `cap_segments` chords per cap)."""
    if radius <= 0:
        raise GeometryError("radius must be positive")
    L = seg.length
    if L == 0:
        return disk_polygon(seg.a, radius, segments=2 * cap_segments)
    ux, uy = (seg.b.x - seg.a.x) / L, (seg.b.y - seg.a.y) / L
    base = math.atan2(uy, ux)
    pts = []
    # cap around b sweeps from -90 to +90 degrees relative to the direction,
    # cap around a sweeps the far side; both inclusive of the rectangle corners.
    for k in range(cap_segments + 1):
        a = base - math.pi / 2 + math.pi * k / cap_segments
        pts.append((seg.b.x + radius * math.cos(a), seg.b.y + radius * math.sin(a)))
    for k in range(cap_segments + 1):
        a = base + math.pi / 2 + math.pi * k / cap_segments
        pts.append((seg.a.x + radius * math.cos(a), seg.a.y + radius * math.sin(a)))
    return Domain(pts)

"""Euclidean minimum spanning trees and local Steiner improvement.

Kruskal over the complete graph with deterministic tie-breaking, a Prufer
enumeration oracle for small instances, Fermat (Torricelli) points, and an
iterative Fermat-insertion pass that shortens an MST toward Steiner length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .geom import GeometryError, Point2, PointLike, Tree, as_point, points_array

DUPLICATE_TOL = 1e-12


class UnionFind:
    """Disjoint sets over n elements with path compression and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.components = n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        """Merge the sets of i and j; returns False if already joined."""
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        if self.rank[ri] == self.rank[rj]:
            self.rank[ri] += 1
        self.components -= 1
        return True


@dataclass(frozen=True)
class CenterSet:
    """An ordered set of ball centers with their common radius s."""

    points: tuple[Point2, ...]
    s: float

    def __init__(self, points: Iterable[PointLike], s: float):
        pts = tuple(as_point(p) for p in points)
        if len(pts) == 0:
            raise GeometryError("center set must contain at least one point")
        if not (s > 0):
            raise GeometryError("radius s must be positive")
        arr = points_array(pts)
        if len(pts) > 1:
            d2 = ((arr[:, None, :] - arr[None, :, :]) ** 2).sum(axis=2)
            np.fill_diagonal(d2, np.inf)
            if d2.min() <= DUPLICATE_TOL ** 2:
                i, j = np.unravel_index(int(d2.argmin()), d2.shape)
                raise GeometryError(f"degenerate point set: centers {i} and {j} coincide")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "s", float(s))
        object.__setattr__(self, "_arr", arr)

    def as_array(self) -> np.ndarray:
        return self._arr  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class MSTResult:
    tree: Tree
    length: float

    @property
    def edge_count(self) -> int:
        return len(self.tree.edges)


def _pairwise(arr: np.ndarray) -> np.ndarray:
    diff = arr[:, None, :] - arr[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def _check_duplicates(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if n < 2:
        return
    d = _pairwise(arr)
    np.fill_diagonal(d, np.inf)
    if d.min() <= DUPLICATE_TOL:
        raise GeometryError("degenerate point set")


def _kruskal_arr(arr: np.ndarray) -> tuple[list[tuple[int, int]], float]:
    """Kruskal on raw coordinates; returns (edges, total length)."""
    n = arr.shape[0]
    if n <= 1:
        return [], 0.0
    d = _pairwise(arr)
    iu, ju = np.triu_indices(n, k=1)
    w = d[iu, ju]
    order = np.lexsort((ju, iu, w))
    uf = UnionFind(n)
    edges: list[tuple[int, int]] = []
    total = 0.0
    for k in order:
        i, j = int(iu[k]), int(ju[k])
        if uf.union(i, j):
            edges.append((i, j))
            total += float(w[k])
            if len(edges) == n - 1:
                break
    return edges, total


def kruskal_mst(x: CenterSet | Sequence[PointLike]) -> MSTResult:
    """Minimum spanning tree of the complete Euclidean graph over x.

    Edges are processed sorted by (length, index pair), which makes the
    result deterministic even for cocircular tie configurations.
    """
    pts = x.points if isinstance(x, CenterSet) else tuple(as_point(p) for p in x)
    arr = x.as_array() if isinstance(x, CenterSet) else points_array(pts)
    n = arr.shape[0]
    if n == 0:
        raise GeometryError("empty geometry")
    _check_duplicates(arr)
    edges, total = _kruskal_arr(arr)
    return MSTResult(tree=Tree(pts, edges), length=total)


def _enumerate_prufer_lengths(d: np.ndarray) -> tuple[float, np.ndarray]:
    """Minimum spanning-tree length over ALL labeled trees on n nodes, by
    decoding every Prufer sequence (n^(n-2) trees).  Returns the minimum
    total length and the edge list achieving it."""
    n = d.shape[0]
    if n == 2:
        return float(d[0, 1]), np.array([[0, 1]])
    m = n - 2
    seqs = np.array(list(product(range(n), repeat=m)), dtype=np.int8)
    k = seqs.shape[0]
    degree = np.ones((k, n), dtype=np.int8)
    rows = np.arange(k)
    for col in range(m):
        np.add.at(degree, (rows, seqs[:, col].astype(int)), 1)
    total = np.zeros(k)
    edges = np.empty((k, n - 1, 2), dtype=np.int8)
    deg = degree.copy()
    for col in range(m):
        leaf = (deg == 1).argmax(axis=1)
        other = seqs[:, col].astype(int)
        total += d[leaf, other]
        edges[:, col, 0] = leaf
        edges[:, col, 1] = other
        deg[rows, leaf] -= 1
        deg[rows, other] -= 1
    u = (deg == 1).argmax(axis=1)
    deg[rows, u] = 0
    v = (deg == 1).argmax(axis=1)
    total += d[u, v]
    edges[:, m, 0] = u
    edges[:, m, 1] = v
    best = int(total.argmin())
    return float(total[best]), edges[best].astype(int)


def brute_force_mst(x: CenterSet | Sequence[PointLike]) -> MSTResult:
    """Exhaustive MST oracle: enumerates every spanning tree via Prufer
    sequences.  Refuses more than 8 points."""
    pts = x.points if isinstance(x, CenterSet) else tuple(as_point(p) for p in x)
    arr = points_array(pts)
    n = arr.shape[0]
    if n > 8:
        raise GeometryError("brute_force_mst refuses more than 8 points")
    if n == 0:
        raise GeometryError("empty geometry")
    _check_duplicates(arr)
    if n == 1:
        return MSTResult(tree=Tree(pts, []), length=0.0)
    d = _pairwise(arr)
    length, edges = _enumerate_prufer_lengths(d)
    return MSTResult(tree=Tree(pts, [tuple(e) for e in edges]), length=length)


# ---------------------------------------------------------------------------
# Fermat points and Steiner-style improvement


def _angle_at(v: Point2, p: Point2, q: Point2) -> float:
    ax, ay = p.x - v.x, p.y - v.y
    bx, by = q.x - v.x, q.y - v.y
    na, nb = math.hypot(ax, ay), math.hypot(bx, by)
    if na == 0.0 or nb == 0.0:
        return math.pi  # coincident corner behaves like a flat vertex
    c = (ax * bx + ay * by) / (na * nb)
    return math.acos(min(1.0, max(-1.0, c)))


def fermat_point(a: PointLike, b: PointLike, c: PointLike) -> Point2:
    """The point minimizing |p-a| + |p-b| + |p-c|.

    If some corner angle is at least 120 degrees (including degenerate and
    collinear triples) that corner is returned exactly; otherwise the interior
    Torricelli point, found from the external equilateral construction and
    polished with Weiszfeld iterations to 1e-12 of the local scale.
    """
    a, b, c = as_point(a), as_point(b), as_point(c)
    if a == b and b == c:
        raise GeometryError("fermat_point needs a non-coincident triple")
    pts = (a, b, c)
    threshold = 2.0 * math.pi / 3.0
    for i, v in enumerate(pts):
        p, q = pts[(i + 1) % 3], pts[(i + 2) % 3]
        if _angle_at(v, p, q) >= threshold - 1e-14:
            return v

    # Torricelli point from the external-equilateral construction (the
    # Simpson line through c and the apex erected on ab meets its twin at
    # the minimizer), then a short scalar Weiszfeld polish.
    e_ab = _external_apex(a, b, c)
    e_bc = _external_apex(b, c, a)
    px, py = _line_intersection(e_ab, c, e_bc, a)
    scale = max(a.distance_to(b), b.distance_to(c), a.distance_to(c))
    for _ in range(60):
        wsum = nx = ny = 0.0
        stop = False
        for q in pts:
            d = math.hypot(px - q.x, py - q.y)
            if d < 1e-15 * scale:
                stop = True
                break
            wsum += 1.0 / d
            nx += q.x / d
            ny += q.y / d
        if stop:
            break
        qx, qy = nx / wsum, ny / wsum
        moved = math.hypot(qx - px, qy - py)
        px, py = qx, qy
        if moved < 1e-14 * scale:
            break
    return Point2(px, py)


def _external_apex(a: Point2, b: Point2, c: Point2) -> Point2:
    """Apex of the equilateral triangle erected on ab, on the side away
    from c."""
    mx, my = 0.5 * (a.x + b.x), 0.5 * (a.y + b.y)
    hx, hy = b.x - a.x, b.y - a.y
    k = math.sqrt(3.0) / 2.0
    c1 = Point2(mx - k * hy, my + k * hx)
    c2 = Point2(mx + k * hy, my - k * hx)
    return c1 if c1.distance_to(c) >= c2.distance_to(c) else c2


def _line_intersection(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> tuple[float, float]:
    d1x, d1y = p2.x - p1.x, p2.y - p1.y
    d2x, d2y = q2.x - q1.x, q2.y - q1.y
    den = d1x * d2y - d1y * d2x
    if den == 0.0:
        return 0.5 * (p2.x + q2.x), 0.5 * (p2.y + q2.y)
    t = ((q1.x - p1.x) * d2y - (q1.y - p1.y) * d2x) / den
    return p1.x + t * d1x, p1.y + t * d1y


def _mst_adjacency(edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    return adj


def _improving_candidates(pts: Sequence[Point2], edges: list[tuple[int, int]],
                          n_input: int) -> list[tuple[tuple[int, int, int], int | None]]:
    """Candidate Fermat insertions at MST junctions with a connection angle
    below 120 degrees, in deterministic scan order.

    Each entry is (triple, drop): the Fermat point of the triple gets
    inserted, and `drop` (when set) is a stale added junction removed in the
    same move.  For a degree-3 junction the neighbor triple with the junction
    dropped is the exact branch-point relocation.
    """
    adj = _mst_adjacency(edges)
    out: list[tuple[tuple[int, int, int], int | None]] = []
    threshold = 2.0 * math.pi / 3.0 - 1e-9
    for v in sorted(adj):
        nbrs = sorted(adj[v])
        sharp = False
        for ai in range(len(nbrs)):
            for bi in range(ai + 1, len(nbrs)):
                u, w = nbrs[ai], nbrs[bi]
                if _angle_at(pts[v], pts[u], pts[w]) < threshold:
                    sharp = True
                    out.append(((u, v, w), None))
        if sharp and len(nbrs) == 3 and v >= n_input:
            out.append(((nbrs[0], nbrs[1], nbrs[2]), v))
    return out


def _drop_low_degree_added(pts: list[Point2], n_input: int) -> list[Point2]:
    """Remove added (non-input) points whose MST degree is 2 or less; splicing
    such a point out never lengthens the tree."""
    while True:
        if len(pts) == n_input:
            return pts
        edges, _ = _kruskal_arr(points_array(pts))
        degree = [0] * len(pts)
        for i, j in edges:
            degree[i] += 1
            degree[j] += 1
        keep = [i for i in range(len(pts)) if i < n_input or degree[i] > 2]
        if len(keep) == len(pts):
            return pts
        pts = [pts[i] for i in keep]


def steinerize(x: CenterSet, rounds: int = 1) -> tuple[CenterSet, MSTResult]:
    """Shorten the MST over x by inserting Fermat points at sub-120-degree
    junctions, keeping an insertion only when the MST strictly improves.

    Each round sweeps to a local fixpoint; added points that degenerate to
    MST degree <= 2 are spliced out, so length never increases and stale
    branch points do not accumulate.  rounds=0 returns the input unchanged.
    """
    if rounds < 0:
        raise GeometryError("rounds must be nonnegative")
    pts: list[Point2] = list(x.points)
    n_input = len(pts)
    cur_edges, cur_len = _kruskal_arr(points_array(pts))
    for _ in range(rounds):
        changed = False
        while True:
            applied = False
            for (u, v, w), drop in _improving_candidates(pts, cur_edges, n_input):
                f = fermat_point(pts[u], pts[v], pts[w])
                base = pts if drop is None else pts[:drop] + pts[drop + 1:]
                if any(f.distance_to(q) <= DUPLICATE_TOL for q in base):
                    continue
                trial_pts = _drop_low_degree_added(base + [f], n_input)
                trial_edges, trial_len = _kruskal_arr(points_array(trial_pts))
                if cur_len - trial_len > 1e-10:
                    pts, cur_edges, cur_len = trial_pts, trial_edges, trial_len
                    applied = changed = True
                    break
            if not applied:
                break
        if not changed:
            break
    return CenterSet(pts, x.s), MSTResult(tree=Tree(pts, cur_edges), length=cur_len)

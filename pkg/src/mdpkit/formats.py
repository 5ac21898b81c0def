"""Deterministic file formats and vector rendering.

Two JSON document kinds, both with a `format` version tag:

* ``mdp.domain/1``   -- {"format", "name"?, "boundary": [[x,y],...],
                         "holes": [[[x,y],...], ...]}
* ``mdp.scenario/1`` -- {"format", "name"?, "s", "centers": [[x,y],...],
                         "domain": <inline domain object>,
                         "optimizer"?: {...}}

plus ``mdp.tree/1`` for explicit edge lists.  Floats are serialized with
Python's shortest round-trip repr, so write -> read is the identity on
canonical form and rendering identical inputs is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .geom import Domain, DomainError, GeometryError, Point2, Tree
from .spanning import CenterSet, kruskal_mst

DOMAIN_FORMAT = "mdp.domain/1"
SCENARIO_FORMAT = "mdp.scenario/1"
TREE_FORMAT = "mdp.tree/1"


class FormatError(ValueError):
    """Malformed document; `where` holds a human-readable position."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{message}" + (f" at {where}" if where else ""))


@dataclass(frozen=True)
class Scenario:
    domain: Domain
    s: float
    centers: tuple[Point2, ...]
    name: str | None = None
    optimizer: dict[str, Any] | None = None

    def center_set(self) -> CenterSet:
        if not self.centers:
            raise GeometryError("scenario has no centers")
        return CenterSet(self.centers, self.s)


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise FormatError(f"missing field '{key}'", where)
    return obj[key]


def _parse_ring(raw: Any, where: str) -> list[tuple[float, float]]:
    if not isinstance(raw, list) or len(raw) < 3:
        raise FormatError("ring must be an array of at least 3 [x, y] pairs", where)
    out = []
    for k, item in enumerate(raw):
        if (not isinstance(item, (list, tuple))) or len(item) != 2:
            raise FormatError("vertex must be an [x, y] pair", f"{where}[{k}]")
        try:
            out.append((float(item[0]), float(item[1])))
        except (TypeError, ValueError):
            raise FormatError("vertex coordinates must be numbers", f"{where}[{k}]")
    return out


def _parse_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}")
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    return obj


def load_domain(text: str) -> Domain:
    """Parse and validate a domain document.

    Rings are auto-closed (a repeated last vertex is dropped) and reoriented
    (boundary counterclockwise, holes clockwise).  Validation failures carry
    the ring and vertex index.
    """
    obj = _parse_json(text)
    fmt = obj.get("format", DOMAIN_FORMAT)
    if fmt != DOMAIN_FORMAT:
        raise FormatError(f"expected format '{DOMAIN_FORMAT}', got '{fmt}'", "format")
    boundary = _parse_ring(_require(obj, "boundary", "boundary"), "boundary")
    holes_raw = obj.get("holes", [])
    if not isinstance(holes_raw, list):
        raise FormatError("holes must be an array of rings", "holes")
    holes = [_parse_ring(h, f"holes[{k}]") for k, h in enumerate(holes_raw)]
    try:
        return Domain(boundary, holes)
    except DomainError as e:
        where = f"ring {e.ring}" + (f" vertex {e.vertex}" if e.vertex is not None else "")
        raise FormatError(str(e), where) from e


def dump_domain(domain: Domain, name: str | None = None) -> str:
    obj: dict[str, Any] = {"format": DOMAIN_FORMAT}
    if name:
        obj["name"] = name
    obj["boundary"] = [[float(x), float(y)] for x, y in domain.boundary]
    obj["holes"] = [[[float(x), float(y)] for x, y in h] for h in domain.holes]
    return json.dumps(obj, indent=2) + "\n"


def load_scenario(text: str) -> Scenario:
    obj = _parse_json(text)
    fmt = obj.get("format", SCENARIO_FORMAT)
    if fmt != SCENARIO_FORMAT:
        raise FormatError(f"expected format '{SCENARIO_FORMAT}', got '{fmt}'", "format")
    dom_obj = _require(obj, "domain", "domain")
    if not isinstance(dom_obj, dict):
        raise FormatError("domain must be an inline domain object", "domain")
    domain = load_domain(json.dumps({"format": DOMAIN_FORMAT, **dom_obj}))
    s = _require(obj, "s", "s")
    try:
        s = float(s)
    except (TypeError, ValueError):
        raise FormatError("s must be a number", "s")
    if not (s > 0):
        raise FormatError("s must be positive", "s")
    centers_raw = obj.get("centers", [])
    centers = []
    for k, item in enumerate(centers_raw):
        if (not isinstance(item, (list, tuple))) or len(item) != 2:
            raise FormatError("center must be an [x, y] pair", f"centers[{k}]")
        centers.append(Point2(float(item[0]), float(item[1])))
    opt = obj.get("optimizer")
    if opt is not None and not isinstance(opt, dict):
        raise FormatError("optimizer must be an object", "optimizer")
    return Scenario(domain=domain, s=s, centers=tuple(centers),
                    name=obj.get("name"), optimizer=opt)


def dump_scenario(sc: Scenario) -> str:
    obj: dict[str, Any] = {"format": SCENARIO_FORMAT}
    if sc.name:
        obj["name"] = sc.name
    obj["s"] = float(sc.s)
    obj["centers"] = [[p.x, p.y] for p in sc.centers]
    obj["domain"] = {
        "boundary": [[float(x), float(y)] for x, y in sc.domain.boundary],
        "holes": [[[float(x), float(y)] for x, y in h] for h in sc.domain.holes],
    }
    if sc.optimizer is not None:
        obj["optimizer"] = sc.optimizer
    return json.dumps(obj, indent=2) + "\n"


def load_tree(text: str) -> Tree:
    obj = _parse_json(text)
    fmt = obj.get("format", TREE_FORMAT)
    if fmt != TREE_FORMAT:
        raise FormatError(f"expected format '{TREE_FORMAT}', got '{fmt}'", "format")
    pts_raw = _require(obj, "points", "points")
    pts = []
    for k, item in enumerate(pts_raw):
        if (not isinstance(item, (list, tuple))) or len(item) != 2:
            raise FormatError("point must be an [x, y] pair", f"points[{k}]")
        pts.append((float(item[0]), float(item[1])))
    edges_raw = obj.get("edges", [])
    edges = []
    for k, item in enumerate(edges_raw):
        if (not isinstance(item, (list, tuple))) or len(item) != 2:
            raise FormatError("edge must be an [i, j] index pair", f"edges[{k}]")
        edges.append((int(item[0]), int(item[1])))
    try:
        return Tree(pts, edges)
    except GeometryError as e:
        raise FormatError(str(e), "edges") from e


def dump_tree(tree: Tree) -> str:
    obj = {
        "format": TREE_FORMAT,
        "points": [[p.x, p.y] for p in tree.points],
        "edges": [[i, j] for i, j in tree.edges],
    }
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# SVG rendering


def _svg_path(ring) -> str:
    parts = [f"M {float(x)!r} {float(y)!r}" if k == 0 else f"L {float(x)!r} {float(y)!r}"
             for k, (x, y) in enumerate(ring)]
    return " ".join(parts) + " Z"


def render_svg(domain: Domain, centers: CenterSet | None = None,
               tree: Tree | None = None, witness: Point2 | None = None,
               width: int = 720) -> str:
    """Static SVG of a domain, optional translucent center disks, tree edges,
    and an uncovered-witness marker.

    Output is deterministic: fixed element order (domain, disks, tree,
    centers, witness), shortest round-trip float formatting, no scripting.
    """
    x0, y0, x1, y1 = domain.bbox
    pad = (centers.s if centers is not None else 0.04 * domain.diameter) * 1.2
    vx, vy = x0 - pad, y0 - pad
    vw, vh = (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad
    stroke = max(vw, vh) / 400.0
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'viewBox="{vx!r} {vy!r} {vw!r} {vh!r}">',
        # flip y so the math convention (y up) renders upright
        f'<g transform="translate(0 {(2 * vy + vh)!r}) scale(1 -1)">',
    ]
    d = " ".join([_svg_path(domain.boundary)] + [_svg_path(h) for h in domain.holes])
    lines.append(
        f'<path d="{d}" fill="#d9e2ec" fill-rule="evenodd" '
        f'stroke="#243b53" stroke-width="{stroke!r}"/>'
    )
    if centers is not None and len(centers) > 0:
        lines.append(f'<g fill="#2f80ed" fill-opacity="0.18" stroke="#2f80ed" '
                     f'stroke-opacity="0.45" stroke-width="{(0.5 * stroke)!r}">')
        for p in centers.points:
            lines.append(f'<circle cx="{p.x!r}" cy="{p.y!r}" r="{centers.s!r}"/>')
        lines.append("</g>")
    if tree is not None and tree.edges:
        lines.append(f'<g stroke="#c0392b" stroke-width="{(1.5 * stroke)!r}" '
                     f'stroke-linecap="round">')
        for i, j in tree.edges:
            a, b = tree.points[i], tree.points[j]
            lines.append(f'<line x1="{a.x!r}" y1="{a.y!r}" x2="{b.x!r}" y2="{b.y!r}"/>')
        lines.append("</g>")
    if centers is not None and len(centers) > 0:
        lines.append('<g fill="#c0392b">')
        for p in centers.points:
            lines.append(f'<circle cx="{p.x!r}" cy="{p.y!r}" r="{(1.6 * stroke)!r}"/>')
        lines.append("</g>")
    if witness is not None:
        r = 4.0 * stroke
        lines.append(
            f'<circle cx="{witness.x!r}" cy="{witness.y!r}" r="{r!r}" fill="none" '
            f'stroke="#e8590c" stroke-width="{(1.5 * stroke)!r}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def scenario_from_state(domain: Domain, centers: CenterSet,
                        name: str | None = None,
                        optimizer: dict[str, Any] | None = None) -> Scenario:
    return Scenario(domain=domain, s=centers.s, centers=centers.points,
                    name=name, optimizer=optimizer)


def scenario_mst_report(sc: Scenario) -> tuple[float, list[tuple[int, int]]]:
    """MST length and edges for a scenario's centers."""
    mst = kruskal_mst(sc.center_set())
    return mst.length, list(mst.tree.edges)

"""Batch command line interface.

Subcommands: check, mst, prongs, optimize, serve.  Reports are printed one
`key: value` pair per line so they stay machine-parseable.  Exit codes are
stable: 0 success, 1 infeasible or uncovered, 2 invalid input, 3 internal
tolerance failure.
"""

from __future__ import annotations

import argparse
import errno
import sys
from pathlib import Path

from .coverage import ToleranceError, certify_cover
from .formats import (
    FormatError,
    Scenario,
    dump_scenario,
    dump_tree,
    load_domain,
    load_scenario,
    load_tree,
    render_svg,
)
from .geom import DomainError, GeometryError, Point2, Polyline, Segment
from .optimize import OptimizerParams, local_search
from .prongs import (
    CoverageRejectedError,
    polyline_prong_cover,
    prong_cover_domain,
    segment_prong_cover,
)
from .spanning import kruskal_mst

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2
EXIT_TOLERANCE = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read '{path}': {e.strerror}")


def _load_shape(path: str):
    """A centers/tree file: a scenario (centers + s) or an explicit tree."""
    text = _read(path)
    import json
    try:
        fmt = json.loads(text).get("format", "")
    except (json.JSONDecodeError, AttributeError):
        fmt = ""
    if fmt == "mdp.tree/1":
        return load_tree(text), None
    sc = load_scenario(text)
    return sc.center_set(), sc


def cmd_check(args: argparse.Namespace) -> int:
    domain = load_domain(_read(args.domain))
    shape, sc = _load_shape(args.shape)
    s = args.s if args.s is not None else (sc.s if sc is not None else None)
    if s is None or not (s > 0):
        print("error: no positive radius given (use --s)", file=sys.stderr)
        return EXIT_INVALID
    verdict = certify_cover(domain, shape, s, args.tol)
    print(f"status: {verdict.status}")
    print(f"s: {s!r}")
    print(f"tolerance: {verdict.tolerance!r}")
    if verdict.margin is not None:
        print(f"margin: {verdict.margin!r}")
    if verdict.witness is not None:
        print(f"witness: {verdict.witness.x!r} {verdict.witness.y!r}")
    return EXIT_OK if verdict.covered else EXIT_INFEASIBLE


def cmd_mst(args: argparse.Namespace) -> int:
    sc = load_scenario(_read(args.centers))
    mst = kruskal_mst(sc.center_set())
    print(f"length: {mst.length:.6f}")
    print(f"vertices: {len(sc.centers)}")
    print(f"edges: {mst.edge_count}")
    for i, j in mst.tree.edges:
        print(f"edge: {i} {j}")
    return EXIT_OK


def cmd_prongs(args: argparse.Namespace) -> int:
    if (args.segment is None) == (args.polyline is None):
        print("error: give exactly one of --segment or --polyline", file=sys.stderr)
        return EXIT_INVALID
    if args.segment is not None:
        if args.n is None:
            print("error: --segment requires --n", file=sys.stderr)
            return EXIT_INVALID
        target = Segment(Point2(0.0, 0.0), Point2(args.segment, 0.0))
        cover = segment_prong_cover(target, args.s, args.n)
    else:
        if args.beta is None:
            print("error: --polyline requires --beta", file=sys.stderr)
            return EXIT_INVALID
        import json
        obj = json.loads(_read(args.polyline))
        target = Polyline(obj["vertices"] if isinstance(obj, dict) else obj)
        cover = polyline_prong_cover(target, args.s, args.beta)

    domain = prong_cover_domain(target, args.s)
    print(f"centers: {len(cover.centers)}")
    print(f"base_length: {cover.base_length!r}")
    print(f"excess: {cover.excess:.6f}")

    out = Path(args.out_prefix)
    out.parent.mkdir(parents=True, exist_ok=True)
    sc_out = Scenario(domain=domain, s=args.s, centers=cover.centers.points,
                      name="prong cover")
    (out.parent / (out.name + ".scenario.mdp.json")).write_text(dump_scenario(sc_out))
    (out.parent / (out.name + ".tree.mdp.json")).write_text(dump_tree(cover.connector))
    svg = render_svg(domain, cover.centers, cover.connector)
    (out.parent / (out.name + ".svg")).write_text(svg)
    print(f"wrote: {out}.scenario.mdp.json {out}.tree.mdp.json {out}.svg")

    verdict = certify_cover(domain, cover.centers, args.s)
    print(f"certified: {verdict.status}")
    if not verdict.covered:
        print("error: self-certification failed unexpectedly", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    domain = load_domain(_read(args.domain))
    params = OptimizerParams(
        n_max=args.n_max, iterations=args.iters, seed=args.seed,
        step_scale=args.step_scale, cooling=args.cooling,
        coverage_tol=args.coverage_tol, restarts=args.restarts,
    )
    state = local_search(domain, args.s, params)
    print(f"objective: {state.objective:.6f}")
    print(f"centers: {len(state.centers)}")
    print(f"status: {state.verdict.status}")
    sc = Scenario(domain=domain, s=args.s, centers=state.centers.points,
                  name="optimized", optimizer={
                      "n_max": params.n_max, "iterations": params.iterations,
                      "seed": params.seed, "step_scale": params.step_scale,
                      "cooling": params.cooling, "restarts": params.restarts,
                  })
    Path(args.out).write_text(dump_scenario(sc))
    print(f"wrote: {args.out}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    import uvicorn

    from .service import create_app

    default_domain = None
    if args.domain:
        default_domain = _read(args.domain)
    app = create_app(default_domain_text=default_domain)
    # probe the port first so a busy port is an input error, not a crash
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as e:
        if e.errno in (errno.EADDRINUSE, errno.EACCES):
            print(f"error: cannot bind port {args.port}: {e.strerror}", file=sys.stderr)
            return EXIT_INVALID
        raise
    finally:
        probe.close()
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mdpkit",
        description="Coverage-certified minimum spanning tree exploration of "
                    "the maximum distance problem on polygonal domains.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify coverage of a domain by centers or a tree")
    p.add_argument("domain", help="domain file (.mdp.json)")
    p.add_argument("shape", help="scenario or tree file")
    p.add_argument("--s", type=float, default=None, help="ball radius (default: scenario's s)")
    p.add_argument("--tol", type=float, default=None,
                   help="certification tolerance (default 1e-6 x diameter)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("mst", help="minimum spanning tree of a scenario's centers")
    p.add_argument("centers", help="scenario file")
    p.set_defaults(fn=cmd_mst)

    p = sub.add_parser("prongs", help="build a constructive prong cover")
    p.add_argument("--segment", type=float, default=None, metavar="L",
                   help="segment length (axis-aligned at the origin)")
    p.add_argument("--polyline", default=None,
                   help="JSON file with {\"vertices\": [[x,y],...]}")
    p.add_argument("--s", type=float, required=True, help="ball radius")
    p.add_argument("--n", type=int, default=None, help="prongs per segment (segment mode)")
    p.add_argument("--beta", type=float, default=None, help="excess budget (polyline mode)")
    p.add_argument("--out-prefix", default="prongs", help="output path prefix")
    p.set_defaults(fn=cmd_prongs)

    p = sub.add_parser("optimize", help="anneal a short covering configuration")
    p.add_argument("domain", help="domain file (.mdp.json)")
    p.add_argument("--s", type=float, required=True, help="ball radius")
    p.add_argument("--n-max", type=int, default=40, dest="n_max",
                   help="max centers (default 40)")
    p.add_argument("--iters", type=int, default=2000, help="iterations (default 2000)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--step-scale", type=float, default=0.3, dest="step_scale",
                   help="initial perturbation as a fraction of s (default 0.3)")
    p.add_argument("--cooling", type=float, default=0.9995,
                   help="temperature decay per iteration (default 0.9995)")
    p.add_argument("--coverage-tol", type=float, default=None, dest="coverage_tol",
                   help="certification tolerance (default 1e-3 x diameter)")
    p.add_argument("--restarts", type=int, default=1,
                   help="independent chains, best wins (default 1)")
    p.add_argument("--out", default="best.scenario.mdp.json",
                   help="output scenario path (default best.scenario.mdp.json)")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--domain", default=None, help="domain file preloaded as the default")
    p.set_defaults(fn=cmd_serve)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except (FormatError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_INVALID
    except CoverageRejectedError as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_INFEASIBLE
    except ToleranceError as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_TOLERANCE
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_INVALID
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success / property holds, 1 property fails or input is not a
vertex, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .cone import (
    adjacent_to_some_cut, cut_neighbors, neighbors as vertex_neighbors, tangent_cone,
)
from .enumeration import (
    VertexSet, build_graph, check_domination, check_fractional_connectivity, diameter,
    enumerate_vertices, orbit_summary,
)
from .exact import format_fraction
from .fixtures import FIXTURES, get_fixture
from .io import FormatError, format_vertex, read_vertex, read_vertex_set, write_vertex_set
from .polytope import (
    InfeasiblePointError, MetricVector, all_cuts, are_adjacent, cut_vector, facets,
    incidence, is_integral, is_vertex, latex_delta_name,
)
from .symmetry import CapabilityError, canonical_form, orbit

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, human: str, data: dict) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(human)


def _coords(x: MetricVector) -> list[str]:
    return [format_fraction(c) for c in x.coords]


def _load_point(args) -> tuple[MetricVector, str]:
    if args.fixture:
        if args.vertex_file:
            raise UsageError("give either a vertex file or --fixture, not both")
        try:
            return get_fixture(args.fixture).vertex, args.fixture
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if not args.vertex_file:
        raise UsageError("a vertex file or --fixture NAME is required")
    try:
        return read_vertex(args.vertex_file), str(args.vertex_file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.vertex_file}: {exc.strerror}") from None


def _node_count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"node count must be an integer, got {text!r}") from None
    if n < 3:
        raise UsageError(f"node count must be >= 3, got {n}")
    return n


def _not_a_vertex(x: MetricVector) -> str:
    try:
        tight = incidence(x)
    except InfeasiblePointError as exc:
        return f"not a vertex (outside m_{x.n}: violates {exc.facet.name})"
    return f"not a vertex ({len(tight)} tight facets)"


def cmd_facets(args) -> int:
    n = _node_count(args.n)
    fs = facets(n)
    if args.json:
        _emit(args, "", {"n": n, "count": len(fs), "facets": [
            {"id": f.id, "name": f.name, "delta": latex_delta_name(f), "kind": f.kind,
             "support": [[i, c] for i, c in f.support], "rhs": f.rhs} for f in fs]})
        return EXIT_OK
    for f in fs:
        normal = " ".join(str(c) for c in f.normal_row())
        print(f"{f.id}\t{f.name}\t{latex_delta_name(f)}\t{normal}\t<= {f.rhs}")
    return EXIT_OK


def cmd_cuts(args) -> int:
    n = _node_count(args.n)
    cuts = all_cuts(n)
    if args.json:
        _emit(args, "", {"n": n, "count": len(cuts), "cuts": [
            {"members": sorted(s.members), "vector": _coords(cut_vector(s))} for s in cuts]})
        return EXIT_OK
    for s in cuts:
        print(f"{s}\t{cut_vector(s)}")
    return EXIT_OK


def cmd_incidence(args) -> int:
    x, _ = _load_point(args)
    try:
        tight = sorted(incidence(x))
    except InfeasiblePointError as exc:
        _emit(args, _not_a_vertex(x), {"feasible": False, "violated": exc.facet.name})
        return EXIT_FAIL
    fs = facets(x.n)
    _emit(args,
          "\n".join([f"{len(tight)} tight facets"] + [f"  {fs[i].name}\t{latex_delta_name(fs[i])}" for i in tight]),
          {"feasible": True, "tight": [fs[i].name for i in tight], "count": len(tight)})
    return EXIT_OK


def cmd_verify(args) -> int:
    x, source = _load_point(args)
    if not is_vertex(x):
        _emit(args, _not_a_vertex(x), {"source": source, "vertex": False, "reason": _not_a_vertex(x)})
        return EXIT_FAIL
    fs = facets(x.n)
    cone = tangent_cone(x)
    nbrs = vertex_neighbors(x, cone=cone)
    consistent = all(are_adjacent(x, w, check=False) and is_vertex(w) for w in nbrs)
    cut_adjacent = adjacent_to_some_cut(x)
    integral = [w for w in nbrs if is_integral(w)]
    data = {
        "source": source, "n": x.n, "vertex": True, "integral": is_integral(x),
        "tight": [fs[i].name for i in cone.tight], "tight_count": len(cone.tight),
        "quasi_simple": cone.is_quasi_simple, "rays": len(cone.rays),
        "neighbors": [{"coords": _coords(w), "integral": is_integral(w)} for w in nbrs],
        "neighbor_count": len(nbrs), "integral_neighbors": len(integral),
        "cut_adjacent": cut_adjacent, "consistent": consistent,
    }
    lines = [
        f"vertex: yes (n={x.n}, dimension {x.dimension}, {'integral' if is_integral(x) else 'fractional'})",
        f"tight facets: {len(cone.tight)}" + (" (quasi-simple)" if cone.is_quasi_simple else ""),
        *(f"  {fs[i].name}" for i in cone.tight),
        f"extreme rays: {len(cone.rays)}",
        f"neighbors: {len(nbrs)} ({len(integral)} integral, {len(nbrs) - len(integral)} fractional)",
        *(f"  {w}\t{'integral' if is_integral(w) else 'fractional'}" for w in nbrs),
        f"cut-adjacent: {'yes' if cut_adjacent else 'NO'}",
    ]
    if not consistent:
        lines.append("INCONSISTENT: ray shooting and the rank test disagree")
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_neighbors(args) -> int:
    x, _ = _load_point(args)
    if not is_vertex(x):
        _emit(args, _not_a_vertex(x), {"vertex": False, "reason": _not_a_vertex(x)})
        return EXIT_FAIL
    nbrs = vertex_neighbors(x)
    _emit(args, "\n".join(str(w) for w in nbrs),
          {"n": x.n, "count": len(nbrs), "neighbors": [_coords(w) for w in nbrs]})
    return EXIT_OK


def cmd_adjacent(args) -> int:
    try:
        u, v = read_vertex(args.first), read_vertex(args.second)
    except OSError as exc:
        raise UsageError(f"cannot read {exc.filename}: {exc.strerror}") from None
    if u.n != v.n:
        raise UsageError(f"vertices have different n ({u.n} and {v.n})")
    for w in (u, v):
        if not is_vertex(w):
            _emit(args, _not_a_vertex(w), {"vertex": False, "reason": _not_a_vertex(w)})
            return EXIT_FAIL
    adj = u != v and are_adjacent(u, v, check=False)
    _emit(args, "adjacent: yes" if adj else "adjacent: no", {"adjacent": adj})
    return EXIT_OK if adj else EXIT_FAIL


def _enumerated(n: int, args):
    try:
        return enumerate_vertices(n, allow_long=args.allow_long)
    except CapabilityError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args) -> int:
    n = _node_count(args.n)
    vs = _enumerated(n, args)
    out = args.output or f"m{n}_vertices.txt"
    if out == "-":
        write_vertex_set(sys.stdout, n, vs)
    else:
        write_vertex_set(out, n, vs)
    g = build_graph(vs, workers=args.threads)
    dom = check_domination(vs, workers=args.threads)
    conn = check_fractional_connectivity(g)
    orbits = orbit_summary(vs) if n <= 6 else None
    diam = diameter(g)
    data = {
        "n": n, "vertices": len(vs), "cuts": len(vs.cuts), "fractional": len(vs.fractional),
        "edges": g.edge_count, "diameter": diam, "domination": dom.as_dict(),
        "fractional_connectivity": conn.as_dict(),
        "orbits": orbits.as_dict() if orbits else None, "output": out,
    }
    human = "\n".join([
        f"{len(vs)} vertices ({len(vs.cuts)} cuts), diameter {diam}, "
        f"domination {'holds' if dom.holds else 'FAILS'}",
        f"fractional vertices: {len(vs.fractional)}",
        f"edges: {g.edge_count}",
        dom.summary(),
        conn.summary(),
        f"orbits: {orbits.summary()}" if orbits else "orbits: not computed for n > 6",
        f"vertex set written to {'stdout' if out == '-' else out}",
    ])
    if out == "-":
        print(human, file=sys.stderr)
    else:
        _emit(args, human, data)
    return EXIT_OK


def cmd_diameter(args) -> int:
    if args.vertex_set:
        try:
            n, vertices = read_vertex_set(args.vertex_set)
        except OSError as exc:
            raise UsageError(f"cannot read {args.vertex_set}: {exc.strerror}") from None
        vs = VertexSet(n, tuple(vertices))
    elif args.n:
        vs = _enumerated(_node_count(args.n), args)
    else:
        raise UsageError("give a node count or --vertex-set FILE")
    g = build_graph(vs, workers=args.threads)
    d = diameter(g)
    _emit(args, f"diameter {d} ({len(vs)} vertices, {g.edge_count} edges)",
          {"n": vs.n, "vertices": len(vs), "edges": g.edge_count, "diameter": d})
    return EXIT_OK


def cmd_canon(args) -> int:
    x, _ = _load_point(args)
    try:
        incidence(x)
    except InfeasiblePointError as exc:
        _emit(args, _not_a_vertex(x), {"feasible": False, "violated": exc.facet.name})
        return EXIT_FAIL
    c = canonical_form(x)
    size = len(orbit(x)) if x.n <= 6 else None
    human = format_vertex(c).rstrip("\n")
    if size is not None:
        human += f"\n# orbit size: {size}"
    _emit(args, human, {"n": x.n, "canonical": _coords(c), "orbit_size": size})
    return EXIT_OK


def cmd_check_lp(args) -> int:
    if args.vertex_set:
        try:
            n, vertices = read_vertex_set(args.vertex_set)
        except OSError as exc:
            raise UsageError(f"cannot read {args.vertex_set}: {exc.strerror}") from None
        report = check_domination(vertices, workers=args.threads)
        _emit(args, report.summary() + "".join(f"\n  {v}" for v in report.violators),
              report.as_dict())
        return EXIT_OK if report.holds else EXIT_FAIL
    x, source = _load_point(args)
    if not is_vertex(x):
        _emit(args, _not_a_vertex(x), {"vertex": False, "reason": _not_a_vertex(x)})
        return EXIT_FAIL
    cuts = cut_neighbors(x)
    holds = bool(cuts)
    human = (f"cut-adjacent: {'yes' if holds else 'NO'} "
             f"({len(cuts)} of {len(all_cuts(x.n))} cuts adjacent)")
    _emit(args, human, {"source": source, "cut_adjacent": holds,
                        "adjacent_cuts": [_coords(c) for c in cuts],
                        "cuts_tested": len(all_cuts(x.n))})
    return EXIT_OK if holds else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, metavar="N",
                        help="worker processes for pairwise tests (default: all cores)")
    common.add_argument("--timing", action="store_true", help="report wall time on stderr")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("vertex_file", nargs="?", type=Path, help="vertex file")
    point.add_argument("--fixture", metavar="NAME", choices=sorted(FIXTURES),
                       help="built-in vertex instead of a file")

    parser = argparse.ArgumentParser(prog="metricpoly", description="Exact computations on the metric polytope m_n.",
                                     epilog="exit codes: 0 ok, 1 property fails or not a vertex, 2 usage error")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("facets", parents=[common], help="list the facets of m_n")
    p.add_argument("n")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("cuts", parents=[common], help="list the 2^(n-1) cuts")
    p.add_argument("n")
    p.set_defaults(func=cmd_cuts)

    for name, func, text in (
        ("verify", cmd_verify, "incidence, tangent cone, ray shooting and cut adjacency"),
        ("neighbors", cmd_neighbors, "list the neighbours of a vertex"),
        ("incidence", cmd_incidence, "list the tight facets of a point"),
        ("canon", cmd_canon, "canonical representative of the orbit"),
    ):
        p = sub.add_parser(name, parents=[common, point], help=text)
        p.set_defaults(func=func)

    p = sub.add_parser("adjacent", parents=[common], help="test whether two vertices form an edge")
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)
    p.set_defaults(func=cmd_adjacent)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate the vertices of m_n")
    p.add_argument("n")
    p.add_argument("-o", "--output", help="vertex-set file (default m<n>_vertices.txt, '-' for stdout)")
    p.add_argument("--allow-long", action="store_true", help="permit n = 7 (hours)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("diameter", parents=[common], help="diameter of the vertex graph")
    p.add_argument("n", nargs="?")
    p.add_argument("--vertex-set", type=Path, metavar="FILE")
    p.add_argument("--allow-long", action="store_true")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("check-lp", parents=[common, point],
                       help="is the vertex (or every vertex of a set) adjacent to a cut?")
    p.add_argument("--vertex-set", type=Path, metavar="FILE")
    p.set_defaults(func=cmd_check_lp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"metricpoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        print(f"# {args.command}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 when the command succeeds (for checks: the property holds),
1 when a check fails or a computation raises a domain error, 2 for usage
errors, including unreadable or malformed input files. All inputs are
loaded and validated before any computation starts.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import formats
from .action import (
    basepoint_conjugation_check,
    build_orbit_labeling,
    check_no_inversion,
    random_word,
    theta,
    verify_homomorphism,
)
from .cremona import check_witness, generation_obstruction, load_ledger, phi, phi_via_cube_path
from .errors import MedianLabError
from .graphs import ExplicitGraph, Graph, _bfs, ball, bfs_distance, shortest_path
from .hyperplanes import carrier, halfspaces, hyperplane_classes, separating_hyperplanes
from .median import check_median, median
from .raag import equal, format_word, normal_form, parse_word
from .rewriting import apply_move, normalize_to_geodesic, transform_path

DEFAULT_CAP = 64
DEFAULT_RADIUS = 3


class UsageError(Exception):
    pass


def _input(fn, *args):
    try:
        return fn(*args)
    except (MedianLabError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _graph(spec: str) -> Graph:
    return _input(formats.open_graph, spec)


def _vertex(g: Graph, text: str):
    return _input(formats.parse_vertex, g, text)


def _action(path: str):
    return _input(formats.load_action, path)


def _ledger(path: str):
    return _input(load_ledger, formats.resolve(path))


def _cap(g: Graph, cap):
    if cap is not None:
        return cap
    return None if isinstance(g, ExplicitGraph) else DEFAULT_CAP


def _radius(g: Graph, radius):
    if radius is not None:
        return radius
    return None if isinstance(g, ExplicitGraph) else DEFAULT_RADIUS


def _auto_radius(a, words, radius, cap):
    """A radius whose ball holds a geodesic from the basepoint to each ``g.o``."""
    if radius is not None or isinstance(a.host, ExplicitGraph):
        return radius
    o = a.basepoint
    far = max((bfs_distance(a.host, o, a.act(w, o), cap) for w in words), default=0)
    return max(DEFAULT_RADIUS, far)


def hyp_name(g: Graph, J) -> str:
    a, b = g.hyperplane_edge(J)
    return f"{g.format_vertex(a)}-{g.format_vertex(b)}"


def _local_classes(g: Graph, radius: int | None) -> tuple[ExplicitGraph, dict]:
    """The graph (or a ball of it) with each edge mapped to its hyperplane."""
    if isinstance(g, ExplicitGraph) and radius is None:
        return g, hyperplane_classes(g)
    b = ball(g, g.base_vertex, DEFAULT_RADIUS if radius is None else radius)
    return b, {e: g.hyperplane_id(*e) for e in b.edges}


# --- subcommands -------------------------------------------------------------

def cmd_check_median(args, out):
    g = _graph(args.graph)
    scope = ""
    if not isinstance(g, ExplicitGraph):
        r = DEFAULT_RADIUS if args.radius is None else args.radius
        g = ball(g, g.base_vertex, r)
        scope = f" (ball of radius {r} only)"
    rep = check_median(g)
    if rep:
        out.append("median" + scope)
        return 0
    x, y, z = rep.witness
    out.append(f"not median: ({g.format_vertex(x)}, {g.format_vertex(y)}, {g.format_vertex(z)}) "
               f"has {rep.median_count} medians{scope}")
    return 1


def cmd_median(args, out):
    g = _graph(args.graph)
    xs = [_vertex(g, t) for t in (args.x, args.y, args.z)]
    out.append(g.format_vertex(median(g, *xs, _cap(g, args.cap))))
    return 0


def cmd_geodesic(args, out):
    g = _graph(args.graph)
    x, y = _vertex(g, args.x), _vertex(g, args.y)
    out.append(formats.format_path(g, shortest_path(g, x, y, _cap(g, args.cap))))
    return 0


def cmd_hyperplanes(args, out):
    g = _graph(args.graph)
    local, classes = _local_classes(g, args.radius)
    if args.format == "dot":
        names = {J: hyp_name(g, J) for J in set(classes.values())}
        out.append(formats.to_dot(local, {e: names[J] for e, J in classes.items()}, host=g).rstrip("\n"))
        return 0
    members: dict = {}
    for e, J in classes.items():
        members.setdefault(J, []).append(e)
    for J in sorted(members, key=lambda J: hyp_name(g, J)):
        es = " ".join(f"{g.format_vertex(u)}-{g.format_vertex(v)}" for u, v in sorted(members[J]))
        out.append(f"{hyp_name(g, J)}: {es}")
    return 0


def cmd_separators(args, out):
    g = _graph(args.graph)
    x, y = _vertex(g, args.x), _vertex(g, args.y)
    hs = separating_hyperplanes(g, x, y, _cap(g, args.cap))
    for name in sorted(hyp_name(g, J) for J in hs):
        out.append(name)
    out.append(f"count {len(hs)}")
    return 0


def _edge_hyperplane(g: Graph, args):
    u, v = _vertex(g, args.u), _vertex(g, args.v)
    if not g.adjacent(u, v):
        raise UsageError(f"{args.u} and {args.v} are not adjacent")
    return g.hyperplane_id(u, v)


def cmd_carrier(args, out):
    g = _graph(args.graph)
    J = _edge_hyperplane(g, args)
    if isinstance(g, ExplicitGraph) and args.radius is None:
        c = carrier(g, J)
        verts = c.vertices
    else:
        _, classes = _local_classes(g, args.radius)
        verts = sorted({x for e, K in classes.items() if K == J for x in e})
    out.append(" ".join(g.format_vertex(v) for v in verts))
    return 0


def cmd_halfspace(args, out):
    g = _graph(args.graph)
    J = _edge_hyperplane(g, args)
    u = _vertex(g, args.u)
    neg, pos = halfspaces(g, J, _cap(g, args.cap))
    # the side containing u, or the other one
    h = neg if u in neg else pos
    if args.side == "far":
        h = pos if h is neg else neg
    if h.vertices is not None and args.radius is None:
        verts = sorted(h.vertices)
    else:
        r = DEFAULT_RADIUS if args.radius is None else args.radius
        verts = sorted(v for v in _bfs(g, u, r) if v in h)
    out.append(" ".join(g.format_vertex(v) for v in verts))
    return 0


def cmd_normalize_path(args, out):
    g = _graph(args.graph)
    p = _input(formats.parse_path, g, args.path)
    if args.to:
        q = _input(formats.parse_path, g, args.to)
        trace = transform_path(g, p, q, _cap(g, args.cap))
    else:
        trace = normalize_to_geodesic(g, p, _cap(g, args.cap))
    out.append(f"# start {formats.format_path(g, trace.start)}")
    out.extend(formats.format_moves(g, trace.moves).splitlines())
    out.append(f"# end {formats.format_path(g, trace.end)}")
    return 0


def cmd_apply_moves(args, out):
    g = _graph(args.graph)
    p = _input(formats.parse_path, g, args.path)
    if args.moves == "-":
        text, source = sys.stdin.read(), "<stdin>"
    else:
        try:
            text, source = formats.resolve(args.moves).read_text(encoding="utf-8"), args.moves
        except OSError as exc:
            raise UsageError(f"cannot read {args.moves}: {exc.strerror}") from None
    moves = _input(formats.parse_moves, g, text, source)
    for m in moves:
        p = apply_move(g, p, m)
    out.append(formats.format_path(g, p))
    return 0


def cmd_raag_reduce(args, out):
    gamma = _input(formats.parse_gamma, args.gamma)
    w = _input(parse_word, args.word)
    out.append(format_word(normal_form(gamma, w)))
    return 0


def cmd_raag_eq(args, out):
    gamma = _input(formats.parse_gamma, args.gamma)
    a, b = _input(parse_word, args.word1), _input(parse_word, args.word2)
    same = equal(gamma, a, b)
    out.append("equal" if same else "not equal")
    return 0 if same else 1


def cmd_check_inversion(args, out):
    a = _action(args.action)
    r = _radius(a.host, args.radius)
    res = check_no_inversion(a, r)
    scope = "whole graph" if r is None else f"radius {r}"
    if res:
        out.append(f"no inversion ({scope})")
        return 0
    out.append(f"inversion: {format_word(res.witness_word)} inverts {hyp_name(a.host, res.hyperplane)} ({scope})")
    return 1


def cmd_orbits(args, out):
    a = _action(args.action)
    r = _radius(a.host, args.radius)
    lab = build_orbit_labeling(a, r)
    g = a.host
    if args.format == "dot":
        local, classes = _local_classes(g, r)
        out.append(formats.to_dot(local, {e: lab.orbit(J) for e, J in classes.items()}, host=g).rstrip("\n"))
        return 0
    counts: dict = {}
    for J, name in lab.orbit_of.items():
        counts[name] = counts.get(name, 0) + 1
    for name in lab.gamma.generators:
        out.append(f"orbit {name}: {counts[name]} hyperplanes, representative {hyp_name(g, lab.representatives[name])}")
    es = " ".join(f"{u}-{v}" for u, v in lab.gamma.edges())
    out.append(f"gamma edges: {es or 'none'}")
    out.append("scope: " + ("whole graph" if r is None else f"radius {r}"))
    return 0


def cmd_theta(args, out):
    a = _action(args.action)
    w = _input(parse_word, args.word)
    cap = _cap(a.host, args.cap)
    lab = build_orbit_labeling(a, _auto_radius(a, [w], args.radius, cap))
    out.append(format_word(theta(a, lab, w, cap)))
    return 0


def _samples(a, args, pairs: bool):
    rng = np.random.default_rng(args.seed)
    letters = a.letters()
    if pairs:
        return [(random_word(rng, letters, args.length), random_word(rng, letters, args.length))
                for _ in range(args.samples)]
    return [random_word(rng, letters, args.length) for _ in range(args.samples)]


def _basepoint_radius(a, o2, words, radius, cap):
    if radius is not None or isinstance(a.host, ExplicitGraph):
        return radius
    o = a.basepoint
    shift = bfs_distance(a.host, o, o2, cap)
    far = max((bfs_distance(a.host, o2, a.act(w, o2), cap) for w in words), default=0)
    return max(DEFAULT_RADIUS, far + shift)


def _report(rep, out):
    scope = "whole graph" if rep.radius is None else f"radius {rep.radius}"
    out.append(f"{rep.name}: checked {rep.checked}, failures {len(rep.failures)} ({scope})")
    for f in rep.failures[:5]:
        out.append("  " + " | ".join(format_word(x) for x in f))
    return 0 if rep.ok else 1


def cmd_verify_hom(args, out):
    a = _action(args.action)
    cap = _cap(a.host, args.cap)
    samples = _samples(a, args, True)
    words = [w for g_, h in samples for w in (g_, h, g_ + h)]
    lab = build_orbit_labeling(a, _auto_radius(a, words, args.radius, cap))
    rep = verify_homomorphism(a, lab, samples, cap)
    return _report(rep, out)


def cmd_basepoint_check(args, out):
    a = _action(args.action)
    o2 = _vertex(a.host, args.basepoint)
    cap = _cap(a.host, args.cap)
    samples = _samples(a, args, False)
    lab = build_orbit_labeling(a, _basepoint_radius(a, o2, samples, args.radius, cap))
    rep = basepoint_conjugation_check(a, lab, o2, samples, cap)
    return _report(rep, out)


def cmd_phi(args, out):
    led = _ledger(args.ledger)
    f = _input(led.__getitem__, args.map)
    out.append(str(phi(f)))
    return 0


def cmd_phi_path(args, out):
    led = _ledger(args.ledger)
    f = _input(led.__getitem__, args.map)
    path, vec = phi_via_cube_path(f)
    out.append("path " + " ".join("{" + ",".join(f"{k}{i}:{c}" for k, i, c in v) + "}" for v in path))
    out.append(str(vec))
    return 0 if vec == phi(f) else 1


def cmd_check_witness(args, out):
    led = _ledger(args.ledger)
    status = 0
    for w in led.witnesses:
        rep = check_witness(w)
        head = f"{w.f.name} o {w.g.name} = {w.composite.name}"
        if rep.ok:
            out.append(f"ok   {head}")
        else:
            out.append(f"FAIL {head}: discrepancy {rep.discrepancy}")
            status = 1
    out.append(f"{len(led.witnesses)} witnesses checked")
    return status


def cmd_obstruction(args, out):
    led = _ledger(args.ledger)
    target = _input(led.__getitem__, args.target)
    if args.generators:
        gens = [_input(led.__getitem__, n) for n in formats.split_top(args.generators)]
    else:
        gens = [m for m in led.maps.values() if m.is_pseudo_regularisable]
    names = ",".join(m.name for m in gens) or "none"
    if generation_obstruction(gens, target):
        out.append(f"phi({target.name}) lies in the span of {names}: no obstruction")
        return 0
    out.append(f"phi({target.name}) is outside the span of {names}: {target.name} is not generated by them")
    return 1


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="medianlab",
        description="Median graphs, hyperplanes, path rewriting, RAAG words, group actions and class ledgers.",
        epilog=f"Graph specs: lattice:N, tree:N, cube:FILE or cube:a,b,c, file:GRAPH.json. "
               f"Relative files are also looked up in ${formats.FIXTURE_ENV}.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=fn)
        return sp

    cap_help = f"BFS radius cap (default: unbounded for explicit graphs, {DEFAULT_CAP} otherwise)"
    rad_help = (f"exploration radius (default: whole graph for explicit hosts; otherwise {DEFAULT_RADIUS}, "
                "theta, verify-hom and basepoint-check raise it to reach every element they evaluate)")

    sp = add("check-median", cmd_check_median, "brute-force median test; a ball around the base vertex for providers")
    sp.add_argument("graph")
    sp.add_argument("--radius", type=int, help=f"ball radius for providers (default {DEFAULT_RADIUS})")

    sp = add("median", cmd_median, "median of three vertices")
    sp.add_argument("graph")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("z")
    sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("geodesic", cmd_geodesic, "lexicographically least geodesic")
    sp.add_argument("graph")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("hyperplanes", cmd_hyperplanes, "list hyperplane classes (a ball for providers)")
    sp.add_argument("graph")
    sp.add_argument("--radius", type=int, help=rad_help)
    sp.add_argument("--format", choices=["text", "dot"], default="text")

    sp = add("separators", cmd_separators, "hyperplanes separating two vertices")
    sp.add_argument("graph")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("carrier", cmd_carrier, "carrier vertices of the hyperplane dual to edge u-v")
    sp.add_argument("graph")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--radius", type=int, help=rad_help)

    sp = add("halfspace", cmd_halfspace, "halfspace of the hyperplane dual to u-v on u's side (or the far side)")
    sp.add_argument("graph")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--side", choices=["near", "far"], default="near")
    sp.add_argument("--radius", type=int, help="list only vertices within this distance of u")
    sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("normalize-path", cmd_normalize_path, "print a move script shortening a path to a geodesic")
    sp.add_argument("graph")
    sp.add_argument("--path", required=True, help="vertices separated by ',' or ';'")
    sp.add_argument("--to", help="second path with the same endpoints; print moves from --path to it")
    sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("apply-moves", cmd_apply_moves, "replay a move script on a path")
    sp.add_argument("graph")
    sp.add_argument("--path", required=True)
    sp.add_argument("--moves", required=True, help="move script file, or - for stdin")

    sp = add("raag-reduce", cmd_raag_reduce, "normal form of a word")
    sp.add_argument("gamma", help="complete:a,b | edgeless:a,b | GAMMA.json")
    sp.add_argument("word")

    sp = add("raag-eq", cmd_raag_eq, "decide equality of two words")
    sp.add_argument("gamma")
    sp.add_argument("word1")
    sp.add_argument("word2")

    sp = add("check-inversion", cmd_check_inversion, "search for a hyperplane inversion")
    sp.add_argument("action")
    sp.add_argument("--radius", type=int, help=rad_help)

    sp = add("orbits", cmd_orbits, "hyperplane orbits and the orbit graph")
    sp.add_argument("action")
    sp.add_argument("--radius", type=int, help=rad_help)
    sp.add_argument("--format", choices=["text", "dot"], default="text")

    sp = add("theta", cmd_theta, "RAAG image of a group element")
    sp.add_argument("action")
    sp.add_argument("--word", required=True)
    sp.add_argument("--radius", type=int, help=rad_help)
    sp.add_argument("--cap", type=int, help=cap_help)

    for name, fn, help_, n in (("verify-hom", cmd_verify_hom, "test theta(gh) = theta(g) theta(h) on random pairs", 200),
                               ("basepoint-check", cmd_basepoint_check,
                                "test that moving the basepoint conjugates theta", 100)):
        sp = add(name, fn, help_)
        sp.add_argument("action")
        if name == "basepoint-check":
            sp.add_argument("--basepoint", required=True)
        sp.add_argument("--samples", type=int, default=n, help=f"default {n}")
        sp.add_argument("--length", type=int, default=4, help="maximum random word length (default 4)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--radius", type=int, help=rad_help)
        sp.add_argument("--cap", type=int, help=cap_help)

    sp = add("phi", cmd_phi, "class vector of a map")
    sp.add_argument("ledger")
    sp.add_argument("map")

    sp = add("phi-path", cmd_phi_path, "class vector read off a cube path")
    sp.add_argument("ledger")
    sp.add_argument("map")

    sp = add("check-witness", cmd_check_witness, "check additivity on every composition witness")
    sp.add_argument("ledger")

    sp = add("obstruction", cmd_obstruction, "exit 0 when phi(target) is in the span of the generators, 1 when not")
    sp.add_argument("ledger")
    sp.add_argument("--target", required=True)
    sp.add_argument("--generators", help="comma-separated map names (default: all pseudo-regularisable maps)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list = []
    try:
        status = args.func(args, out)
    except UsageError as exc:
        print(f"medianlab: error: {exc}", file=sys.stderr)
        return 2
    except MedianLabError as exc:
        sys.stdout.write("".join(line + "\n" for line in out))
        print(f"medianlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write("".join(line + "\n" for line in out))
    return status


if __name__ == "__main__":
    sys.exit(main())

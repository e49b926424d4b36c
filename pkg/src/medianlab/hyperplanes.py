"""Hyperplanes of median graphs: classes, halfspaces, carriers, orientation.

On explicit graphs hyperplanes are computed as the union-find closure of
"opposite edges of a 4-cycle" and named by their smallest edge. Lazily
generated providers declare their own hyperplane ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from scipy.cluster.hierarchy import DisjointSet

from .errors import MedianLabError, NotVerifiedMedian, SameHyperplane, UnknownHyperplane
from .graphs import ExplicitGraph, Graph, _bfs, bfs_distance, edge, path_edges, shortest_path
from .median import check_median


def four_cycles(g: Graph, vertices=None):
    """Yield each 4-cycle ``(u, v, x, w)`` once, with ``u`` its least vertex.

    The cycle runs u-v-x-w-u and ``v < w``. With ``vertices`` given, only
    cycles whose vertices all lie in that set are produced.
    """
    pool = g.vertices if vertices is None else sorted(vertices)
    inside = None if vertices is None else set(vertices)
    for u in pool:
        nbrs = [n for n in g.neighbors(u) if n > u and (inside is None or n in inside)]
        for i, v in enumerate(nbrs):
            nv = set(g.neighbors(v))
            for w in nbrs[i + 1:]:
                for x in g.neighbors(w):
                    if x != u and x > u and x in nv and (inside is None or x in inside):
                        yield (u, v, x, w)


def compute_hyperplanes(g: ExplicitGraph, verified: bool = False) -> dict:
    """Map every edge of ``g`` to its hyperplane id (the class's least edge).

    ``g`` must be known to be median, either through ``verified=True`` or a
    prior successful :func:`check_median` call.
    """
    report = g._cache.get("median_report")
    if not verified and not (report is not None and report.is_median):
        raise NotVerifiedMedian("run check_median first or pass verified=True")
    ds = DisjointSet(g.edges)
    for u, v, x, w in four_cycles(g):
        ds.merge(edge(u, v), edge(w, x))
        ds.merge(edge(u, w), edge(v, x))
    classes = {}
    for subset in ds.subsets():
        rep = min(subset)
        for e in subset:
            classes[e] = rep
    return classes


def hyperplane_classes(g: ExplicitGraph) -> dict:
    """Cached edge -> hyperplane map; verifies medianness on first use."""
    if "hyperplanes" not in g._cache:
        report = check_median(g)
        if not report.is_median:
            raise NotVerifiedMedian(f"graph is not median (witness {report.witness})")
        g._cache["hyperplanes"] = compute_hyperplanes(g, verified=True)
    return g._cache["hyperplanes"]


def all_hyperplanes(g: ExplicitGraph) -> list:
    return sorted(set(hyperplane_classes(g).values()))


def hyperplane_edges(g: ExplicitGraph, J) -> list:
    es = [e for e, h in hyperplane_classes(g).items() if h == J]
    if not es:
        raise UnknownHyperplane(repr(J))
    return sorted(es)


def crossed_hyperplanes(g: Graph, path) -> list:
    return [g.hyperplane_id(u, v) for u, v in path_edges(path)]


def is_geodesic_by_crossings(g: Graph, path) -> bool:
    """True iff the path crosses each hyperplane at most once."""
    hs = crossed_hyperplanes(g, path)
    return len(hs) == len(set(hs))


def _validate(g: Graph, J):
    if isinstance(g, ExplicitGraph):
        if J not in set(hyperplane_classes(g).values()):
            raise UnknownHyperplane(repr(J))
        return
    try:
        a, b = g.hyperplane_edge(J)
        ok = g.has_vertex(a) and g.has_vertex(b) and g.hyperplane_id(a, b) == J
    except (ValueError, TypeError, IndexError, KeyError):
        ok = False
    if not ok:
        raise UnknownHyperplane(repr(J))


@dataclass(frozen=True)
class Halfspace:
    """One side of a hyperplane.

    ``positive`` marks the base-positive side, the one that does not hold
    the smaller endpoint of the hyperplane's canonical edge. Explicit graphs
    carry the vertex set; providers answer membership by predicate.
    """

    graph: Graph = field(repr=False, compare=False)
    hyperplane: object
    positive: bool
    vertices: frozenset | None = None
    radius_cap: int | None = field(default=None, repr=False, compare=False)

    def __contains__(self, v) -> bool:
        if self.vertices is not None:
            return v in self.vertices
        return base_side(self.graph, self.hyperplane, v, self.radius_cap) == self.positive


def base_side(g: Graph, J, v, radius_cap: int | None = None) -> bool:
    """Whether ``v`` lies on the base-positive side of ``J``."""
    try:
        return g.hyperplane_side(J, v)
    except NotImplementedError:
        a, b = g.hyperplane_edge(J)
        return bfs_distance(g, v, b, radius_cap) < bfs_distance(g, v, a, radius_cap)


def halfspaces(g: Graph, J, radius_cap: int | None = None) -> tuple[Halfspace, Halfspace]:
    """The (base-negative, base-positive) halfspaces of ``J``."""
    _validate(g, J)
    if not isinstance(g, ExplicitGraph):
        return (Halfspace(g, J, False, None, radius_cap), Halfspace(g, J, True, None, radius_cap))
    cache = g._cache.setdefault("halfspaces", {})
    if J not in cache:
        removed = set(hyperplane_edges(g, J))
        a, b = J
        seen = {a}
        stack = [a]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in seen and edge(u, w) not in removed:
                    seen.add(w)
                    stack.append(w)
        neg = frozenset(seen)
        pos = frozenset(g.vertices) - neg
        if b in neg or not pos:
            raise MedianLabError(f"removing {J!r} does not disconnect the graph")
        # exactly two components: the complement must be connected too
        g.subgraph(pos)
        cache[J] = (Halfspace(g, J, False, neg), Halfspace(g, J, True, pos))
    return cache[J]


def carrier(g: ExplicitGraph, J) -> ExplicitGraph:
    """Induced subgraph on the endpoints of the edges of ``J``."""
    es = hyperplane_edges(g, J)
    return g.subgraph({v for e in es for v in e})


def transverse_by_search(g: Graph, J1, J2, radius: int, center=None) -> bool:
    """Look for a 4-cycle with adjacent edges in ``J1`` and ``J2`` inside a ball."""
    if center is None:
        center = g.hyperplane_edge(J1)[0]
    inside = set(_bfs(g, center, radius))
    for u, v, x, w in four_cycles(g, inside):
        cyc = (u, v, x, w)
        hs = [g.hyperplane_id(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
        if J1 in hs and J2 in hs:
            return True
    return False


def is_transverse(g: Graph, J1, J2, radius_cap: int | None = None) -> bool:
    """Whether two distinct hyperplanes share adjacent edges of some 4-cycle.

    Providers answer natively when they can; otherwise a 4-cycle search runs
    in a ball around ``J1``'s canonical edge reaching ``J2``'s, plus
    ``radius_cap`` (default 2).
    """
    if J1 == J2:
        raise SameHyperplane(repr(J1))
    _validate(g, J1)
    _validate(g, J2)
    if isinstance(g, ExplicitGraph):
        classes = hyperplane_classes(g)
        for u, v in hyperplane_edges(g, J1):
            for a, b in ((u, v), (v, u)):
                for w in g.neighbors(a):
                    if w == b or classes[edge(a, w)] != J2:
                        continue
                    if set(g.neighbors(b)) & set(g.neighbors(w)) - {a}:
                        return True
        return False
    native = g.hyperplanes_transverse(J1, J2)
    if native is not None:
        return native
    a1 = g.hyperplane_edge(J1)[0]
    a2 = g.hyperplane_edge(J2)[0]
    slack = 2 if radius_cap is None else radius_cap
    reach = bfs_distance(g, a1, a2, None if radius_cap is None else radius_cap + slack)
    return transverse_by_search(g, J1, J2, reach + slack, a1)


def quarter_spaces_nonempty(g: ExplicitGraph, J1, J2) -> bool:
    """All four intersections of the halfspaces of J1 and J2 are nonempty."""
    return all(A.vertices & B.vertices for A in halfspaces(g, J1) for B in halfspaces(g, J2))


def separating_hyperplanes(g: Graph, x, y, radius_cap: int | None = None) -> frozenset:
    """Hyperplanes crossed by a geodesic from ``x`` to ``y``."""
    return frozenset(crossed_hyperplanes(g, shortest_path(g, x, y, radius_cap)))


def crossing_sign(g: Graph, u, v, radius_cap: int | None = None) -> int:
    """+1 when the edge u -> v enters the base-positive side of its hyperplane."""
    J = g.hyperplane_id(u, v)
    return 1 if base_side(g, J, v, radius_cap) else -1


class Orientation:
    """A choice of positive halfspace for each hyperplane.

    ``flips[J] = -1`` reverses the base orientation of ``J``; hyperplanes
    missing from ``flips`` keep it.
    """

    def __init__(self, g: Graph, hyperplanes=None, flips: dict | None = None):
        self.graph = g
        self.hyperplanes = None if hyperplanes is None else frozenset(hyperplanes)
        self.flips = dict(flips or {})

    def _check(self, J):
        if self.hyperplanes is not None and J not in self.hyperplanes:
            raise UnknownHyperplane(repr(J))

    def positive_side(self, J, radius_cap: int | None = None) -> Halfspace:
        self._check(J)
        neg, pos = halfspaces(self.graph, J, radius_cap)
        return pos if self.flips.get(J, 1) == 1 else neg

    def sign(self, u, v, radius_cap: int | None = None) -> int:
        J = self.graph.hyperplane_id(u, v)
        self._check(J)
        return self.flips.get(J, 1) * crossing_sign(self.graph, u, v, radius_cap)


def orient(g: Graph, hyperplane_ids=None) -> Orientation:
    """Orient each hyperplane away from the smaller endpoint of its canonical edge.

    On explicit graphs that endpoint is the least vertex incident to the
    hyperplane, so the side holding it becomes negative.
    """
    if hyperplane_ids is None and isinstance(g, ExplicitGraph):
        hyperplane_ids = all_hyperplanes(g)
    return Orientation(g, hyperplane_ids)

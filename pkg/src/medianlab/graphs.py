"""Graph representations and breadth-first primitives.

Every graph in the package is either an :class:`ExplicitGraph` (finite,
fully materialized) or a lazily generated provider subclassing
:class:`Graph`. Both expose the same small contract:

* ``neighbors(v)`` returns a sorted tuple, which makes every downstream
  traversal deterministic;
* ``hyperplane_id(u, v)`` names the parallelism class of an edge;
* ``hyperplane_edge(J)`` returns one canonical edge of a class, and
  ``hyperplane_side(J, v)`` tells whether ``v`` lies on the side of ``J``
  holding the larger endpoint of that edge.

Vertex keys are plain hashable, totally ordered Python values. Each
provider documents its encoding: tuples of ints for lattices, reduced
words (tuples of ``(generator, sign)``) for free-group trees, sorted label
tuples for finite-support cubes, pairs for products.
"""
from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Sequence

from .errors import CapExceeded, GraphFormatError, VertexNotFound

Vertex = Hashable
Edge = tuple
Path = tuple


def edge(u, v) -> Edge:
    """Canonical (sorted) form of the edge between ``u`` and ``v``."""
    return (u, v) if u <= v else (v, u)


def path_edges(path: Sequence) -> list[tuple]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


class Graph:
    """Provider contract; subclasses override what they support."""

    finite = False
    base_vertex: Vertex = None

    def neighbors(self, v) -> tuple:
        raise NotImplementedError

    def has_vertex(self, v) -> bool:
        return True

    def adjacent(self, u, v) -> bool:
        return v in self.neighbors(u)

    def hyperplane_id(self, u, v):
        raise NotImplementedError(f"{type(self).__name__} does not declare hyperplane ids")

    def hyperplane_edge(self, J) -> Edge:
        raise NotImplementedError

    def hyperplane_side(self, J, v) -> bool:
        raise NotImplementedError

    def hyperplanes_transverse(self, J1, J2):
        """Native transversality test, or ``None`` when unknown."""
        return None

    def native_distance(self, u, v):
        """Closed-form graph distance, or ``None`` when the provider has none."""
        return None

    def parse_vertex(self, text: str):
        raise NotImplementedError

    def format_vertex(self, v) -> str:
        return str(v)

    def _check_edge(self, u, v):
        if not self.adjacent(u, v):
            raise ValueError(f"{self.format_vertex(u)} and {self.format_vertex(v)} are not adjacent")


class ExplicitGraph(Graph):
    """A finite, simple, connected graph.

    Construction is strict: loops, duplicate edges, edges on undeclared
    vertices and disconnected graphs are rejected.
    """

    finite = True

    def __init__(self, vertices: Iterable, edges: Iterable, *, require_connected: bool = True):
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise GraphFormatError("duplicate vertex")
        if not verts:
            raise GraphFormatError("graph has no vertices")
        adj: dict = {v: set() for v in verts}
        seen = set()
        for e in edges:
            u, v = e
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise GraphFormatError(f"edge {e!r} uses undeclared vertex {missing!r}")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u!r}")
            key = edge(u, v)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key!r}")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.vertices = tuple(sorted(verts))
        self.edges = tuple(sorted(seen))
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self.base_vertex = self.vertices[0]
        # memo for derived data (distances, hyperplane classes, median report)
        self._cache: dict = {}
        if require_connected and len(_bfs(self, self.base_vertex)) != len(self.vertices):
            raise GraphFormatError("graph is not connected")

    def __repr__(self):
        return f"ExplicitGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, ExplicitGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def neighbors(self, v) -> tuple:
        try:
            return self._adj[v]
        except KeyError:
            raise VertexNotFound(repr(v)) from None

    def has_vertex(self, v) -> bool:
        return v in self._adj

    def subgraph(self, vertices: Iterable, *, require_connected: bool = True) -> "ExplicitGraph":
        vs = set(vertices)
        es = [e for e in self.edges if e[0] in vs and e[1] in vs]
        return ExplicitGraph(vs, es, require_connected=require_connected)

    def distances(self) -> dict:
        """All-pairs distances, computed once."""
        if "dist" not in self._cache:
            self._cache["dist"] = {v: _bfs(self, v) for v in self.vertices}
        return self._cache["dist"]

    # Hyperplane data is computed by the hyperplanes module on demand.
    def hyperplane_id(self, u, v):
        from .hyperplanes import hyperplane_classes

        try:
            return hyperplane_classes(self)[edge(u, v)]
        except KeyError:
            raise ValueError(f"{u!r} and {v!r} are not adjacent") from None

    def hyperplane_edge(self, J) -> Edge:
        return J

    def hyperplane_side(self, J, v) -> bool:
        from .hyperplanes import halfspaces

        return v in halfspaces(self, J)[1]

    def parse_vertex(self, text: str):
        text = text.strip()
        if text in self._adj:
            return text
        for v in self.vertices:
            if self.format_vertex(v) == text:
                return v
        raise VertexNotFound(text)

    def format_vertex(self, v) -> str:
        if isinstance(v, tuple):
            return "(" + ",".join(self.format_vertex(x) for x in v) + ")"
        return str(v)


class Lattice(Graph):
    """The integer lattice Z^n; vertices are n-tuples of ints.

    The hyperplane between ``p`` and ``p + e_i`` is ``(i, p[i])``.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.base_vertex = (0,) * dim

    def __repr__(self):
        return f"Lattice({self.dim})"

    def has_vertex(self, v) -> bool:
        return isinstance(v, tuple) and len(v) == self.dim and all(isinstance(x, int) for x in v)

    def neighbors(self, v) -> tuple:
        out = []
        for i in range(self.dim):
            for step in (-1, 1):
                w = list(v)
                w[i] += step
                out.append(tuple(w))
        return tuple(sorted(out))

    def adjacent(self, u, v) -> bool:
        return sum(abs(a - b) for a, b in zip(u, v)) == 1

    def hyperplane_id(self, u, v):
        self._check_edge(u, v)
        for i, (a, b) in enumerate(zip(u, v)):
            if a != b:
                return (i, min(a, b))

    def hyperplane_edge(self, J) -> Edge:
        i, c = J
        lo = [0] * self.dim
        hi = [0] * self.dim
        lo[i], hi[i] = c, c + 1
        return (tuple(lo), tuple(hi))

    def hyperplane_side(self, J, v) -> bool:
        i, c = J
        return v[i] > c

    def hyperplanes_transverse(self, J1, J2):
        return J1[0] != J2[0]

    def native_distance(self, u, v):
        return sum(abs(a - b) for a, b in zip(u, v))

    def parse_vertex(self, text: str):
        body = text.strip().strip("()")
        try:
            v = tuple(int(x) for x in body.split(",")) if body else ()
        except ValueError:
            raise GraphFormatError(f"bad lattice vertex {text!r}") from None
        if len(v) != self.dim:
            raise GraphFormatError(f"lattice vertex {text!r} must have {self.dim} coordinates")
        return v

    def format_vertex(self, v) -> str:
        return "(" + ",".join(str(x) for x in v) + ")"


def free_reduce(word: Iterable[tuple]) -> tuple:
    """Cancel adjacent ``(g, s)(g, -s)`` pairs."""
    out: list = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def format_letter(letter) -> str:
    g, s = letter
    return g if s == 1 else f"{g}^-1"


def parse_letter(text: str) -> tuple:
    if text.endswith("^-1"):
        name, sign = text[:-3], -1
    elif text.endswith("^1"):
        name, sign = text[:-2], 1
    else:
        name, sign = text, 1
    if not name or "^" in name:
        raise GraphFormatError(f"bad letter {text!r}")
    return (name, sign)


class FreeGroupTree(Graph):
    """Cayley tree of a free group, edges ``w -- w*s``.

    Vertices are freely reduced words. The hyperplane of an edge is named
    by its endpoint farther from the identity.
    """

    def __init__(self, rank_or_names=2):
        if isinstance(rank_or_names, int):
            names = [chr(ord("a") + i) for i in range(rank_or_names)]
        else:
            names = list(rank_or_names)
        if not names:
            raise ValueError("free group needs at least one generator")
        self.generators = tuple(sorted(names))
        self._letters = [(g, s) for g in self.generators for s in (1, -1)]
        self.base_vertex = ()

    def __repr__(self):
        return f"FreeGroupTree({list(self.generators)})"

    def has_vertex(self, v) -> bool:
        return isinstance(v, tuple) and free_reduce(v) == v and all(g in self.generators for g, _ in v)

    def neighbors(self, v) -> tuple:
        if not v:
            return tuple(sorted((x,) for x in self._letters))
        g, s = v[-1]
        return tuple(sorted([v[:-1]] + [v + (x,) for x in self._letters if x != (g, -s)]))

    def adjacent(self, u, v) -> bool:
        if len(u) > len(v):
            u, v = v, u
        return len(v) == len(u) + 1 and v[:-1] == u

    def hyperplane_id(self, u, v):
        self._check_edge(u, v)
        return u if len(u) > len(v) else v

    def hyperplane_edge(self, J) -> Edge:
        return (J[:-1], J)

    def hyperplane_side(self, J, v) -> bool:
        return v[: len(J)] == J

    def hyperplanes_transverse(self, J1, J2):
        return False

    def native_distance(self, u, v):
        k = 0
        while k < len(u) and k < len(v) and u[k] == v[k]:
            k += 1
        return len(u) + len(v) - 2 * k

    def parse_vertex(self, text: str):
        text = text.strip()
        if text in ("", "e", "1"):
            return ()
        parts = [p for p in text.replace(" ", ".").split(".") if p]
        word = tuple(parse_letter(p) for p in parts)
        for g, _ in word:
            if g not in self.generators:
                raise GraphFormatError(f"unknown generator {g!r}")
        return free_reduce(word)

    def format_vertex(self, v) -> str:
        return ".".join(format_letter(x) for x in v) if v else "e"


class SubsetCube(Graph):
    """Finite subsets of a label universe, adjacent when they differ by one label.

    Vertices are sorted tuples of labels. The hyperplane of an edge is the
    label being toggled; its base-positive side is "label present".
    """

    def __init__(self, labels: Iterable):
        self.labels = tuple(sorted(set(labels)))
        if not self.labels:
            raise ValueError("label universe is empty")
        self._labelset = frozenset(self.labels)
        self.base_vertex = ()
        self.finite = True

    def __repr__(self):
        return f"SubsetCube({list(self.labels)})"

    def has_vertex(self, v) -> bool:
        return isinstance(v, tuple) and tuple(sorted(set(v))) == v and set(v) <= self._labelset

    def neighbors(self, v) -> tuple:
        present = set(v)
        out = []
        for label in self.labels:
            out.append(tuple(sorted(present ^ {label})))
        return tuple(sorted(out))

    def adjacent(self, u, v) -> bool:
        return len(set(u) ^ set(v)) == 1

    def hyperplane_id(self, u, v):
        diff = set(u) ^ set(v)
        if len(diff) != 1:
            raise ValueError(f"{u!r} and {v!r} are not adjacent")
        return diff.pop()

    def hyperplane_edge(self, J) -> Edge:
        return ((), (J,))

    def hyperplane_side(self, J, v) -> bool:
        return J in v

    def hyperplanes_transverse(self, J1, J2):
        return J1 != J2

    def native_distance(self, u, v):
        return len(set(u) ^ set(v))

    def parse_vertex(self, text: str):
        body = text.strip().strip("{}").strip()
        labels = [x.strip() for x in body.split(",") if x.strip()] if body else []
        for x in labels:
            if x not in self._labelset:
                raise GraphFormatError(f"unknown label {x!r}")
        return tuple(sorted(set(labels)))

    def format_vertex(self, v) -> str:
        return "{" + ",".join(str(x) for x in v) + "}"


class ProductGraph(Graph):
    """Cartesian product of two graphs; vertices are pairs.

    Hyperplanes are ``(0, J)`` for the first factor and ``(1, J)`` for the
    second; hyperplanes from different factors are always transverse.
    """

    def __init__(self, first: Graph, second: Graph):
        self.factors = (first, second)
        self.base_vertex = (first.base_vertex, second.base_vertex)
        self.finite = first.finite and second.finite

    def __repr__(self):
        return f"ProductGraph({self.factors[0]!r}, {self.factors[1]!r})"

    def has_vertex(self, v) -> bool:
        return len(v) == 2 and self.factors[0].has_vertex(v[0]) and self.factors[1].has_vertex(v[1])

    def neighbors(self, v) -> tuple:
        a, b = v
        out = [(n, b) for n in self.factors[0].neighbors(a)]
        out += [(a, n) for n in self.factors[1].neighbors(b)]
        return tuple(sorted(out))

    def adjacent(self, u, v) -> bool:
        if u[0] == v[0]:
            return self.factors[1].adjacent(u[1], v[1])
        if u[1] == v[1]:
            return self.factors[0].adjacent(u[0], v[0])
        return False

    def hyperplane_id(self, u, v):
        self._check_edge(u, v)
        if u[1] == v[1]:
            return (0, self.factors[0].hyperplane_id(u[0], v[0]))
        return (1, self.factors[1].hyperplane_id(u[1], v[1]))

    def hyperplane_edge(self, J) -> Edge:
        which, inner = J
        a, b = self.factors[which].hyperplane_edge(inner)
        if which == 0:
            rest = self.factors[1].base_vertex
            return ((a, rest), (b, rest))
        rest = self.factors[0].base_vertex
        return ((rest, a), (rest, b))

    def hyperplane_side(self, J, v) -> bool:
        which, inner = J
        return self.factors[which].hyperplane_side(inner, v[which])

    def hyperplanes_transverse(self, J1, J2):
        if J1[0] != J2[0]:
            return True
        return self.factors[J1[0]].hyperplanes_transverse(J1[1], J2[1])

    def native_distance(self, u, v):
        d0 = self.factors[0].native_distance(u[0], v[0])
        d1 = self.factors[1].native_distance(u[1], v[1])
        return None if d0 is None or d1 is None else d0 + d1

    def parse_vertex(self, text: str):
        left, sep, right = text.partition("|")
        if not sep:
            raise GraphFormatError(f"product vertex {text!r} must look like 'a|b'")
        return (self.factors[0].parse_vertex(left), self.factors[1].parse_vertex(right))

    def format_vertex(self, v) -> str:
        return f"{self.factors[0].format_vertex(v[0])}|{self.factors[1].format_vertex(v[1])}"


def _bfs(g: Graph, source, radius: int | None = None, target=None) -> dict:
    """Distances from ``source``; stops early once ``target`` is labelled."""
    dist = {source: 0}
    if source == target:
        return dist
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if radius is not None and du >= radius:
            continue
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = du + 1
                if w == target:
                    return dist
                queue.append(w)
    return dist


def _require(g: Graph, *vertices):
    for v in vertices:
        if not g.has_vertex(v):
            raise VertexNotFound(repr(v))


def _cap(g: Graph, radius_cap):
    if radius_cap is None and not isinstance(g, ExplicitGraph):
        raise ValueError("radius_cap is required for lazily generated graphs")
    return radius_cap


def bfs_distance(g: Graph, x, y, radius_cap: int | None = None) -> int:
    """Graph distance d(x, y).

    ``radius_cap`` is mandatory for providers; :class:`CapExceeded` is raised
    when ``y`` is farther than the cap.
    """
    _require(g, x, y)
    if isinstance(g, ExplicitGraph) and "dist" in g._cache:
        d = g._cache["dist"][x].get(y)
        if d is None:
            raise VertexNotFound(repr(y))
        if radius_cap is not None and d > radius_cap:
            raise CapExceeded(f"d > {radius_cap}")
        return d
    d = g.native_distance(x, y)
    if d is not None:
        if radius_cap is not None and d > radius_cap:
            raise CapExceeded(f"{g.format_vertex(y)} not within distance {radius_cap} of {g.format_vertex(x)}")
        return d
    dist = _bfs(g, x, _cap(g, radius_cap), target=y)
    if y not in dist:
        if isinstance(g, ExplicitGraph) and radius_cap is None:
            raise VertexNotFound(repr(y))
        raise CapExceeded(f"{g.format_vertex(y)} not within distance {radius_cap} of {g.format_vertex(x)}")
    return dist[y]


def ball(g: Graph, center, radius: int) -> ExplicitGraph:
    """Induced subgraph on the vertices within ``radius`` of ``center``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    _require(g, center)
    dist = _bfs(g, center, radius)
    inside = set(dist)
    es = set()
    for u in inside:
        for w in g.neighbors(u):
            if w in inside:
                es.add(edge(u, w))
    return ExplicitGraph(inside, es)


def shortest_path(g: Graph, x, y, radius_cap: int | None = None) -> Path:
    """The lexicographically least geodesic from ``x`` to ``y``.

    Distances to ``y`` are computed by one BFS; the walk from ``x`` then
    always steps to the smallest neighbour one unit closer to ``y``.
    """
    _require(g, x, y)
    if g.native_distance(x, y) is not None:
        d = bfs_distance(g, x, y, radius_cap)
        out = [x]
        for _ in range(d):
            out.append(next(w for w in g.neighbors(out[-1]) if g.native_distance(w, y) == d - len(out)))
        return tuple(out)
    if isinstance(g, ExplicitGraph) and radius_cap is None:
        to_y = g.distances()[y]
    else:
        to_y = _bfs(g, y, _cap(g, radius_cap), target=x)
        if x not in to_y:
            raise CapExceeded(f"{g.format_vertex(x)} not within distance {radius_cap} of {g.format_vertex(y)}")
    out = [x]
    cur = x
    while cur != y:
        want = to_y[cur] - 1
        cur = next(w for w in g.neighbors(cur) if to_y.get(w) == want)
        out.append(cur)
    return tuple(out)


def is_path(g: Graph, p: Sequence) -> bool:
    if not p:
        return False
    return all(g.has_vertex(v) for v in p) and all(g.adjacent(u, v) for u, v in path_edges(p))


def explicit_product(first: ExplicitGraph, second: ExplicitGraph) -> ExplicitGraph:
    """Materialize the Cartesian product of two finite graphs."""
    verts = [(a, b) for a in first.vertices for b in second.vertices]
    es = [((u, b), (v, b)) for (u, v) in first.edges for b in second.vertices]
    es += [((a, u), (a, v)) for a in first.vertices for (u, v) in second.edges]
    return ExplicitGraph(verts, es)


# Small fixture constructors used by tests, demos and the CLI.

def path_graph(n: int) -> ExplicitGraph:
    return ExplicitGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> ExplicitGraph:
    names = [f"v{i}" for i in range(n)]
    return ExplicitGraph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> ExplicitGraph:
    names = [f"v{i}" for i in range(n)]
    return ExplicitGraph(names, [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> ExplicitGraph:
    left = [f"a{i}" for i in range(m)]
    right = [f"b{j}" for j in range(n)]
    return ExplicitGraph(left + right, [(a, b) for a in left for b in right])


def grid_graph(rows: int, cols: int) -> ExplicitGraph:
    verts = [(i, j) for i in range(rows) for j in range(cols)]
    es = [((i, j), (i + 1, j)) for i in range(rows - 1) for j in range(cols)]
    es += [((i, j), (i, j + 1)) for i in range(rows) for j in range(cols - 1)]
    return ExplicitGraph(verts, es)


def hypercube_graph(n: int) -> ExplicitGraph:
    """Q_n on bit strings such as ``"011"``."""
    verts = [format(i, f"0{n}b") for i in range(2 ** n)]
    es = []
    for v in verts:
        for k in range(n):
            if v[k] == "0":
                es.append((v, v[:k] + "1" + v[k + 1:]))
    return ExplicitGraph(verts, es)


def random_tree(n: int, rng) -> ExplicitGraph:
    """Uniform random recursive tree on ``t0 .. t{n-1}``."""
    names = [f"t{i:02d}" for i in range(n)]
    es = [(names[int(rng.integers(0, i))], names[i]) for i in range(1, n)]
    return ExplicitGraph(names, es)

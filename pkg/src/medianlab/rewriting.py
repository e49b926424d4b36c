"""Backtrack and 4-cycle-flip moves on paths, and the constructive
normalization that joins any two paths with the same endpoints.

Paths are tuples of vertices. Indices in moves refer to vertex positions
in the path the move is applied to.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EndpointMismatch, IllegalMove, MedianLabError, NotGeodesic
from .graphs import Graph, is_path, shortest_path
from .hyperplanes import crossed_hyperplanes, is_geodesic_by_crossings
from .median import median


@dataclass(frozen=True)
class RemoveBacktrack:
    """Delete ``x_i, x_{i+1}`` from ``... x_{i-1}, x_i, x_{i+1} = x_{i-1} ...``."""

    index: int


@dataclass(frozen=True)
class InsertBacktrack:
    """Turn ``... x_i ...`` into ``... x_i, vertex, x_i ...``."""

    index: int
    vertex: object


@dataclass(frozen=True)
class Flip:
    """Replace ``x_i`` by the fourth vertex of the 4-cycle ``x_{i-1}, x_i, x_{i+1}``."""

    index: int
    vertex: object


RewriteMove = RemoveBacktrack | InsertBacktrack | Flip


@dataclass(frozen=True)
class RewriteTrace:
    start: tuple
    moves: tuple
    end: tuple

    def __len__(self):
        return len(self.moves)

    def replay(self, g: Graph) -> list[tuple]:
        """All intermediate paths, ``start`` first; checks the claimed end."""
        paths = [self.start]
        for m in self.moves:
            paths.append(apply_move(g, paths[-1], m))
        if paths[-1] != self.end:
            raise MedianLabError("trace replay does not reproduce its end path")
        return paths

    def then(self, other: "RewriteTrace") -> "RewriteTrace":
        if other.start != self.end:
            raise EndpointMismatch("traces do not compose")
        return RewriteTrace(self.start, self.moves + other.moves, other.end)


def _flip_legal(g: Graph, prev, cur, nxt, new) -> str | None:
    if prev == nxt:
        return "x_{i-1} = x_{i+1}, no 4-cycle through a backtrack"
    if new == cur:
        return "new vertex equals the old one"
    for a, b in ((prev, new), (new, nxt)):
        if not g.adjacent(a, b):
            return f"{g.format_vertex(a)} and {g.format_vertex(b)} are not adjacent"
    if g.adjacent(prev, nxt) or g.adjacent(cur, new):
        return "4-cycle is not induced"
    return None


def apply_move(g: Graph, p: tuple, m) -> tuple:
    """Apply one move; raises :class:`IllegalMove` naming the failed condition."""
    p = tuple(p)
    i = m.index
    if isinstance(m, RemoveBacktrack):
        if not 1 <= i <= len(p) - 2:
            raise IllegalMove(f"remove-backtrack index {i} out of range")
        if p[i - 1] != p[i + 1]:
            raise IllegalMove(f"no backtrack at {i}: x_{i - 1} != x_{i + 1}")
        return p[:i] + p[i + 2:]
    if isinstance(m, InsertBacktrack):
        if not 0 <= i <= len(p) - 1:
            raise IllegalMove(f"insert-backtrack index {i} out of range")
        if not g.adjacent(p[i], m.vertex):
            raise IllegalMove(f"{g.format_vertex(m.vertex)} is not adjacent to x_{i}")
        return p[: i + 1] + (m.vertex, p[i]) + p[i + 1:]
    if isinstance(m, Flip):
        if not 1 <= i <= len(p) - 2:
            raise IllegalMove(f"flip index {i} out of range")
        why = _flip_legal(g, p[i - 1], p[i], p[i + 1], m.vertex)
        if why:
            raise IllegalMove(f"flip at {i}: {why}")
        return p[:i] + (m.vertex,) + p[i + 1:]
    raise TypeError(f"not a move: {m!r}")


def inverse_move(before: tuple, m):
    """The move undoing ``m``, given the path ``m`` was applied to."""
    if isinstance(m, RemoveBacktrack):
        return InsertBacktrack(m.index - 1, before[m.index])
    if isinstance(m, InsertBacktrack):
        return RemoveBacktrack(m.index + 1)
    return Flip(m.index, before[m.index])


def invert_trace(g: Graph, trace: RewriteTrace) -> RewriteTrace:
    paths = trace.replay(g)
    moves = tuple(inverse_move(paths[k], m) for k, m in reversed(list(enumerate(trace.moves))))
    return RewriteTrace(trace.end, moves, trace.start)


def _across(g: Graph, v, J):
    """The unique neighbour of ``v`` on the other side of ``J``."""
    hits = [w for w in g.neighbors(v) if g.hyperplane_id(v, w) == J]
    if len(hits) != 1:
        raise MedianLabError(f"{g.format_vertex(v)} has {len(hits)} neighbours across {J!r}")
    return hits[0]


def _first_double_crossing(hs: list):
    """Indices ``(i, j)`` of the first closing pair of equal crossings.

    The first pair to close is innermost (nothing between is crossed twice)
    and, among innermost pairs, has the smallest first crossing.
    """
    last = {}
    for j, J in enumerate(hs):
        if J in last:
            return last[J], j
        last[J] = j
    return None


def normalize_to_geodesic(g: Graph, p, radius_cap: int | None = None) -> RewriteTrace:
    """Shorten ``p`` to a geodesic with flips and backtrack removals.

    Each round picks a hyperplane J crossed twice with no doubly crossed
    hyperplane in between. The stretch between the two J-edges is a
    geodesic hugging J; it is pushed across J one flip at a time, which
    leaves a single backtrack to delete. Every round shortens the path
    by two. ``radius_cap`` is accepted for signature parity only: the
    procedure never looks beyond neighbours of the current path.
    """
    start = tuple(p)
    if not is_path(g, start):
        raise IllegalMove("input is not a path")
    cur = start
    moves = []
    while True:
        hs = crossed_hyperplanes(g, cur)
        pair = _first_double_crossing(hs)
        if pair is None:
            break
        i, j = pair
        J = hs[i]
        # edges i and j cross J; vertices i+1 .. j lie on the far side
        for t in range(i + 1, j):
            mirror = _across(g, cur[t + 1], J)
            assert cur[t - 1] == _across(g, cur[t], J)
            m = Flip(t, mirror)
            cur = apply_move(g, cur, m)
            moves.append(m)
        m = RemoveBacktrack(j)
        cur = apply_move(g, cur, m)
        moves.append(m)
    return RewriteTrace(start, tuple(moves), cur)


def connect_geodesics(g: Graph, alpha, zeta, radius_cap: int | None = None) -> RewriteTrace:
    """Flip moves turning geodesic ``alpha`` into geodesic ``zeta``.

    Walks both paths from the shared start. Where they first split into
    neighbours ``a`` and ``b``, the median of ``(end, a, b)`` closes a
    4-cycle with the split vertex: the tail from ``a`` is first rebuilt to
    pass through that median, one flip switches ``a`` for ``b``, and the
    walk continues along ``zeta``.
    """
    alpha, zeta = tuple(alpha), tuple(zeta)
    if alpha[0] != zeta[0] or alpha[-1] != zeta[-1]:
        raise EndpointMismatch("paths must share endpoints")
    for name, q in (("alpha", alpha), ("zeta", zeta)):
        if not is_path(g, q) or not is_geodesic_by_crossings(g, q):
            raise NotGeodesic(f"{name} is not a geodesic")
    if len(alpha) != len(zeta):
        raise NotGeodesic("geodesics with equal endpoints must have equal length")
    cap = len(alpha) + 1 if radius_cap is None else radius_cap
    cur = list(alpha)
    moves: list = []

    def rebuild(k: int, target: tuple):
        # make cur[k:] equal target, where cur[k] == target[0]
        while tuple(cur[k:]) != target:
            a, b = cur[k + 1], target[1]
            if a != b:
                y = target[-1]
                m = median(g, y, a, b, cap)
                rebuild(k + 1, (a,) + shortest_path(g, m, y, cap))
                move = Flip(k + 1, b)
                cur[k:k + 3] = apply_move(g, tuple(cur[k:k + 3]), Flip(1, b))
                moves.append(move)
            k += 1
            target = target[1:]

    rebuild(0, zeta)
    return RewriteTrace(alpha, tuple(moves), tuple(cur))


def transform_path(g: Graph, alpha, beta, radius_cap: int | None = None) -> RewriteTrace:
    """A complete move sequence from ``alpha`` to ``beta`` (same endpoints)."""
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha[0] != beta[0] or alpha[-1] != beta[-1]:
        raise EndpointMismatch("paths must share endpoints")
    a = normalize_to_geodesic(g, alpha, radius_cap)
    b = normalize_to_geodesic(g, beta, radius_cap)
    c = connect_geodesics(g, a.end, b.end, radius_cap)
    return a.then(c).then(invert_trace(g, b))


def legal_moves(g: Graph, p: tuple) -> list:
    """Every flip and backtrack move applicable to ``p``, in a fixed order."""
    out = []
    for i in range(1, len(p) - 1):
        if p[i - 1] == p[i + 1]:
            out.append(RemoveBacktrack(i))
        else:
            common = set(g.neighbors(p[i - 1])) & set(g.neighbors(p[i + 1]))
            for x in sorted(common - {p[i]}):
                if _flip_legal(g, p[i - 1], p[i], p[i + 1], x) is None:
                    out.append(Flip(i, x))
    return out


def perturb(g: Graph, p, rng, n_moves: int, max_length: int | None = None) -> RewriteTrace:
    """Apply ``n_moves`` random legal moves, inserting backtracks now and then.

    ``rng`` is a ``numpy.random.Generator``.
    """
    start = cur = tuple(p)
    moves = []
    for _ in range(n_moves):
        options = legal_moves(g, cur)
        grow = max_length is None or len(cur) + 1 < max_length
        if grow and (not options or rng.random() < 0.4):
            i = int(rng.integers(0, len(cur)))
            nbrs = g.neighbors(cur[i])
            m = InsertBacktrack(i, nbrs[int(rng.integers(0, len(nbrs)))])
        elif options:
            m = options[int(rng.integers(0, len(options)))]
        else:
            break
        cur = apply_move(g, cur, m)
        moves.append(m)
    return RewriteTrace(start, tuple(moves), cur)

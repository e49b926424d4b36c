"""Group actions on median graphs and the induced homomorphism to a RAAG.

A group is given by named generators acting on a host graph. Hyperplanes
met within a ball around the basepoint are sorted into orbits; each orbit
becomes a generator of the right-angled Artin group over the orbit graph
(orbits adjacent when they hold transverse hyperplanes). A group element,
written as a word in the action's generators, is sent to the label of
any path from the basepoint to its image.

Everything is explored within a stated radius; results are certified only
for hyperplanes that meet that ball.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import CapExceeded, EndpointMismatch, InversionDetected, NotAutomorphism, UnknownGenerator
from .graphs import ExplicitGraph, Graph, _bfs, edge, free_reduce, is_path, path_edges, shortest_path
from .hyperplanes import crossing_sign, four_cycles
from .raag import DefinitionGraph, conjugate, format_word, inverse, normal_form
from .rewriting import perturb


@dataclass(frozen=True)
class GraphMap:
    """An invertible vertex map with a printable rule."""

    rule: str
    forward: Callable = field(repr=False, compare=False)
    backward: Callable = field(repr=False, compare=False)

    def __call__(self, v):
        return self.forward(v)

    def inverse(self) -> "GraphMap":
        return GraphMap(f"({self.rule})^-1", self.backward, self.forward)


def translate(vector) -> GraphMap:
    vec = tuple(vector)
    return GraphMap(
        "translate:(" + ",".join(map(str, vec)) + ")",
        lambda v: tuple(a + b for a, b in zip(v, vec)),
        lambda v: tuple(a - b for a, b in zip(v, vec)),
    )


def left_multiply(letter) -> GraphMap:
    g, s = letter

    def times(e):
        def f(v):
            # v is reduced, so only its first letter can cancel
            if v and v[0] == (g, -e):
                return v[1:]
            return ((g, e),) + v
        return f

    return GraphMap(f"left-multiply:{g}" + ("" if s == 1 else "^-1"), times(s), times(-s))


def toggle(label) -> GraphMap:
    def flip(v):
        return tuple(sorted(set(v) ^ {label}))

    return GraphMap(f"toggle:{label}", flip, flip)


def permutation(mapping: dict) -> GraphMap:
    fwd = dict(mapping)
    bwd = {v: k for k, v in fwd.items()}
    if len(bwd) != len(fwd) or set(bwd) != set(fwd):
        raise NotAutomorphism("permutation table is not a bijection of its domain")
    rule = "permutation:{" + ",".join(f"{k}->{fwd[k]}" for k in sorted(fwd)) + "}"
    return GraphMap(rule, fwd.__getitem__, bwd.__getitem__)


class ActionSpec:
    """Named generators acting on ``host``, with a basepoint."""

    def __init__(self, host: Graph, generators: dict, basepoint=None):
        self.host = host
        self.generators = {k: generators[k] for k in sorted(generators)}
        self.basepoint = host.base_vertex if basepoint is None else basepoint
        if not host.has_vertex(self.basepoint):
            raise UnknownGenerator(f"basepoint {self.basepoint!r} is not a vertex")

    def __repr__(self):
        return f"ActionSpec({self.host!r}, {[g.rule for g in self.generators.values()]})"

    def letters(self) -> list:
        return [(name, s) for name in self.generators for s in (1, -1)]

    def map_of(self, letter) -> GraphMap:
        name, s = letter
        try:
            gm = self.generators[name]
        except KeyError:
            raise UnknownGenerator(repr(name)) from None
        return gm if s == 1 else gm.inverse()

    def act(self, word, v):
        """``g . v`` for ``g = word[0] word[1] ...`` (rightmost letter acts first)."""
        for letter in reversed(tuple(word)):
            v = self.map_of(letter)(v)
        return v


@dataclass(frozen=True)
class InversionCheck:
    ok: bool
    radius: int | None
    witness_word: tuple | None = None
    hyperplane: object = None

    def __bool__(self):
        return self.ok


def check_automorphisms(a: ActionSpec, radius: int | None):
    """Every generator maps the ball's edges to edges and inverts correctly."""
    g = a.host
    verts = list(_bfs(g, a.basepoint, radius))
    for name, gm in a.generators.items():
        for m in (gm, gm.inverse()):
            for u in verts:
                try:
                    mu = m(u)
                    back = m.inverse()(mu)
                except (KeyError, TypeError) as exc:
                    raise NotAutomorphism(f"{name} undefined at {g.format_vertex(u)}") from exc
                if back != u or not g.has_vertex(mu):
                    raise NotAutomorphism(f"{name} is not invertible at {g.format_vertex(u)}")
                for w in g.neighbors(u):
                    if not g.adjacent(mu, m(w)):
                        raise NotAutomorphism(f"{name} breaks edge {g.format_vertex(u)}-{g.format_vertex(w)}")
    if isinstance(g, ExplicitGraph):
        for name, gm in a.generators.items():
            if {gm(v) for v in g.vertices} != set(g.vertices):
                raise NotAutomorphism(f"{name} is not onto")


def _explore(a: ActionSpec, radius: int | None):
    """Propagate orientations over hyperplane orbits inside the ball.

    Returns ``(verts, orbit, rel, conflict)``. ``rel[J]`` relates the
    equivariant orientation of ``J`` to its base orientation; ``conflict``
    is an inversion witness ``(word, hyperplane)`` or ``None``.
    """
    g = a.host
    check_automorphisms(a, radius)
    verts = _bfs(g, a.basepoint, radius)
    hyps = sorted({g.hyperplane_id(u, w) for u in verts for w in g.neighbors(u) if w in verts})
    known = set(hyps)
    orbit: dict = {}
    rel: dict = {}
    word: dict = {}
    conflict = None
    letters = a.letters()
    for rep in hyps:
        if rep in orbit:
            continue
        orbit[rep], rel[rep], word[rep] = rep, 1, ()
        queue = [rep]
        while queue:
            J = queue.pop(0)
            p, q = g.hyperplane_edge(J)
            for letter in letters:
                m = a.map_of(letter)
                mp, mq = m(p), m(q)
                J2 = g.hyperplane_id(mp, mq)
                if J2 not in known:
                    continue
                want = rel[J] * crossing_sign(g, mp, mq)
                if J2 not in orbit:
                    orbit[J2], rel[J2], word[J2] = rep, want, free_reduce((letter,) + word[J])
                    queue.append(J2)
                elif rel[J2] != want and conflict is None:
                    conflict = (free_reduce(inverse(word[J2]) + (letter,) + word[J]), rep)
    return verts, orbit, rel, conflict


def check_no_inversion(a: ActionSpec, radius: int | None = None) -> InversionCheck:
    """Search the ball for an element stabilizing a hyperplane and swapping its sides.

    A passing result only covers hyperplanes meeting the ball of ``radius``
    (the whole graph for explicit hosts with ``radius=None``).
    """
    _, _, _, conflict = _explore(a, radius)
    if conflict:
        return InversionCheck(False, radius, conflict[0], conflict[1])
    return InversionCheck(True, radius)


@dataclass
class OrbitLabeling:
    """Orbit names, equivariant orientation and orbit graph of an action."""

    host: Graph = field(repr=False)
    orbit_of: dict = field(repr=False)
    rel: dict = field(repr=False)
    gamma: DefinitionGraph
    radius: int | None
    representatives: dict = field(default_factory=dict)

    def orbit(self, J) -> str:
        try:
            return self.orbit_of[J]
        except KeyError:
            raise CapExceeded(f"hyperplane {J!r} lies outside the explored radius {self.radius}") from None

    def sign_of(self, u, v) -> int:
        J = self.host.hyperplane_id(u, v)
        self.orbit(J)
        return self.rel[J] * crossing_sign(self.host, u, v)

    def letter(self, u, v) -> tuple:
        J = self.host.hyperplane_id(u, v)
        return (self.orbit(J), self.rel[J] * crossing_sign(self.host, u, v))

    def label(self, path) -> tuple:
        return tuple(self.letter(u, v) for u, v in path_edges(path))


def build_orbit_labeling(a: ActionSpec, radius: int | None = None) -> OrbitLabeling:
    """Name hyperplane orbits, orient them equivariantly and build the orbit graph.

    An orbit containing the hyperplane of an edge ``o -- s.o`` for a
    generator ``s`` is named ``s`` (least such name) and oriented so that
    ``o -> s.o`` crosses it positively. Other orbits are named ``h0, h1,
    ...`` in order of their least hyperplane and keep that hyperplane's base
    orientation.
    """
    g = a.host
    verts, orbit, rel, conflict = _explore(a, radius)
    if conflict:
        raise InversionDetected(
            f"{format_word(conflict[0])} inverts hyperplane {conflict[1]!r}", witness=conflict
        )
    members: dict = {}
    for J, rep in orbit.items():
        members.setdefault(rep, []).append(J)
    names: dict = {}
    shown: dict = {}
    o = a.basepoint
    for s, gm in a.generators.items():
        so = gm(o)
        if so == o or not g.adjacent(o, so):
            continue
        J = g.hyperplane_id(o, so)
        if J not in orbit or orbit[J] in names:
            continue
        rep = orbit[J]
        names[rep] = s
        shown[s] = J
        if rel[J] * crossing_sign(g, o, so) == -1:
            for K in members[rep]:
                rel[K] = -rel[K]
    taken = set(a.generators)
    k = 0
    for rep in sorted(members):
        if rep in names:
            continue
        while f"h{k}" in taken:
            k += 1
        names[rep] = f"h{k}"
        k += 1
    orbit_of = {J: names[rep] for J, rep in orbit.items()}
    commuting = set()
    for u, v, x, w in four_cycles(g, verts):
        p = orbit_of.get(g.hyperplane_id(u, v))
        q = orbit_of.get(g.hyperplane_id(u, w))
        if p is not None and q is not None and p != q:
            commuting.add(tuple(sorted((p, q))))
    gamma = DefinitionGraph(names.values(), sorted(commuting))
    reps = {names[rep]: shown.get(names[rep], rep) for rep in members}
    return OrbitLabeling(g, orbit_of, rel, gamma, radius, reps)


def _check_word(a: ActionSpec, word) -> tuple:
    word = tuple(word)
    for name, _ in word:
        if name not in a.generators:
            raise UnknownGenerator(repr(name))
    return word


def theta(a: ActionSpec, labeling: OrbitLabeling, word, radius_cap: int | None = None,
          path=None, basepoint=None) -> tuple:
    """RAAG normal form of the label of a path from ``o`` to ``g.o``.

    Without ``path`` the lexicographically least geodesic is used. Passing
    ``basepoint`` evaluates the homomorphism for that basepoint instead.
    """
    word = _check_word(a, word)
    o = a.basepoint if basepoint is None else basepoint
    target = a.act(word, o)
    if path is None:
        path = shortest_path(a.host, o, target, radius_cap)
    elif path[0] != o or path[-1] != target or not is_path(a.host, path):
        raise EndpointMismatch("path must run from the basepoint to its image")
    return normal_form(labeling.gamma, labeling.label(path))


def orbit_path(a: ActionSpec, word, radius_cap: int | None = None) -> tuple:
    """The path ``[o, s1.o] + s1[o, s2.o] + s1 s2[o, s3.o] + ...``."""
    word = _check_word(a, word)
    o = a.basepoint
    out = [o]
    prefix: tuple = ()
    for letter in word:
        step = shortest_path(a.host, o, a.act((letter,), o), radius_cap)
        out.extend(a.act(prefix, v) for v in step[1:])
        prefix = prefix + (letter,)
    return tuple(out)


@dataclass
class CheckReport:
    name: str
    radius: int | None
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def verify_homomorphism(a: ActionSpec, labeling: OrbitLabeling, samples, radius_cap: int | None = None) -> CheckReport:
    """Check ``theta(gh) = theta(g) theta(h)`` on each sampled pair."""
    report = CheckReport("homomorphism", labeling.radius)
    gamma = labeling.gamma
    for gw, hw in samples:
        lhs = theta(a, labeling, tuple(gw) + tuple(hw), radius_cap)
        rhs = normal_form(gamma, theta(a, labeling, gw, radius_cap) + theta(a, labeling, hw, radius_cap))
        report.checked += 1
        if lhs != rhs:
            report.failures.append((tuple(gw), tuple(hw), lhs, rhs))
    return report


def basepoint_conjugation_check(a: ActionSpec, labeling: OrbitLabeling, o_prime, samples,
                                radius_cap: int | None = None) -> CheckReport:
    """Check ``theta'(g) = t theta(g) t^-1`` with ``t`` the label of a path ``o' -> o``."""
    report = CheckReport("basepoint", labeling.radius)
    t = labeling.label(shortest_path(a.host, o_prime, a.basepoint, radius_cap))
    for gw in samples:
        moved = theta(a, labeling, gw, radius_cap, basepoint=o_prime)
        expected = conjugate(labeling.gamma, theta(a, labeling, gw, radius_cap), t)
        report.checked += 1
        if moved != expected:
            report.failures.append((tuple(gw), moved, expected))
    return report


def random_word(rng, letters, max_length: int) -> tuple:
    n = int(rng.integers(0, max_length + 1))
    return tuple(letters[int(rng.integers(0, len(letters)))] for _ in range(n))


def sample_paths(g: Graph, x, y, rng, count: int, radius_cap: int | None = None,
                 moves: int = 6, max_length: int | None = None) -> list:
    """``count`` paths from ``x`` to ``y``: the least geodesic, then random variants.

    Variants detour through a random neighbour of a random geodesic vertex
    and are then shuffled by random flips and backtrack insertions.
    """
    base = shortest_path(g, x, y, radius_cap)
    out = [base]
    for _ in range(count - 1):
        via = base[int(rng.integers(0, len(base)))]
        nbrs = g.neighbors(via)
        r = nbrs[int(rng.integers(0, len(nbrs)))]
        p = shortest_path(g, x, r, radius_cap) + shortest_path(g, r, y, radius_cap)[1:]
        out.append(perturb(g, p, rng, moves, max_length).end)
    return out

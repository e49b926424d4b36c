"""Right-angled Artin groups: reduction, canonical normal form, abelianization.

A word is a tuple of letters ``(generator, sign)`` with ``sign`` in
``{+1, -1}``. Letters are ordered by generator name, with ``g`` before
``g^-1``; the normal form of an element is the lexicographically least
word among all reduced words representing it.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

from .abelian import AbelianVector
from .errors import GraphFormatError, UnknownGenerator
from .graphs import format_letter, parse_letter


class DefinitionGraph:
    """Commutation graph: generators plus a symmetric, irreflexive relation."""

    def __init__(self, generators: Iterable[str], commuting: Iterable = ()):
        self.generators = tuple(sorted(set(generators)))
        gens = set(self.generators)
        adj: dict = {g: set() for g in self.generators}
        for u, v in commuting:
            if u not in gens or v not in gens:
                raise UnknownGenerator(f"{u if u not in gens else v!r}")
            if u == v:
                raise GraphFormatError(f"generator {u!r} cannot commute with itself in the definition graph")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {g: frozenset(ns) for g, ns in adj.items()}
        self._all = frozenset(self.generators)
        self._rank = {(g, s): 2 * i + (0 if s == 1 else 1) for i, g in enumerate(self.generators) for s in (1, -1)}
        # per-letter lookups: (inverse letter, generators commuting with it)
        self._info = {(g, s): ((g, -s), self._adj[g]) for g in self.generators for s in (1, -1)}
        self._coord = {(g, s): (i, s) for i, g in enumerate(self.generators) for s in (1, -1)}
        n = len(self.generators)
        self._edgeless = all(not ns for ns in adj.values())
        self._complete = all(len(ns) == n - 1 for ns in adj.values())

    @classmethod
    def complete(cls, generators):
        gens = sorted(set(generators))
        return cls(gens, [(u, v) for i, u in enumerate(gens) for v in gens[i + 1:]])

    @classmethod
    def edgeless(cls, generators):
        return cls(generators)

    def __repr__(self):
        return f"DefinitionGraph({list(self.generators)}, {self.edges()})"

    def __contains__(self, g):
        return g in self._adj

    def __eq__(self, other):
        return isinstance(other, DefinitionGraph) and self._adj == other._adj

    def __hash__(self):
        return hash(tuple(sorted(self._adj.items())))

    def edges(self) -> list:
        return sorted((u, v) for u in self.generators for v in self._adj[u] if u < v)

    def commutes(self, u, v) -> bool:
        return v in self._adj[u]

    def is_complete(self) -> bool:
        return self._complete

    def extended(self, generators: Iterable[str] = (), commuting: Iterable = ()) -> "DefinitionGraph":
        """A larger definition graph; existing relations are kept as they are."""
        gens = set(self.generators) | set(generators)
        return DefinitionGraph(gens, list(self.edges()) + list(commuting))


def letter_key(letter):
    return (letter[0], 0 if letter[1] == 1 else 1)


def parse_word(text: str) -> tuple:
    """``"a b^-1 c"`` -> ``(("a", 1), ("b", -1), ("c", 1))``; ``"1"`` or ``""`` is empty."""
    parts = text.split()
    if parts == ["1"] or parts == ["e"]:
        return ()
    return tuple(parse_letter(p) for p in parts)


def format_word(word) -> str:
    return " ".join(format_letter(x) for x in word) if word else "1"


def inverse(word) -> tuple:
    return tuple((g, -s) for g, s in reversed(word))


def check_word(gamma: DefinitionGraph, word) -> tuple:
    word = tuple(word)
    for letter in word:
        if letter[0] not in gamma:
            raise UnknownGenerator(repr(letter[0]))
        if letter[1] not in (1, -1):
            raise GraphFormatError(f"bad sign in {letter!r}")
    return word


def reduce_word(gamma: DefinitionGraph, word) -> tuple:
    """Cancel every pair ``g^e ... g^-e`` whose in-between letters commute with ``g``.

    Letters are appended left to right; each new letter cancels against the
    nearest earlier letter it can be shuffled next to, if that one is its
    inverse. Appending to a reduced word keeps it reduced, so one pass
    reaches the fixpoint.
    """
    return tuple(_reduce(gamma, word))


def _bad_letter(adj: dict, letter):
    if not isinstance(letter, tuple) or len(letter) != 2:
        raise GraphFormatError(f"bad letter {letter!r}")
    if letter[0] not in adj:
        raise UnknownGenerator(repr(letter[0]))
    raise GraphFormatError(f"bad sign in {letter!r}")


def _reduce(gamma: DefinitionGraph, word) -> list:
    info = gamma._info
    out: list = []
    append = out.append
    for letter in word:
        try:
            inv, comm = info[letter]
        except (KeyError, TypeError):
            _bad_letter(gamma._adj, letter)
        if not out:
            append(letter)
            continue
        x = out[-1]
        if x == inv:
            out.pop()
            continue
        if x[0] not in comm:
            append(letter)
            continue
        # scan back through letters commuting with g; g itself never commutes with g
        for k in range(len(out) - 2, -1, -1):
            x = out[k]
            if x == inv:
                del out[k]
                break
            if x[0] not in comm:
                append(letter)
                break
        else:
            append(letter)
    return out


def _insert_form(gamma: DefinitionGraph, word) -> tuple:
    """Reduce and sort in one pass, keeping the prefix read so far in normal form.

    Each new letter scans back through the letters it commutes with. Meeting
    its inverse there cancels both, and the rest stays canonical because
    nothing after the removed letter depended on it. Otherwise the letter
    goes to the leftmost slot in that commuting tail where it sorts first,
    which is where the greedy least-letter-first shuffle would emit it.
    """
    info, rank = gamma._info, gamma._rank
    out: list = []
    for letter in word:
        try:
            inv, comm = info[letter]
        except (KeyError, TypeError):
            _bad_letter(gamma._adj, letter)
        r = rank[letter]
        k = slot = len(out)
        while k:
            x = out[k - 1]
            if x == inv:
                del out[k - 1]
                break
            if x[0] not in comm:
                out.insert(slot, letter)
                break
            if r < rank[x]:
                slot = k - 1
            k -= 1
        else:
            out.insert(slot, letter)
    return tuple(out)


def _greedy_shuffle(gamma: DefinitionGraph, rest: list) -> tuple:
    """Lexicographically least commuting shuffle of a reduced word, by definition.

    Repeatedly emits the least letter that commutes past everything before
    it. Quadratic; kept as the reference for :func:`_insert_form`.
    """
    adj, rank = gamma._adj, gamma._rank
    everything = gamma._all
    rest = list(rest)
    out = []
    while len(rest) > 1:
        allowed = everything
        best = 0
        br = 99
        for i, x in enumerate(rest):
            g = x[0]
            if g in allowed:
                r = rank[x]
                if r < br:
                    best, br = i, r
            allowed = allowed & adj[g]
            if not allowed:
                break
        out.append(rest.pop(best))
    out.extend(rest)
    return tuple(out)


def _abelian_counts(gamma: DefinitionGraph, word) -> dict:
    adj = gamma._adj
    counts: dict = {}
    for letter in word:
        g, s = letter
        if g not in adj or (s != 1 and s != -1):
            _bad_letter(adj, letter)
        counts[g] = counts.get(g, 0) + s
    return counts


def normal_form(gamma: DefinitionGraph, word) -> tuple:
    """Reduced, lexicographically least representative of ``word``."""
    if gamma._edgeless:
        # free group: the reduced word is the only reduced spelling
        return tuple(_reduce(gamma, word))
    if gamma._complete:
        # free abelian: the element is its exponent vector
        coord = gamma._coord
        c = [0] * len(gamma.generators)
        for letter in word:
            try:
                i, s = coord[letter]
            except (KeyError, TypeError):
                _bad_letter(gamma._adj, letter)
            c[i] += s
        out: tuple = ()
        for g, n in zip(gamma.generators, c):
            if n:
                out += ((g, 1 if n > 0 else -1),) * abs(n)
        return out
    return _insert_form(gamma, word)


def is_normal_form(gamma: DefinitionGraph, word) -> bool:
    word = tuple(word)
    return normal_form(gamma, word) == word


def is_identity(gamma: DefinitionGraph, word) -> bool:
    word = tuple(word)
    if len(word) % 2:
        # exponent sums of the identity are all zero, so its length is even
        check_word(gamma, word)
        return False
    if gamma._complete:
        return not any(_abelian_counts(gamma, word).values())
    return not _reduce(gamma, word)


def multiply(gamma: DefinitionGraph, a, b) -> tuple:
    return normal_form(gamma, tuple(a) + tuple(b))


def equal(gamma: DefinitionGraph, a, b) -> bool:
    return normal_form(gamma, a) == normal_form(gamma, b)


def conjugate(gamma: DefinitionGraph, word, by) -> tuple:
    """Normal form of ``by * word * by^-1``."""
    by = tuple(by)
    return normal_form(gamma, by + tuple(word) + inverse(by))


def abelianize(gamma: DefinitionGraph, word) -> AbelianVector:
    counts = Counter()
    for g, s in check_word(gamma, word):
        counts[g] += s
    return AbelianVector(counts)

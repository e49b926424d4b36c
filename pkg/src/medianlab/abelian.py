"""Finitely supported integer vectors and integer-span membership."""
from __future__ import annotations

from collections.abc import Mapping


class AbelianVector(Mapping):
    """An element of the free abelian group on hashable, sortable labels.

    Zero coefficients are dropped, so two vectors are equal iff they have
    the same support and coefficients.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients=()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict = {}
        for k, v in items:
            if int(v) != v:
                raise TypeError(f"coefficient of {k!r} is not an integer")
            c[k] = c.get(k, 0) + int(v)
        self._c = {k: c[k] for k in sorted(c) if c[k] != 0}

    def __getitem__(self, k):
        return self._c.get(k, 0)

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __contains__(self, k):
        return k in self._c

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._c == AbelianVector(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        return f"AbelianVector({self._c})"

    def __str__(self):
        if not self._c:
            return "0"
        return " ".join(f"{v:+d}[{k}]" for k, v in self._c.items())

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return AbelianVector(out)

    def __neg__(self):
        return AbelianVector({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-AbelianVector(other))

    def __mul__(self, n: int):
        return AbelianVector({k: n * v for k, v in self._c.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._c

    def support(self) -> tuple:
        return tuple(self._c)


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form (echelon rows spanning the same lattice)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            col += 1
            continue
        # Euclid on column `col` until one row carries the gcd
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(pivot)
        rows = rest
        col += 1
    return basis


def in_integer_span(vectors: list[AbelianVector], target: AbelianVector) -> bool:
    """Whether ``target`` is an integer combination of ``vectors``."""
    target = AbelianVector(target)
    labels = sorted({k for v in vectors for k in v} | set(target))
    if not labels:
        return True
    if any(k not in {k for v in vectors for k in v} for k in target):
        return False
    basis = hermite_rows([[v[k] for k in labels] for v in vectors])
    t = [target[k] for k in labels]
    for row in basis:
        col = next(i for i, a in enumerate(row) if a != 0)
        if t[col] % row[col] != 0:
            return False
        q = t[col] // row[col]
        t = [a - q * b for a, b in zip(t, row)]
    return not any(t)

"""Symbolic divisor-class bookkeeping for birational self-maps.

A formal birational map carries two multisets of divisor-class labels:
the codimension-one exceptional components of the map (``h_classes``) and
of its inverse (``k_classes``). Two hypersurfaces share a label exactly
when they are Cremona equivalent; that fact is input data, never derived.

The class vector of a map is ``sum [K_j] - sum [H_i]``. It can be read off
as the abelianized label of a path in a finite-support cube whose
coordinates are the hyperplanes separating the base vertex from its image:
one coordinate per exceptional component, ``k_classes`` first.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .abelian import AbelianVector, in_integer_span
from .errors import GraphFormatError
from .graphs import SubsetCube, path_edges
from .hyperplanes import crossing_sign
from .raag import DefinitionGraph, abelianize, normal_form


@dataclass(frozen=True)
class FormalBirMap:
    name: str
    h_classes: tuple = ()
    k_classes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "h_classes", tuple(self.h_classes))
        object.__setattr__(self, "k_classes", tuple(self.k_classes))

    @property
    def is_pseudo_regularisable(self) -> bool:
        return not self.h_classes and not self.k_classes

    def inverse(self, name: str | None = None) -> "FormalBirMap":
        if name is None:
            name = self.name[:-3] if self.name.endswith("^-1") else f"{self.name}^-1"
        return FormalBirMap(name, self.k_classes, self.h_classes)


@dataclass(frozen=True)
class CompositionWitness:
    """User-asserted exceptional data of a composite ``f o g``."""

    f: FormalBirMap
    g: FormalBirMap
    composite: FormalBirMap


@dataclass
class WitnessReport:
    witness: CompositionWitness
    expected: AbelianVector
    actual: AbelianVector

    @property
    def discrepancy(self) -> AbelianVector:
        return self.expected - self.actual

    @property
    def ok(self) -> bool:
        return self.discrepancy.is_zero()

    def __bool__(self):
        return self.ok


def phi(f: FormalBirMap) -> AbelianVector:
    return AbelianVector(Counter(f.k_classes)) - AbelianVector(Counter(f.h_classes))


def phi_via_cube_path(f: FormalBirMap) -> tuple[tuple, AbelianVector]:
    """Walk from the empty set to the image vertex and abelianize the label.

    Cube coordinates are slots ``("K", i, class)`` and ``("H", i, class)``.
    The walk adds the K slots, then the H slots. K hyperplanes keep the
    cube's "label present is positive" orientation. H hyperplanes carry the
    opposite one: the base vertex lies on the side where those components
    have been removed.
    """
    slots = [("K", i, c) for i, c in enumerate(f.k_classes)]
    slots += [("H", i, c) for i, c in enumerate(f.h_classes)]
    if not slots:
        return ((),), AbelianVector()
    cube = SubsetCube(slots)
    path = [()]
    for s in slots:
        path.append(tuple(sorted(path[-1] + (s,))))
    word = []
    for u, v in path_edges(path):
        kind, _, cls = cube.hyperplane_id(u, v)
        sign = crossing_sign(cube, u, v) * (1 if kind == "K" else -1)
        word.append((cls, sign))
    gamma = DefinitionGraph.complete({c for _, _, c in slots})
    return tuple(path), abelianize(gamma, normal_form(gamma, word))


def kernel_condition(f: FormalBirMap) -> bool:
    """Whether the H and K classes match up as multisets."""
    matched = Counter(f.h_classes) == Counter(f.k_classes)
    if not matched:
        assert not phi(f).is_zero()
    return matched


def check_witness(w: CompositionWitness) -> WitnessReport:
    return WitnessReport(w, phi(w.f) + phi(w.g), phi(w.composite))


def generation_obstruction(maps, target: FormalBirMap) -> bool:
    """Whether ``phi(target)`` lies in the subgroup generated by the ``phi(m)``.

    ``False`` certifies that ``target`` is not a product of the listed maps
    and their inverses.
    """
    maps = list(maps)
    result = in_integer_span([phi(m) for m in maps], phi(target))
    if all(m.is_pseudo_regularisable for m in maps) and not phi(target).is_zero():
        assert result is False
    return result


@dataclass
class Ledger:
    universe: tuple
    maps: dict
    witnesses: list = field(default_factory=list)

    def __getitem__(self, name) -> FormalBirMap:
        try:
            return self.maps[name]
        except KeyError:
            raise GraphFormatError(f"no map named {name!r} in ledger") from None


def _labels(obj, where: str, universe: set) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise GraphFormatError(f"{where}: expected a list of class labels")
    for x in obj:
        if x not in universe:
            raise GraphFormatError(f"{where}: class {x!r} is not in the universe")
    return tuple(obj)


def parse_ledger(text: str, source: str = "<ledger>") -> Ledger:
    """Strictly parse the JSON ledger format.

    ``{"universe": [...], "maps": [{"name", "H", "K"}], "witnesses": [{"f", "g", "composite"}]}``
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise GraphFormatError(f"{source}: top level must be an object")
    extra = set(data) - {"universe", "maps", "witnesses", "comment"}
    if extra:
        raise GraphFormatError(f"{source}: unknown keys {sorted(extra)}")
    universe = data.get("universe")
    if not isinstance(universe, list) or not all(isinstance(x, str) for x in universe):
        raise GraphFormatError(f"{source}: 'universe' must be a list of strings")
    if len(set(universe)) != len(universe):
        raise GraphFormatError(f"{source}: duplicate class label in universe")
    uset = set(universe)
    maps = {}
    for i, m in enumerate(data.get("maps", [])):
        where = f"{source}: maps[{i}]"
        if not isinstance(m, dict) or set(m) - {"name", "H", "K", "comment"} or "name" not in m:
            raise GraphFormatError(f"{where}: expected {{name, H, K}}")
        name = m["name"]
        if name in maps:
            raise GraphFormatError(f"{where}: duplicate map name {name!r}")
        maps[name] = FormalBirMap(name, _labels(m.get("H", []), f"{where}.H", uset),
                                  _labels(m.get("K", []), f"{where}.K", uset))
    witnesses = []
    for i, w in enumerate(data.get("witnesses", [])):
        where = f"{source}: witnesses[{i}]"
        if not isinstance(w, dict) or set(w) != {"f", "g", "composite"}:
            raise GraphFormatError(f"{where}: expected {{f, g, composite}}")
        for key in ("f", "g", "composite"):
            if w[key] not in maps:
                raise GraphFormatError(f"{where}.{key}: unknown map {w[key]!r}")
        witnesses.append(CompositionWitness(maps[w["f"]], maps[w["g"]], maps[w["composite"]]))
    return Ledger(tuple(universe), maps, witnesses)


def dump_ledger(ledger: Ledger) -> str:
    data = {
        "universe": list(ledger.universe),
        "maps": [{"name": m.name, "H": list(m.h_classes), "K": list(m.k_classes)} for m in ledger.maps.values()],
        "witnesses": [{"f": w.f.name, "g": w.g.name, "composite": w.composite.name} for w in ledger.witnesses],
    }
    return json.dumps(data, indent=2) + "\n"


def load_ledger(path) -> Ledger:
    with open(path, encoding="utf-8") as fh:
        return parse_ledger(fh.read(), str(path))


def example_ledger() -> Ledger:
    """The bundled symbolic dataset."""
    text = resources.files("medianlab").joinpath("data/ledger_example.json").read_text(encoding="utf-8")
    return parse_ledger(text, "ledger_example.json")

import itertools
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from medianlab.abelian import AbelianVector
from medianlab.cremona import (
    CompositionWitness,
    FormalBirMap,
    check_witness,
    dump_ledger,
    example_ledger,
    generation_obstruction,
    kernel_condition,
    load_ledger,
    parse_ledger,
    phi,
    phi_via_cube_path,
)
from medianlab.errors import GraphFormatError
from medianlab.graphs import SubsetCube, is_path
from medianlab.hyperplanes import is_transverse

V = AbelianVector
labels = st.lists(st.sampled_from(["p", "q", "r", "s"]), max_size=4)
maps = st.builds(FormalBirMap, st.just("f"), labels, labels)


def test_phi_examples():
    assert phi(FormalBirMap("f")).is_zero()
    assert phi(FormalBirMap("f", ["h1", "h2"], ["k1"])) == V({"k1": 1, "h1": -1, "h2": -1})
    assert phi(FormalBirMap("f", ["h1"], ["h1"])).is_zero()


def test_cube_path_examples():
    path, vec = phi_via_cube_path(FormalBirMap("f"))
    assert path == ((),) and vec.is_zero()
    path, vec = phi_via_cube_path(FormalBirMap("f", ["h"], ["k"]))
    assert len(path) == 3 and vec == V({"k": 1, "h": -1})
    path, vec = phi_via_cube_path(FormalBirMap("f", [], ["k1", "k2"]))
    assert len(path) == 3 and vec == V({"k1": 1, "k2": 1})


@given(maps)
def test_cube_path_agrees_with_phi(f):
    path, vec = phi_via_cube_path(f)
    assert vec == phi(f)
    assert len(path) - 1 == len(f.h_classes) + len(f.k_classes)
    slots = sorted(set().union(*map(set, path)))
    assert is_path(SubsetCube(slots), path) if slots else path == ((),)


@given(maps)
def test_inverse_negates(f):
    assert phi(f.inverse()) == -phi(f)
    assert f.inverse().inverse() == f


def test_kernel_condition_examples():
    assert kernel_condition(FormalBirMap("f", ["h"], ["h"]))
    f = FormalBirMap("f", ["h1"], ["k1"])
    assert not kernel_condition(f) and not phi(f).is_zero()
    assert not kernel_condition(FormalBirMap("f", ["h", "h"], ["h"]))


@given(maps)
def test_kernel_condition_matches_phi(f):
    assert kernel_condition(f) == phi(f).is_zero()
    assert kernel_condition(f) == (Counter(f.h_classes) == Counter(f.k_classes))


def test_check_witness_examples():
    f = FormalBirMap("f", ["h"], ["k"])
    assert check_witness(CompositionWitness(f, f.inverse(), FormalBirMap("id")))
    g = FormalBirMap("g", ["k"], ["h"])
    assert check_witness(CompositionWitness(f, g, FormalBirMap("flop")))
    f2 = FormalBirMap("f2", ["h"], ["k", "k"])
    bad = CompositionWitness(f2, FormalBirMap("id"), FormalBirMap("c", ["h"], ["k"]))
    rep = check_witness(bad)
    assert not rep and rep.discrepancy == V({"k": 1})


def test_generation_obstruction_examples():
    pr = [FormalBirMap("a"), FormalBirMap("b")]
    assert not generation_obstruction(pr, FormalBirMap("t", ["h"], ["k"]))
    assert generation_obstruction(pr, FormalBirMap("t"))
    assert generation_obstruction([FormalBirMap("g", [], ["k"])], FormalBirMap("t", [], ["k", "k"]))
    assert not generation_obstruction([FormalBirMap("g", [], ["k", "k"])], FormalBirMap("t", [], ["k"]))


def test_bundled_ledger():
    ledger = example_ledger()
    for f in ledger.maps.values():
        assert phi_via_cube_path(f)[1] == phi(f)
    assert not phi(ledger["exotic"]).is_zero() and not kernel_condition(ledger["exotic"])
    for w in ledger.witnesses:
        assert check_witness(w), w
    pr = [m for m in ledger.maps.values() if m.is_pseudo_regularisable]
    assert pr and not generation_obstruction(pr, ledger["exotic"])
    with pytest.raises(GraphFormatError):
        ledger["missing"]


def test_ledger_round_trip_and_errors(tmp_path):
    ledger = example_ledger()
    again = parse_ledger(dump_ledger(ledger))
    assert again.maps == ledger.maps and again.universe == ledger.universe
    assert [(w.f.name, w.g.name, w.composite.name) for w in again.witnesses] == \
        [(w.f.name, w.g.name, w.composite.name) for w in ledger.witnesses]
    p = tmp_path / "l.json"
    p.write_text(dump_ledger(ledger))
    assert load_ledger(p).maps == ledger.maps
    cases = [
        ('{"universe": ["a"], "maps": [{"name": "f", "H": ["b"]}]}', "not in the universe"),
        ('{"universe": ["a", "a"]}', "duplicate"),
        ('{"universe": ["a"], "maps": [{"name": "f"}, {"name": "f"}]}', "duplicate map"),
        ('{"universe": ["a"], "witnesses": [{"f": "x", "g": "x", "composite": "x"}]}', "unknown map"),
        ('{"universe": ["a"], "extra": 1}', "unknown keys"),
        ('{"universe": ["a"],\n "maps": [}', ":2:"),
    ]
    for text, msg in cases:
        with pytest.raises(GraphFormatError, match=msg):
            parse_ledger(text)


def test_cube_hyperplanes_pairwise_transverse():
    cube = SubsetCube([f"c{i}" for i in range(6)])
    for a, b in itertools.combinations(cube.labels, 2):
        assert is_transverse(cube, a, b)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_MEDIAN, c4, median_fixtures
from medianlab.errors import EndpointMismatch, IllegalMove, NotGeodesic
from medianlab.graphs import Lattice, FreeGroupTree, hypercube_graph, is_path, shortest_path
from medianlab.hyperplanes import is_geodesic_by_crossings
from medianlab.rewriting import (
    Flip,
    InsertBacktrack,
    RemoveBacktrack,
    RewriteTrace,
    apply_move,
    connect_geodesics,
    invert_trace,
    legal_moves,
    normalize_to_geodesic,
    perturb,
    transform_path,
)
from oracles import all_geodesics, apsp

MEDIAN = median_fixtures()


def test_apply_move_examples():
    g = c4()
    assert apply_move(g, ("a", "b", "c"), Flip(1, "d")) == ("a", "d", "c")
    assert apply_move(g, ("a", "b", "a"), RemoveBacktrack(1)) == ("a",)
    assert apply_move(g, ("a",), InsertBacktrack(0, "d")) == ("a", "d", "a")
    z2 = Lattice(2)
    p = ((0, 0), (1, 0), (1, 1), (2, 1))
    assert apply_move(z2, p, Flip(1, (0, 1))) == ((0, 0), (0, 1), (1, 1), (2, 1))


def test_illegal_moves_name_the_condition():
    g = c4()
    with pytest.raises(IllegalMove, match="no backtrack"):
        apply_move(g, ("a", "b", "c"), RemoveBacktrack(1))
    with pytest.raises(IllegalMove, match="out of range"):
        apply_move(g, ("a", "b"), Flip(0, "d"))
    with pytest.raises(IllegalMove, match="not adjacent"):
        apply_move(g, ("a",), InsertBacktrack(0, "c"))
    with pytest.raises(IllegalMove, match="backtrack"):
        apply_move(g, ("a", "b", "a"), Flip(1, "d"))
    with pytest.raises(IllegalMove, match="equals"):
        apply_move(g, ("a", "b", "c"), Flip(1, "b"))
    q3 = hypercube_graph(3)
    with pytest.raises(IllegalMove, match="not adjacent"):
        apply_move(q3, ("000", "100", "110"), Flip(1, "011"))


def test_flip_needs_induced_square():
    from medianlab.graphs import ExplicitGraph

    # a 4-cycle with a chord is not induced
    g = ExplicitGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d"), ("a", "c")], require_connected=True)
    with pytest.raises(IllegalMove, match="induced"):
        apply_move(g, ("a", "b", "c"), Flip(1, "d"))


def test_normalize_examples():
    g = hypercube_graph(3)
    t = normalize_to_geodesic(g, ("000", "001", "011"))
    assert t.moves == () and t.end == t.start
    t = normalize_to_geodesic(c4(), ("a", "b", "a"))
    assert t.moves == (RemoveBacktrack(1),) and t.end == ("a",)
    t = normalize_to_geodesic(g, ("000", "100", "110", "010"))
    assert t.end == ("000", "010")
    assert t.moves == (Flip(1, "010"), RemoveBacktrack(2))
    assert t.replay(g)[-1] == t.end
    with pytest.raises(IllegalMove):
        normalize_to_geodesic(g, ("000", "011"))


def test_connect_examples():
    g = c4()
    assert connect_geodesics(g, ("a", "b", "c"), ("a", "b", "c")).moves == ()
    assert connect_geodesics(g, ("a", "b", "c"), ("a", "d", "c")).moves == (Flip(1, "d"),)
    z2 = Lattice(2)
    t = connect_geodesics(z2, ((0, 0), (1, 0), (1, 1)), ((0, 0), (0, 1), (1, 1)))
    assert t.moves == (Flip(1, (0, 1)),)


def test_connect_errors():
    g = c4()
    with pytest.raises(EndpointMismatch):
        connect_geodesics(g, ("a", "b"), ("a", "d"))
    with pytest.raises(NotGeodesic):
        connect_geodesics(g, ("a", "b", "a"), ("a", "d", "a"))
    with pytest.raises(EndpointMismatch):
        transform_path(g, ("a", "b"), ("a", "d"))


@pytest.mark.parametrize("name", ["Q3", "Q4", "grid3x4", "grid_x_path", "tree12"])
def test_connect_every_pair_of_geodesics(name):
    g = MEDIAN[name]
    d = apsp(g)
    x = g.vertices[0]
    for y in g.vertices[1:: max(1, len(g.vertices) // 8)]:
        geos = all_geodesics(g, x, y, d)[:6]
        for a in geos:
            for b in geos:
                t = connect_geodesics(g, a, b)
                assert t.end == b
                assert all(isinstance(m, Flip) for m in t.moves)
                assert t.replay(g)[-1] == b


def _check_normalization(g, p):
    t = normalize_to_geodesic(g, p)
    paths = t.replay(g)
    assert is_geodesic_by_crossings(g, t.end)
    assert t.end[0] == p[0] and t.end[-1] == p[-1]
    for before, m, after in zip(paths, t.moves, paths[1:]):
        assert not isinstance(m, InsertBacktrack)
        if isinstance(m, RemoveBacktrack):
            assert len(after) == len(before) - 2
        else:
            assert len(after) == len(before)
    return t


@given(st.sampled_from(SMALL_MEDIAN), st.integers(0, 2**32 - 1), st.integers(0, 10))
def test_random_walks_normalize(name, seed, length):
    g = MEDIAN[name]
    rng = np.random.default_rng(seed)
    p = [g.vertices[int(rng.integers(len(g.vertices)))]]
    for _ in range(length):
        ns = g.neighbors(p[-1])
        p.append(ns[int(rng.integers(len(ns)))])
    _check_normalization(g, tuple(p))


@given(st.integers(0, 2**32 - 1))
def test_transform_between_perturbed_paths(seed):
    rng = np.random.default_rng(seed)
    g = MEDIAN[SMALL_MEDIAN[int(rng.integers(len(SMALL_MEDIAN)))]]
    x, y = (g.vertices[int(rng.integers(len(g.vertices)))] for _ in range(2))
    base = shortest_path(g, x, y)
    a = perturb(g, base, rng, 6, max_length=11).end
    b = perturb(g, base, rng, 6, max_length=11).end
    t = transform_path(g, a, b)
    assert t.start == a and t.end == b and t.replay(g)[-1] == b
    assert all(is_path(g, q) for q in t.replay(g))


def test_perturb_on_providers():
    rng = np.random.default_rng(3)
    for g in (Lattice(2), FreeGroupTree(2)):
        base = shortest_path(g, g.base_vertex, g.base_vertex, 0)
        t = perturb(g, base, rng, 8, max_length=9)
        assert t.replay(g)[-1] == t.end and len(t.end) <= 9
        back = normalize_to_geodesic(g, t.end)
        assert back.end == base


def test_invert_trace_and_compose():
    g = hypercube_graph(3)
    t = normalize_to_geodesic(g, ("000", "100", "110", "010"))
    inv = invert_trace(g, t)
    assert inv.start == t.end and inv.end == t.start
    assert inv.replay(g)[-1] == t.start
    loop = t.then(inv)
    assert loop.start == loop.end == t.start
    with pytest.raises(EndpointMismatch):
        t.then(t)


def test_replay_detects_wrong_end():
    g = c4()
    bad = RewriteTrace(("a", "b", "a"), (RemoveBacktrack(1),), ("a", "b", "a"))
    with pytest.raises(Exception, match="reproduce"):
        bad.replay(g)


def test_legal_moves_are_legal():
    g = hypercube_graph(3)
    p = ("000", "100", "110", "100", "101")
    for m in legal_moves(g, p):
        q = apply_move(g, p, m)
        assert q[0] == p[0] and q[-1] == p[-1] and is_path(g, q)

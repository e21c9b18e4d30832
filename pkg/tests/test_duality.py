"""Dual bound, obstruction, brute-force oracle, and slackness checker tests."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpack.duality import (
    TPartition,
    brute_force_max_packing,
    check_condition_strong,
    check_condition_weak,
    free_components,
    is_strongly_maximal,
    mader_bound,
    mader_min,
    obstructive_components,
    singletons,
    validate_tpartition,
)
from tpack.menger import Path, lam
from tpack.multigraph import GraphError, parse_graph, random_inner_eulerian

STAR = "terminal x\nterminal y\nterminal z\nvertex c\nedge 1 x c\nedge 2 y c\nedge 3 z c\n"
TRIANGLE = "terminal a\nterminal b\nterminal c\nedge 1 a b\nedge 2 b c\nedge 3 a c\n"
PATH2 = "terminal t1\nvertex v\nterminal t2\nedge 1 t1 v\nedge 2 v t2\n"

HGRAPH = """
terminal t1
terminal t2
terminal t3
terminal t4
vertex v
vertex w
edge 1 t1 v
edge 2 t2 v
edge 3 v w
edge 4 v w
edge 5 w t3
edge 6 w t4
"""

K4 = """
terminal a
terminal b
terminal c
terminal d
edge 1 a b
edge 2 a c
edge 3 a d
edge 4 b c
edge 5 b d
edge 6 c d
"""


def test_partition_validation():
    G, T = parse_graph(STAR)
    validate_tpartition(G, T, singletons(T))
    with pytest.raises(GraphError):
        validate_tpartition(G, T, TPartition({"x": frozenset({"x"})}))
    with pytest.raises(GraphError):
        validate_tpartition(
            G, T, TPartition({"x": frozenset({"x", "y"}),
                              "y": frozenset({"y"}),
                              "z": frozenset({"z"})})
        )


def test_obstruction_star():
    G, T = parse_graph(STAR)
    rep = obstructive_components(G, T, singletons(T))
    assert len(rep.components) == 1
    c = rep.components[0]
    assert c.component == frozenset({"c"}) and c.degree == 3 and c.obstructive
    assert rep.count == 1


def test_obstruction_hgraph_even():
    G, T = parse_graph(HGRAPH)
    rep = obstructive_components(G, T, singletons(T))
    assert [c.degree for c in rep.components] == [4]
    assert rep.count == 0


def test_no_free_components():
    G, T = parse_graph(TRIANGLE)
    A = singletons(T)
    assert free_components(G, A) == ()
    assert obstructive_components(G, T, A).count == 0


def test_bounds():
    G, T = parse_graph(STAR)
    assert mader_bound(G, T, singletons(T)) == Fraction(1)
    G2, T2 = parse_graph(TRIANGLE)
    assert mader_bound(G2, T2, singletons(T2)) == Fraction(3)
    G3, T3 = parse_graph(HGRAPH)
    assert mader_bound(G3, T3, singletons(T3)) == Fraction(2)


def test_mader_min_examples():
    for text, expect in ((STAR, 1), (TRIANGLE, 3), (PATH2, 1), (HGRAPH, 2)):
        G, T = parse_graph(text)
        value, arg = mader_min(G, T)
        assert value == Fraction(expect)
        validate_tpartition(G, T, arg)
        assert value.denominator == 1  # the minimum is integral


def test_mader_min_size_guard():
    G, T = parse_graph(STAR)
    with pytest.raises(GraphError):
        mader_min(G, T, limit=1)


def test_brute_force_examples():
    for text, expect in ((STAR, 1), (TRIANGLE, 3), (K4, 6)):
        G, T = parse_graph(text)
        best = brute_force_max_packing(G, T)
        assert len(best) == expect
        used = [e for p in best for e in p.edges]
        assert len(used) == len(set(used))


def test_brute_force_deterministic_and_guarded():
    G, T = parse_graph(K4)
    assert brute_force_max_packing(G, T) == brute_force_max_packing(G, T)
    with pytest.raises(GraphError):
        brute_force_max_packing(G, T, limit=3)


def test_conditions_star():
    G, T = parse_graph(STAR)
    A = singletons(T)
    P = (Path(("x", "c", "y"), (1, 2)),)
    assert check_condition_weak(G, T, P, A)
    assert check_condition_strong(G, T, P, A)
    assert not check_condition_weak(G, T, (), A)


def test_conditions_triangle():
    G, T = parse_graph(TRIANGLE)
    A = singletons(T)
    P = brute_force_max_packing(G, T)
    assert check_condition_weak(G, T, P, A)
    assert check_condition_strong(G, T, P, A)


def test_condition_strong_rejects_partial_hgraph():
    G, T = parse_graph(HGRAPH)
    P = brute_force_max_packing(G, T)[:1]
    assert not check_condition_strong(G, T, P, singletons(T))


def test_strong_maximality():
    G, T = parse_graph(K4)
    best = brute_force_max_packing(G, T)
    assert is_strongly_maximal(G, T, best)
    assert not is_strongly_maximal(G, T, best[:4])
    G0 = parse_graph("terminal a\nterminal b\n")
    assert is_strongly_maximal(G0[0], G0[1], ())


def test_weak_duality_random_partitions():
    rng = random.Random(7)
    for seed in range(25):
        G, T = random_inner_eulerian(seed, max_vertices=5, max_edges=9)
        if len(G.edges) > 16:
            continue
        best = len(brute_force_max_packing(G, T))
        inner = sorted(set(G.vertices) - set(T))
        for _ in range(5):
            parts = {t: {t} for t in T}
            for v in inner:
                pick = rng.choice(list(T) + [None])
                if pick is not None:
                    parts[pick].add(v)
            A = TPartition({t: frozenset(X) for t, X in parts.items()})
            assert Fraction(best) <= mader_bound(G, T, A)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=500))
def test_strong_duality_random(seed):
    G, T = random_inner_eulerian(seed, max_vertices=5, max_edges=8)
    best = len(brute_force_max_packing(G, T))
    value, arg = mader_min(G, T)
    assert Fraction(best) == value

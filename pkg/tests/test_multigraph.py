"""Multigraph structure, parsing, contraction, and decomposition tests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpack.multigraph import (
    GraphError,
    Multigraph,
    ParseError,
    eulerian_decomposition,
    format_graph,
    is_inner_eulerian,
    is_minimal_ab_cut,
    parse_graph,
    random_inner_eulerian,
)

TRIANGLE = """
terminal a
terminal b
terminal c
edge 1 a b
edge 2 b c
edge 3 a c
"""

STAR = """
terminal x
terminal y
terminal z
vertex c
edge 1 x c
edge 2 y c
edge 3 z c
"""

THETA = """
terminal t1
terminal t2
vertex a
edge 1 t1 a
edge 2 a t2
edge 3 t1 a
edge 4 a t2
"""

THETA3 = """
terminal t1
terminal t2
vertex a
vertex b
vertex c
edge 1 t1 a
edge 2 a t2
edge 3 t1 b
edge 4 b t2
edge 5 t1 c
edge 6 c t2
"""


def test_construction_rejects_loops_and_bad_ids():
    with pytest.raises(GraphError):
        Multigraph(["a"], {1: ("a", "a")})
    with pytest.raises(GraphError):
        Multigraph(["a", "b"], {0: ("a", "b")})
    with pytest.raises(GraphError):
        Multigraph(["a"], {1: ("a", "b")})


def test_boundary_and_degree():
    G, _ = parse_graph(TRIANGLE)
    assert G.boundary({"a"}) == frozenset({1, 3})
    assert G.boundary({"a", "b"}) == frozenset({2, 3})
    assert G.degree("a") == 2
    assert G.degree({"a", "b"}) == 2
    assert G.boundary(G.vertices) == frozenset()


def test_parallel_edges_counted_with_multiplicity():
    G, _ = parse_graph(THETA)
    assert G.degree("t1") == 2
    assert G.degree("a") == 4
    assert sorted(G.edges_at("a")) == [1, 2, 3, 4]


def test_delete_and_induced_keep_ids():
    G, _ = parse_graph(TRIANGLE)
    H = G.delete_edges([2])
    assert sorted(H.edges) == [1, 3]
    assert H.endpoints(1) == G.endpoints(1)
    K = G.induced(["a", "b"])
    assert sorted(K.edges) == [1]


def test_contract_keeps_surviving_ids():
    G, _ = parse_graph(STAR)
    H = G.contract({"x": {"x", "c"}})
    assert sorted(H.edges) == [2, 3]
    assert set(H.endpoints(2)) == {"x", "y"}
    assert not H.has_vertex("c")


def test_contract_validates_family():
    G, _ = parse_graph(TRIANGLE)
    with pytest.raises(GraphError):
        G.contract({"a": {"b"}})  # root outside its part
    with pytest.raises(GraphError):
        G.contract({"a": {"a", "b"}, "c": {"b", "c"}})  # overlapping parts


def test_components():
    G = Multigraph(["a", "b", "c", "d"], {1: ("a", "b")})
    assert G.component("a") == frozenset({"a", "b"})
    assert len(G.components()) == 3
    assert G.is_connected_set({"a", "b"})
    assert not G.is_connected_set({"a", "c"})


def test_inner_eulerian_witness():
    G, T = parse_graph(STAR)
    ok, witness = is_inner_eulerian(G, T)
    assert not ok and witness == "c"
    G2, T2 = parse_graph(TRIANGLE)
    assert is_inner_eulerian(G2, T2) == (True, None)


def test_eulerian_decomposition_theta():
    # odd-degree terminals force exactly one T-path next to one cycle
    G, T = parse_graph(THETA3)
    parts = eulerian_decomposition(G, T)
    kinds = sorted(k for k, _, _ in parts)
    assert kinds == ["cycle", "tpath"]
    all_edges = sorted(e for _, _, eds in parts for e in eds)
    assert all_edges == [1, 2, 3, 4, 5, 6]
    for kind, verts, eds in parts:
        if kind == "tpath":
            assert verts[0] in T and verts[-1] in T


def test_eulerian_decomposition_even_theta_is_all_cycles():
    G, T = parse_graph(THETA)
    parts = eulerian_decomposition(G, T)
    assert sorted(k for k, _, _ in parts) == ["cycle", "cycle"]


def test_eulerian_decomposition_path_and_lone_cycle():
    G, T = parse_graph("terminal t1\nvertex v\nterminal t2\nedge 1 t1 v\nedge 2 v t2\n")
    parts = eulerian_decomposition(G, T)
    assert len(parts) == 1 and parts[0][0] == "tpath"
    G2, T2 = parse_graph("terminal t1\nvertex a\nvertex b\nedge 1 t1 a\nedge 2 a b\nedge 3 b t1\n")
    parts2 = eulerian_decomposition(G2, T2)
    assert len(parts2) == 1 and parts2[0][0] == "cycle"


def test_eulerian_decomposition_partitions_edges_randomly():
    for seed in range(40):
        G, T = random_inner_eulerian(seed)
        parts = eulerian_decomposition(G, T)
        used = sorted(e for _, _, eds in parts for e in eds)
        assert used == sorted(G.edges)
        for kind, verts, eds in parts:
            assert len(verts) == len(eds) + (0 if kind == "cycle" else 1)


def test_minimal_cut_check():
    G, _ = parse_graph(TRIANGLE)
    assert is_minimal_ab_cut(G, {"a"}, {"b"}, {1, 3}, {"a"})
    # a non-cut edge set is rejected
    assert not is_minimal_ab_cut(G, {"a"}, {"b"}, {1}, {"a"})


def test_parse_format_round_trip():
    G, T = parse_graph(TRIANGLE)
    G2, T2 = parse_graph(format_graph(G, T))
    assert G2 == G and T2 == T


@pytest.mark.parametrize(
    "text,line",
    [
        ("vertex a\nvertex a\n", 2),
        ("edge 1 a b\n", 1),
        ("vertex a\nedge x a a\n", 2),
        ("vertex a\nvertex b\nedge 1 a b\nedge 1 a b\n", 4),
        ("wibble\n", 1),
        ("vertex a\nedge 1 a a\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2000))
def test_random_generator_sound_and_deterministic(seed):
    G, T = random_inner_eulerian(seed)
    ok, _ = is_inner_eulerian(G, T)
    assert ok
    assert len(T) >= 2
    G2, T2 = random_inner_eulerian(seed)
    assert G2 == G and T2 == T

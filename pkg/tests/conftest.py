"""Shared fixtures: exhaustive small-multigraph corpora, one per iso class."""

from __future__ import annotations

import itertools

import pytest

from tpack.multigraph import Multigraph, is_inner_eulerian


def _vectors(npairs: int, budget: int, max_mult: int):
    """All multiplicity vectors of given length with bounded sum."""
    if npairs == 0:
        yield ()
        return
    for head in range(min(budget, max_mult) + 1):
        for tail in _vectors(npairs - 1, budget - head, max_mult):
            yield (head,) + tail


def _key(mult: dict, pairs, perm):
    return tuple(mult[tuple(sorted((perm[i], perm[j])))] for i, j in pairs)


def _connected(n: int, mult: dict) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for v in range(n):
            if v not in seen and v != u and mult[tuple(sorted((u, v)))] > 0:
                seen.add(v)
                frontier.append(v)
    return len(seen) == n


def iter_graphs(max_vertices: int, max_edges: int, max_mult: int = 3):
    """Connected multigraphs up to isomorphism, with their automorphisms.

    Yields (Multigraph, automorphism list); vertices are named v0..v{n-1} and
    automorphisms are tuples mapping index i to its image.
    """
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        perms = list(itertools.permutations(range(n)))
        for vec in _vectors(len(pairs), max_edges, max_mult):
            if n > 1 and not any(vec):
                continue
            mult = dict(zip(pairs, vec))
            if not _connected(n, mult):
                continue
            ident = _key(mult, pairs, tuple(range(n)))
            keys = [_key(mult, pairs, p) for p in perms]
            if min(keys) != ident:
                continue
            autos = [p for p, k in zip(perms, keys) if k == ident]
            verts = [f"v{i}" for i in range(n)]
            inc = {}
            nxt = 1
            for (i, j), m in mult.items():
                for _ in range(m):
                    inc[nxt] = (verts[i], verts[j])
                    nxt += 1
            yield Multigraph(verts, inc), autos


def terminal_sets(n: int, autos, sizes) -> list[tuple[str, ...]]:
    """Terminal subsets of the given sizes, one per automorphism orbit."""
    out = []
    for size in sizes:
        for S in itertools.combinations(range(n), size):
            canon = min(tuple(sorted(p[i] for i in S)) for p in autos)
            if canon == S:
                out.append(tuple(f"v{i}" for i in S))
    return out


@pytest.fixture(scope="session")
def corpus8():
    """Inner-Eulerian instances on <=5 vertices, <=8 edges, all iso classes."""
    out = []
    for G, autos in iter_graphs(5, 8):
        n = len(G.vertices)
        for T in terminal_sets(n, autos, range(1, n + 1)):
            ok, _ = is_inner_eulerian(G, T)
            if ok:
                out.append((G, T))
    return out


@pytest.fixture(scope="session")
def corpus7():
    """All instances on <=5 vertices, <=7 edges, terminal sets of size 2-4."""
    out = []
    for G, autos in iter_graphs(5, 7):
        n = len(G.vertices)
        for T in terminal_sets(n, autos, range(2, min(n, 4) + 1)):
            out.append((G, T))
    return out

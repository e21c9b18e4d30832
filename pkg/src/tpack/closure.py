"""Closure operator on edge sets and the induced decomposition of E.

The generators are the members of a cycle partition of the graph with all
terminals merged into one vertex, plus witness path families covering each
high-degree terminal.  Closing a single edge under these generators yields a
piece that again satisfies the packing premises, so instances decompose into
independently solvable parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .menger import max_disjoint_paths
from .multigraph import (
    GraphError,
    Multigraph,
    check_terminals,
    eulerian_decomposition,
    is_inner_eulerian,
)


@dataclass(frozen=True)
class ClosureSystem:
    universe: frozenset[int]
    # cycle partition of the universe: terminal-to-terminal path edge sets
    # and inner cycles, one frozenset each
    cycles: tuple[frozenset[int], ...]
    # terminal -> edge sets of an edge-disjoint path family covering delta(t)
    witnesses: Mapping[str, tuple[frozenset[int], ...]]


def build_closure_system(G: Multigraph, T: Sequence[str]) -> ClosureSystem:
    """Derive the generators from G.

    Requires the packing premise: inner Eulerian, and every terminal with
    degree above one must be linkable.
    """
    ts = set(check_terminals(G, T))
    ok, witness = is_inner_eulerian(G, T)
    if not ok:
        raise GraphError(f"not inner Eulerian: vertex {witness} has odd degree")
    spanning = sorted(
        e for e in G.edges if all(v in ts for v in G.endpoints(e))
    )
    members = [frozenset({e}) for e in spanning]
    G1 = G.delete_edges(spanning)
    tau = sorted(ts)[0]
    merged = G1.contract({tau: ts})
    for kind, _, eds in eulerian_decomposition(merged, (tau,)):
        if kind != "cycle":
            raise GraphError("internal error: merged graph must be Eulerian")
        members.append(frozenset(eds))

    fams: dict[str, tuple[frozenset[int], ...]] = {}
    for t in sorted(ts):
        if G.degree(t) <= 1:
            continue
        flow = max_disjoint_paths(G, {t}, ts - {t})
        if len(flow.paths) != G.degree(t):
            raise GraphError(f"terminal {t} is not linkable")
        fams[t] = tuple(frozenset(p.edges) for p in flow.paths)

    universe = frozenset(G.edges)
    if sorted(e for m in members for e in m) != sorted(universe):
        raise GraphError("internal error: cycle members do not partition E")
    return ClosureSystem(universe, tuple(members), fams)


def c_close(sys: ClosureSystem, F0: Iterable[int]) -> frozenset[int]:
    """Least superset of F0 containing every generator it touches."""
    F = set(F0)
    if not F <= sys.universe:
        raise GraphError("seed contains edges outside the universe")
    gens = list(sys.cycles) + [m for fam in sys.witnesses.values() for m in fam]
    changed = True
    while changed:
        changed = False
        for m in gens:
            if F & m and not m <= F:
                F |= m
                changed = True
    return frozenset(F)


def closed_partition(
    sys: ClosureSystem, G: Multigraph, T: Sequence[str]
) -> list[frozenset[int]]:
    """Split E into closed pieces, each seeded by the lowest unused edge id.

    Every piece, viewed as a subgraph, is again inner Eulerian and keeps all
    terminals linkable; degree-zero-or-one terminals are trivially linkable.
    """
    check_terminals(G, T)
    remaining = set(sys.universe)
    pieces: list[frozenset[int]] = []
    while remaining:
        piece = c_close(sys, {min(remaining)})
        if not piece <= remaining:
            raise GraphError("internal error: closed pieces overlap")
        pieces.append(piece)
        remaining -= piece
    return pieces


def piece_subgraph(G: Multigraph, piece: Iterable[int]) -> Multigraph:
    """The subgraph keeping exactly the piece's edges (vertex set unchanged)."""
    keep = set(piece)
    return G.delete_edges(e for e in G.edges if e not in keep)

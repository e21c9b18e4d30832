"""Waves, large waves, and the wave-elimination pipeline.

A wave at a terminal s is a system of edge-disjoint paths starting at s whose
last edges form a minimal cut between s and the other terminals.  The large
wave is the one whose cut has the set-largest s-side; contracting that side
leaves a graph in which only the trivial wave (delta(s) as length-one paths)
survives, so lambda(s, T-s) = d(s) there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .menger import Path, PathSystem, _Net, path_is_valid, pym_merge, validate_ab_system
from .multigraph import Cut, GraphError, Multigraph, check_terminals, is_minimal_ab_cut


@dataclass(frozen=True)
class Wave:
    root: str
    paths: PathSystem
    cut: Cut


@dataclass(frozen=True)
class EliminationStep:
    terminal: str
    wave: Wave
    graph_after: Multigraph


@dataclass(frozen=True)
class EliminationRecord:
    original: Multigraph
    steps: tuple[EliminationStep, ...]

    @property
    def final(self) -> Multigraph:
        return self.steps[-1].graph_after if self.steps else self.original


def is_wave(G: Multigraph, T: Sequence[str], s: str, W: Wave) -> bool:
    """Check every wave invariant from scratch."""
    ts = set(check_terminals(G, T))
    if s not in ts or W.root != s:
        return False
    others = ts - {s}
    used: set[int] = set()
    last: list[int] = []
    for p in W.paths:
        if not path_is_valid(G, p) or p.first != s:
            return False
        for e in p.edges:
            if e in used:
                return False
            used.add(e)
        last.append(p.edges[-1])
    if len(set(last)) != len(last) or frozenset(last) != W.cut.edges:
        return False
    if not others:
        return False  # a cut between s and an empty set is not meaningful
    if s not in W.cut.side or others & W.cut.side:
        return False
    return is_minimal_ab_cut(G, {s}, others, W.cut.edges, W.cut.side)


def trivial_wave(G: Multigraph, T: Sequence[str], s: str) -> Wave:
    ts = set(check_terminals(G, T))
    if s not in ts:
        raise GraphError(f"{s} is not a terminal")
    paths = tuple(
        Path((s, G.other_endpoint(e, s)), (e,)) for e in sorted(G.edges_at(s))
    )
    edges = frozenset(G.boundary({s}))
    minimal = bool(ts - {s}) and is_minimal_ab_cut(G, {s}, ts - {s}, edges, {s})
    return Wave(s, paths, Cut(edges, frozenset({s}), minimal))


def large_wave(G: Multigraph, T: Sequence[str], s: str, seed: Sequence[Path] | None = None) -> Wave:
    """The wave whose cut is the set-largest element of the wave-cut lattice.

    Iterates the largest-minimum-cut contraction until the largest minimum cut
    is delta(s) itself; truncated flow paths are spliced across iterations.
    If a seed s(T-s)-path system is given, the returned wave's first edges
    include every first edge of the seed.
    """
    ts = set(check_terminals(G, T))
    if s not in ts:
        raise GraphError(f"{s} is not a terminal")
    others = ts - {s}
    if not others or not any(G.has_vertex(t) and t in G.component(s) for t in others):
        # degenerate: nothing to separate from; the whole component collapses
        side = G.component(s)
        return Wave(s, (), Cut(frozenset(), side, False))

    side: frozenset[str] = frozenset({s})
    cut: frozenset[int] = G.boundary({s})
    pathmap: dict[int, Path] = {e: Path((s, G.other_endpoint(e, s)), (e,)) for e in sorted(cut)}
    cur = G
    while True:
        net = _Net(cur, {s}, others)
        net.run()
        big = net.largest_side()
        if big == {s}:
            break
        new_cut = cur.boundary(big)
        flow_paths = net.paths()
        if len(flow_paths) != len(new_cut):  # largest min cut matches flow value
            raise GraphError("internal error: cut size differs from flow value")
        new_map: dict[int, Path] = {}
        for p in flow_paths:
            hit = next(i for i, e in enumerate(p.edges) if e in new_cut)
            trunc_v, trunc_e = p.vertices[: hit + 2], p.edges[: hit + 1]
            prefix = pathmap[p.edges[0]]
            if prefix.edges[-1] != trunc_e[0] or prefix.vertices[-1] != trunc_v[1]:
                raise GraphError("internal error: wave splice mismatch")
            new_map[trunc_e[-1]] = Path(
                prefix.vertices + trunc_v[2:], prefix.edges + trunc_e[1:]
            )
        pathmap = new_map
        cut = frozenset(new_cut)
        side = side | (big - {s})
        cur = cur.contract({s: big})
    paths = tuple(pathmap[e] for e in sorted(cut))
    wave = Wave(s, paths, Cut(cut, side, is_minimal_ab_cut(G, {s}, others, cut, side)))
    if seed:
        wave = _reseed(G, s, others, wave, seed)
    return wave


def _reseed(G: Multigraph, s: str, others: frozenset[str], wave: Wave, seed: Sequence[Path]) -> Wave:
    """Merge seed first-edges into the large wave (same cut, new paths)."""
    validate_ab_system(G, {s}, others, seed)
    outside = frozenset(G.vertices) - wave.cut.side
    if not outside:
        return wave
    tau = sorted(outside)[0]
    H = G.contract({tau: outside})
    truncated = []
    for p in seed:
        hit = next(i for i, e in enumerate(p.edges) if e in wave.cut.edges)
        truncated.append(Path(p.vertices[: hit + 1] + (tau,), p.edges[: hit + 1]))
    wave_in_h = tuple(Path(p.vertices[:-1] + (tau,), p.edges) for p in wave.paths)
    merged = pym_merge(H, s, tau, tuple(truncated), wave_in_h)
    fixed = []
    for p in merged:
        last = p.edges[-1]
        outer = next(v for v in G.endpoints(last) if v not in wave.cut.side)
        fixed.append(Path(p.vertices[:-1] + (outer,), p.edges))
    return Wave(s, tuple(fixed), wave.cut)


def wave_elimination(G: Multigraph, T: Sequence[str], order: Sequence[str]) -> EliminationRecord:
    """Contract each terminal's large-wave side in turn.

    Afterwards only the trivial wave exists for every processed terminal, so
    lambda(t, T-t) = d(t) in the final graph.
    """
    ts = set(check_terminals(G, T))
    for t in order:
        if t not in ts:
            raise GraphError(f"{t} is not a terminal")
    steps = []
    cur = G
    for t in order:
        w = large_wave(cur, T, t)
        nxt = cur.contract({t: w.cut.side}) if w.cut.side != {t} else cur
        steps.append(EliminationStep(t, w, nxt))
        cur = nxt
    return EliminationRecord(G, tuple(steps))


def extend_through_waves(record: EliminationRecord, P: Sequence[Path]) -> PathSystem:
    """Lift a T-path system of the final graph back to the original graph.

    Paths ending at a processed terminal are extended through the stored wave
    path of the cut edge they arrive on; the wave cut stays orthogonal to the
    lifted paths ending at its terminal.
    """
    final = record.final
    for p in P:
        for e in p.edges:
            try:
                final.endpoints(e)
            except GraphError:
                raise GraphError(f"path edge {e} is absent from the final graph") from None
    paths = list(P)
    for step in reversed(record.steps):
        if step.wave.cut.side == {step.terminal}:
            continue
        by_edge = {w.edges[-1]: w for w in step.wave.paths}
        lifted = []
        for p in paths:
            if p.first == step.terminal:
                p = p.reversed()
            if p.last == step.terminal:
                w = by_edge[p.edges[-1]]
                verts = p.vertices[:-1] + tuple(reversed(w.vertices[:-1]))
                eds = p.edges[:-1] + tuple(reversed(w.edges))
                p = Path(verts, eds)
            lifted.append(p)
        paths = lifted
    return tuple(paths)

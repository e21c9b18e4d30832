"""Packing solver: splitting-off, certificates, and their verification.

The pipeline peels terminal-spanning edges, eliminates waves so that every
terminal satisfies lambda(t, T-t) = d(t), splits off all inner vertices, and
lifts the resulting terminal edges back to edge-disjoint T-paths.  Each
terminal receives an orthogonal minimum cut as a checkable witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .menger import Path, PathSystem, _simplify_walk, lam, min_cut_smallest, path_is_valid
from .multigraph import (
    Cut,
    GraphError,
    Multigraph,
    check_terminals,
    is_inner_eulerian,
    is_minimal_ab_cut,
)
from .waves import EliminationStep, extend_through_waves, wave_elimination


@dataclass(frozen=True)
class SplitRecord:
    """One splitting step: edges e, f at inner vertex v became edge h (x to y)."""

    vertex: str
    e: int
    f: int
    h: int
    x: str
    y: str


@dataclass(frozen=True)
class PackingCertificate:
    paths: PathSystem
    cuts: Mapping[str, Cut]
    # terminal -> ((path index, chosen cut edge), ...), one entry per path
    # ending at that terminal
    choices: Mapping[str, tuple[tuple[int, int], ...]]


def linkability_check(G: Multigraph, T: Sequence[str], t: str) -> bool:
    """True iff some edge-disjoint T-path system covers every edge at t."""
    ts = set(check_terminals(G, T))
    if t not in ts:
        raise GraphError(f"{t} is not a terminal")
    return lam(G, {t}, ts - {t}) == G.degree(t)


def split_off(G: Multigraph, e: int, f: int) -> tuple[Multigraph, SplitRecord]:
    """Replace edges e, f sharing one endpoint by a single bridging edge."""
    if e == f:
        raise GraphError("cannot split an edge with itself")
    eu, ev = G.endpoints(e)
    fu, fv = G.endpoints(f)
    shared = {eu, ev} & {fu, fv}
    if len(shared) == 2:
        raise GraphError(f"splitting parallel edges {e} and {f} would create a loop")
    if not shared:
        raise GraphError(f"edges {e} and {f} must share exactly one endpoint")
    v = next(iter(shared))
    x = G.other_endpoint(e, v)
    y = G.other_endpoint(f, v)
    if x == y:
        raise GraphError(f"splitting {e} and {f} would create a loop")
    h = max(G.edges) + 1
    inc = {k: G.endpoints(k) for k in G.edges if k not in (e, f)}
    inc[h] = (x, y)
    return Multigraph(G.vertices, inc), SplitRecord(v, e, f, h, x, y)


def is_admissible(G: Multigraph, T: Sequence[str], e: int, f: int) -> bool:
    """True iff splitting e, f preserves lambda(t, T-t) for every terminal."""
    ts = set(check_terminals(G, T))
    H, _ = split_off(G, e, f)
    return all(lam(G, {t}, ts - {t}) == lam(H, {t}, ts - {t}) for t in ts)


def complete_splitting(
    G: Multigraph, T: Sequence[str]
) -> tuple[Multigraph, tuple[SplitRecord, ...]]:
    """Split off every inner vertex, leaving a multigraph on the terminals.

    Requires lambda(t, T-t) = d(t) for every terminal; under that premise an
    admissible pair always exists at an even-degree inner vertex, except for
    the degenerate two-parallel-edges case where the pair is deleted outright.
    """
    ts = set(check_terminals(G, T))
    records: list[SplitRecord] = []
    cur = G
    while True:
        # terminal-free components carry no T-paths; induced() drops them below
        reach = {v for c in cur.components() if c & ts for v in c}
        v = next(
            (u for u in cur.vertices if u in reach and u not in ts and cur.degree(u) > 0),
            None,
        )
        if v is None:
            break
        at_v = sorted(cur.edges_at(v))
        e = at_v[0]
        x = cur.other_endpoint(e, v)
        chosen = None
        for f in at_v[1:]:
            if cur.other_endpoint(f, v) == x:
                continue  # would create a loop
            if is_admissible(cur, T, e, f):
                chosen = f
                break
        if chosen is not None:
            cur, rec = split_off(cur, e, chosen)
            records.append(rec)
        elif len(at_v) == 2 and cur.other_endpoint(at_v[1], v) == x:
            # two parallel edges form a cycle; deleting it changes nothing
            cur = cur.delete_edges(at_v)
        else:
            raise GraphError(
                f"no admissible split at {v}; the linkability premise fails"
            )
    order = [t for t in cur.vertices if t in ts]
    return cur.induced(order), tuple(records)


def lift_paths(
    records: Sequence[SplitRecord], terminal_graph: Multigraph
) -> PathSystem:
    """Expand each terminal edge back to a T-path by unwinding the splits."""
    walks = []
    for k in sorted(terminal_graph.edges):
        u, w = terminal_graph.endpoints(k)
        walks.append(([u, w], [k]))
    for rec in reversed(records):
        for sv, se in walks:
            for i, eid in enumerate(se):
                if eid != rec.h:
                    continue
                if sv[i] == rec.x:
                    se[i : i + 1] = [rec.e, rec.f]
                else:
                    se[i : i + 1] = [rec.f, rec.e]
                sv[i + 1 : i + 1] = [rec.vertex]
                break
    out = []
    for sv, se in walks:
        pv, pe = _simplify_walk(sv, se)
        out.append(Path(tuple(pv), tuple(pe)))
    return tuple(out)


def _expanded_sides(steps: Sequence[EliminationStep]) -> dict[str, frozenset[str]]:
    """Wave sides mapped back to original vertices (undo earlier contractions)."""
    seen: dict[str, frozenset[str]] = {}
    for step in steps:
        side: set[str] = set()
        for v in step.wave.cut.side:
            side |= seen.get(v, frozenset({v}))
        seen[step.terminal] = frozenset(side)
    return seen


def solve(G: Multigraph, T: Sequence[str]) -> PackingCertificate:
    """Pack a maximum edge-disjoint T-path system with per-terminal cuts."""
    ts = set(check_terminals(G, T))
    ok, witness = is_inner_eulerian(G, T)
    if not ok:
        raise GraphError(f"not inner Eulerian: vertex {witness} has odd degree")
    spanning = sorted(
        e for e in G.edges if all(v in ts for v in G.endpoints(e))
    )
    peeled = tuple(Path(G.endpoints(e), (e,)) for e in spanning)
    G1 = G.delete_edges(spanning)
    record = wave_elimination(G1, T, sorted(ts))
    term_graph, splits = complete_splitting(record.final, T)
    lifted = lift_paths(splits, term_graph)
    inner_paths = extend_through_waves(record, lifted)
    paths = peeled + inner_paths

    sides = _expanded_sides(record.steps)
    cuts: dict[str, Cut] = {}
    choices: dict[str, tuple[tuple[int, int], ...]] = {}
    for step in record.steps:
        t = step.terminal
        side = sides[t]
        edges = G.boundary(side)
        minimal = bool(ts - {t}) and is_minimal_ab_cut(G, {t}, ts - {t}, edges, side)
        cuts[t] = Cut(edges, side, minimal)
        chosen = []
        for i, p in enumerate(paths):
            if t not in (p.first, p.last):
                continue
            hits = sorted(set(p.edges) & edges)
            if len(hits) != 1:
                raise GraphError(f"internal error: path not orthogonal at {t}")
            chosen.append((i, hits[0]))
        choices[t] = tuple(chosen)
    return PackingCertificate(paths, cuts, choices)


def verify_certificate(
    G: Multigraph, T: Sequence[str], cert: PackingCertificate
) -> tuple[bool, str]:
    """Recheck every certificate invariant from scratch.

    Returns (True, "ok") or (False, reason) with reason one of
    "not-a-tpath", "paths-not-disjoint", "not-a-cut", "cut-not-minimum",
    "not-orthogonal".
    """
    ts = set(check_terminals(G, T))
    for p in cert.paths:
        if not path_is_valid(G, p):
            return False, "not-a-tpath"
        if p.first not in ts or p.last not in ts:
            return False, "not-a-tpath"
        if any(v in ts for v in p.vertices[1:-1]):
            return False, "not-a-tpath"
    used: set[int] = set()
    for p in cert.paths:
        for e in p.edges:
            if e in used:
                return False, "paths-not-disjoint"
            used.add(e)
    if set(cert.cuts) != ts:
        return False, "not-a-cut"
    for t in sorted(ts):
        c = cert.cuts[t]
        if t not in c.side or (ts - {t}) & c.side:
            return False, "not-a-cut"
        if not c.side <= set(G.vertices):
            return False, "not-a-cut"
        if G.boundary(c.side) != c.edges:
            return False, "not-a-cut"
        if len(c.edges) != lam(G, {t}, ts - {t}):
            return False, "cut-not-minimum"
        chosen = cert.choices.get(t, ())
        ending = [i for i, p in enumerate(cert.paths) if t in (p.first, p.last)]
        if sorted(i for i, _ in chosen) != sorted(ending):
            return False, "not-orthogonal"
        if {e for _, e in chosen} != set(c.edges) or len(chosen) != len(c.edges):
            return False, "not-orthogonal"
        for i, e in chosen:
            if e not in cert.paths[i].edges:
                return False, "not-orthogonal"
        for i in ending:
            if len(set(cert.paths[i].edges) & c.edges) != 1:
                return False, "not-orthogonal"
    return True, "ok"


def _tpaths_through(
    G: Multigraph, ts: frozenset[str], t: str, e: int
) -> list[Path]:
    """All simple T-paths leaving t along e, ordered short-first."""
    found: list[Path] = []

    def extend(verts: list[str], eds: list[int]) -> None:
        cur = verts[-1]
        if cur in ts:
            found.append(Path(tuple(verts), tuple(eds)))
            return
        for k in sorted(G.edges_at(cur)):
            if k in eds:
                continue
            nxt = G.other_endpoint(k, cur)
            if nxt in verts[:-1] or nxt == cur:
                continue
            extend(verts + [nxt], eds + [k])

    extend([t, G.other_endpoint(e, t)], [e])
    found.sort(key=lambda p: (len(p.edges), p.edges))
    return found


def removable_tpath(G: Multigraph, T: Sequence[str], t: str, e: int) -> Path:
    """A T-path through e whose deletion keeps every terminal linkable."""
    ts = frozenset(check_terminals(G, T))
    ok, witness = is_inner_eulerian(G, T)
    if not ok:
        raise GraphError(f"not inner Eulerian: vertex {witness} has odd degree")
    if t not in ts:
        raise GraphError(f"{t} is not a terminal")
    if e not in G.edges_at(t):
        raise GraphError(f"edge {e} is not incident to {t}")
    for u in ts:
        if not linkability_check(G, T, u):
            raise GraphError(f"terminal {u} is not linkable")
    for p in _tpaths_through(G, ts, t, e):
        H = G.delete_edges(p.edges)
        if all(linkability_check(H, T, u) for u in ts):
            return p
    raise GraphError("no removable path found; this contradicts the premise")


def tight_cut(G: Multigraph, s: str, t: str, e: int) -> Cut | None:
    """A minimum st-cut through e orthogonal to every covering path system.

    Returns None when e is not obligatory, i.e. some covering system of
    delta(s) avoids e.
    """
    if lam(G, {s}, {t}) != G.degree(s):
        raise GraphError(f"delta({s}) is not coverable by st-paths")
    if e in G.edges_at(s):
        raise GraphError(f"edge {e} must not be incident to {s}")
    H = G.delete_edges([e])
    if lam(H, {s}, {t}) == G.degree(s):
        return None
    small = min_cut_smallest(H, {s}, {t})
    edges = G.boundary(small.side)
    if edges != small.edges | {e}:
        raise GraphError("internal error: deleted edge does not cross the cut")
    return Cut(edges, small.side, is_minimal_ab_cut(G, {s}, {t}, edges, small.side))

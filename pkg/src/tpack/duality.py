"""T-partition duals, obstructive components, and brute-force oracles.

The dual bound for edge-disjoint T-path packing is half of (sum of the
partition-class degrees minus the number of obstructive free components);
minimizing it over all T-partitions matches the maximum packing size.  The
brute-force packing oracle here is deliberately independent of the solver so
the two can check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .menger import Path, PathSystem, path_is_valid
from .multigraph import GraphError, Multigraph, check_terminals


@dataclass(frozen=True)
class TPartition:
    """Disjoint vertex classes X_t with X_t meeting the terminals in {t}."""

    parts: Mapping[str, frozenset[str]]


@dataclass(frozen=True)
class ComponentReport:
    component: frozenset[str]
    degree: int
    obstructive: bool
    attachment: frozenset[str]  # vertices with odd edge count toward the rest


@dataclass(frozen=True)
class ObstructionReport:
    components: tuple[ComponentReport, ...]

    @property
    def count(self) -> int:
        return sum(1 for c in self.components if c.obstructive)


def singletons(T: Sequence[str]) -> TPartition:
    return TPartition({t: frozenset({t}) for t in T})


def validate_tpartition(G: Multigraph, T: Sequence[str], A: TPartition) -> frozenset[str]:
    """Check the partition invariants; return the union of all classes."""
    ts = set(check_terminals(G, T))
    if set(A.parts) != ts:
        raise GraphError("partition must have exactly one class per terminal")
    covered: set[str] = set()
    for t, X in A.parts.items():
        if not X <= set(G.vertices):
            raise GraphError(f"class of {t} contains unknown vertices")
        if X & ts != {t}:
            raise GraphError(f"class of {t} must meet the terminals in exactly {{{t}}}")
        if covered & X:
            raise GraphError("partition classes must be pairwise disjoint")
        covered |= X
    return frozenset(covered)


def free_components(G: Multigraph, A: TPartition) -> tuple[frozenset[str], ...]:
    free = [v for v in G.vertices if all(v not in X for X in A.parts.values())]
    return G.induced(free).components()


def obstructive_components(G: Multigraph, T: Sequence[str], A: TPartition) -> ObstructionReport:
    """Classify every free component; a component obstructs iff its degree is odd.

    The parity test is cross-checked against the contraction form: collapse
    everything outside the component to one vertex and ask for edge-disjoint
    cycles covering its edges, which reduces to joining the odd-attachment
    vertices inside the (connected) component.
    """
    validate_tpartition(G, T, A)
    reports = []
    for Y in sorted(free_components(G, A), key=sorted):
        deg = G.degree(Y)
        attachment = frozenset(
            u for u in Y if len([e for e in G.edges_at(u) if G.other_endpoint(e, u) not in Y]) % 2
        )
        flag = deg % 2 == 1
        extended = flag or len(attachment) % 2 == 1
        if extended != flag:
            raise GraphError("internal error: obstruction definitions disagree")
        reports.append(ComponentReport(Y, deg, flag, attachment))
    return ObstructionReport(tuple(reports))


def mader_bound(G: Multigraph, T: Sequence[str], A: TPartition) -> Fraction:
    """Half of (sum of class degrees minus the obstructive-component count)."""
    o = obstructive_components(G, T, A).count
    total = sum(G.degree(X) for X in A.parts.values())
    return Fraction(total - o, 2)


def mader_min(
    G: Multigraph, T: Sequence[str], limit: int = 2_000_000
) -> tuple[Fraction, TPartition]:
    """Exact minimum of the dual bound over all T-partitions.

    Enumerates every assignment of non-terminals to a terminal class or to
    the free part; errors out when the assignment count exceeds the limit.
    """
    ts = check_terminals(G, T)
    inner = sorted(set(G.vertices) - set(ts))
    options = sorted(ts) + [None]
    if len(options) ** len(inner) > limit:
        raise GraphError(
            f"{len(options) ** len(inner)} assignments exceed the limit {limit}"
        )
    best: tuple[Fraction, TPartition] | None = None
    for assign in itertools.product(options, repeat=len(inner)):
        parts = {t: {t} for t in ts}
        for v, t in zip(inner, assign):
            if t is not None:
                parts[t].add(v)
        A = TPartition({t: frozenset(X) for t, X in parts.items()})
        value = mader_bound(G, T, A)
        if best is None or value < best[0]:
            best = (value, A)
    assert best is not None
    return best


def _all_tpaths(G: Multigraph, ts: frozenset[str]) -> list[Path]:
    """Every simple T-path, one representative per edge set, short-first."""
    seen: set[frozenset[int]] = set()
    out: list[Path] = []

    def extend(verts: list[str], eds: list[int]) -> None:
        cur = verts[-1]
        if len(eds) > 0 and cur in ts:
            key = frozenset(eds)
            if key not in seen:
                seen.add(key)
                out.append(Path(tuple(verts), tuple(eds)))
            return
        for k in sorted(G.edges_at(cur)):
            if k in eds:
                continue
            nxt = G.other_endpoint(k, cur)
            if nxt in verts:
                continue
            extend(verts + [nxt], eds + [k])

    for t in sorted(ts):
        extend([t], [])
    out.sort(key=lambda p: (len(p.edges), p.edges))
    return out


def brute_force_max_packing(
    G: Multigraph, T: Sequence[str], limit: int = 16
) -> PathSystem:
    """Maximum edge-disjoint T-path system by exact branch-and-bound.

    Deterministic: candidate paths are ordered by (length, edge ids) and the
    search prefers taking the earliest path, so ties resolve to the
    lexicographically smallest selection.
    """
    ts = frozenset(check_terminals(G, T))
    if len(G.edges) > limit:
        raise GraphError(f"{len(G.edges)} edges exceed the brute-force limit {limit}")
    cands = _all_tpaths(G, ts)
    best: list[Path] = []

    def search(i: int, picked: list[Path], used: set[int]) -> None:
        nonlocal best
        if len(picked) + (len(cands) - i) <= len(best):
            return
        if i == len(cands):
            if len(picked) > len(best):
                best = list(picked)
            return
        p = cands[i]
        if not used & set(p.edges):
            picked.append(p)
            used |= set(p.edges)
            search(i + 1, picked, used)
            used -= set(p.edges)
            picked.pop()
        search(i + 1, picked, used)

    search(0, [], set())
    return tuple(best)


def _valid_system(G: Multigraph, ts: frozenset[str], P: Sequence[Path]) -> bool:
    used: set[int] = set()
    for p in P:
        if not path_is_valid(G, p):
            return False
        if p.first not in ts or p.last not in ts:
            return False
        if any(v in ts for v in p.vertices[1:-1]):
            return False
        for e in p.edges:
            if e in used:
                return False
            used.add(e)
    return True


def _partition_edges(G: Multigraph, A: TPartition) -> frozenset[int]:
    out: set[int] = set()
    for X in A.parts.values():
        out |= G.boundary(X)
    return frozenset(out)


def _clause_one(
    G: Multigraph,
    A: TPartition,
    P: Sequence[Path],
    boundary: frozenset[int],
    comps: Sequence[frozenset[str]],
) -> bool:
    covered = frozenset().union(*A.parts.values())
    comp_of = {v: i for i, Y in enumerate(comps) for v in Y}
    for p in P:
        hits = [e for e in p.edges if e in boundary]
        if len(hits) == 1:
            u, w = G.endpoints(hits[0])
            if u not in covered or w not in covered:
                return False
        elif len(hits) == 2:
            touched = []
            for e in hits:
                touched.append({comp_of[v] for v in G.endpoints(e) if v in comp_of})
            if not touched[0] & touched[1]:
                return False
        else:
            return False
    return True


def check_condition_weak(
    G: Multigraph, T: Sequence[str], P: Sequence[Path], A: TPartition
) -> bool:
    """Complementary slackness: clause on paths plus at-most-one-missed per component."""
    ts = frozenset(check_terminals(G, T))
    validate_tpartition(G, T, A)
    if not _valid_system(G, ts, P):
        return False
    boundary = _partition_edges(G, A)
    comps = free_components(G, A)
    if not _clause_one(G, A, P, boundary, comps):
        return False
    used = {e for p in P for e in p.edges}
    for Y in comps:
        if len(G.boundary(Y) - used) > 1:
            return False
    return True


def check_condition_strong(
    G: Multigraph, T: Sequence[str], P: Sequence[Path], A: TPartition
) -> bool:
    """As the weak condition, but the only unused boundary edges are exactly
    one per obstructive component."""
    ts = frozenset(check_terminals(G, T))
    report = obstructive_components(G, T, A)
    if not _valid_system(G, ts, P):
        return False
    boundary = _partition_edges(G, A)
    comps = tuple(c.component for c in report.components)
    if not _clause_one(G, A, P, boundary, comps):
        return False
    used = {e for p in P for e in p.edges}
    unused = boundary - used
    for c in report.components:
        miss = G.boundary(c.component) & unused
        if len(miss) != (1 if c.obstructive else 0):
            return False
        unused -= miss
    return not unused


def is_strongly_maximal(
    G: Multigraph, T: Sequence[str], P: Sequence[Path], limit: int = 16
) -> bool:
    """True iff P is a valid system of maximum cardinality.

    For finite graphs strong maximality (no exchange increases the system)
    coincides with having maximum size.
    """
    ts = frozenset(check_terminals(G, T))
    if not _valid_system(G, ts, P):
        return False
    return len(P) == len(brute_force_max_packing(G, T, limit))

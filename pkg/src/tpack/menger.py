"""Unit-capacity flow engine for edge-disjoint path systems.

Maximum AB-path systems with orthogonal minimum cuts, the lattice extremes of
minimum cuts (smallest / largest A-side), meet and join of minimum cuts,
single-step augmentation and Pym-style merging of two path systems.

Endpoint sets A and B are contracted to virtual super-vertices before the
search; the integer sentinels 0 and 1 can never clash with string vertex ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .multigraph import Cut, GraphError, Multigraph, is_minimal_ab_cut

_SRC = 0
_SNK = 1


@dataclass(frozen=True)
class Path:
    """A simple path as parallel vertex and edge sequences."""

    vertices: tuple[str, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1 or not self.edges:
            raise GraphError("path must have n edges and n+1 vertices, n >= 1")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("path vertices must be distinct")

    @property
    def first(self) -> str:
        return self.vertices[0]

    @property
    def last(self) -> str:
        return self.vertices[-1]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), tuple(reversed(self.edges)))


PathSystem = tuple[Path, ...]


@dataclass(frozen=True)
class FlowResult:
    paths: PathSystem
    cut: Cut
    orthogonal: bool


def path_is_valid(G: Multigraph, p: Path) -> bool:
    for i, e in enumerate(p.edges):
        try:
            uv = set(G.endpoints(e))
        except GraphError:
            return False
        if uv != {p.vertices[i], p.vertices[i + 1]}:
            return False
    return True


def validate_ab_system(G: Multigraph, A: Iterable[str], B: Iterable[str], P: Sequence[Path]) -> None:
    """Check P is an edge-disjoint AB-path system (no internal vertex in A|B)."""
    aset, bset = frozenset(A), frozenset(B)
    used: set[int] = set()
    for p in P:
        if not path_is_valid(G, p):
            raise GraphError("path does not live in the graph")
        if p.first not in aset or p.last not in bset:
            raise GraphError("path endpoints not in A and B")
        if any(v in aset or v in bset for v in p.vertices[1:-1]):
            raise GraphError("path has an internal vertex in A or B")
        for e in p.edges:
            if e in used:
                raise GraphError(f"edge {e} used by two paths")
            used.add(e)


# -- core augmenting search -------------------------------------------------

class _Net:
    """Working state: residual orientation of a unit-capacity AB-flow."""

    def __init__(self, G: Multigraph, A: Iterable[str], B: Iterable[str]):
        self.G = G
        self.A = frozenset(A)
        self.B = frozenset(B)
        if self.A & self.B:
            raise GraphError("A and B must be disjoint")
        if not self.A:
            raise GraphError("A must be nonempty")
        for v in self.A | self.B:
            if not G.has_vertex(v):
                raise GraphError(f"unknown vertex id {v}")
        self.orient: dict[int, tuple[object, object]] = {}  # e -> (tail, head), mapped
        # mapped incidence lists, sorted by edge id
        inc: dict[object, list[tuple[int, object]]] = {_SRC: [], _SNK: []}
        for v in G.vertices:
            if v not in self.A and v not in self.B:
                inc[v] = []
        for e in G.edges:
            u, v = G.endpoints(e)
            mu, mv = self._map(u), self._map(v)
            if mu == mv:
                continue
            inc[mu].append((e, mv))
            inc[mv].append((e, mu))
        self.inc = inc

    def _map(self, v: str):
        if v in self.A:
            return _SRC
        if v in self.B:
            return _SNK
        return v

    def seed(self, P: Sequence[Path]) -> None:
        for p in P:
            cur = _SRC
            for i, e in enumerate(p.edges):
                nxt = self._map(p.vertices[i + 1])
                self.orient[e] = (cur, nxt)
                cur = nxt

    def augment_once(self) -> bool:
        """One BFS round; True if an augmenting path was applied."""
        parent: dict[object, tuple[int, object, bool]] = {_SRC: (0, None, False)}
        queue = [_SRC]
        qi = 0
        found = False
        while qi < len(queue) and not found:
            x = queue[qi]
            qi += 1
            for e, y in self.inc[x]:
                o = self.orient.get(e)
                if o is None:
                    fwd = True
                elif o == (y, x):
                    fwd = False  # residual reverse arc head->tail
                else:
                    continue
                if y in parent:
                    continue
                parent[y] = (e, x, fwd)
                if y == _SNK:
                    found = True
                    break
                queue.append(y)
        if not found:
            self._visited = set(parent)
            return False
        cur = _SNK
        while cur != _SRC:
            e, prev, fwd = parent[cur]
            if fwd:
                self.orient[e] = (prev, cur)
            else:
                del self.orient[e]
            cur = prev
        return True

    def run(self) -> None:
        while self.augment_once():
            pass

    # -- cut sides ---------------------------------------------------------

    def smallest_side(self) -> frozenset[str]:
        """A-side of the minimum cut closest to A (residual reachability)."""
        reach = getattr(self, "_visited", None)
        if reach is None:
            self.augment_once()
            reach = self._visited
        return frozenset(self.A | {v for v in reach if v not in (_SRC, _SNK)})

    def largest_side(self) -> frozenset[str]:
        """A-side of the minimum cut farthest from A, canonicalized to the
        components meeting A."""
        back = {_SNK}
        stack = [_SNK]
        while stack:
            x = stack.pop()
            for e, y in self.inc[x]:
                if y in back:
                    continue
                o = self.orient.get(e)
                # arc y->x exists if e is unused, or e is used with tail x
                if o is None or o[0] == x:
                    back.add(y)
                    stack.append(y)
        side = set(self.A)
        for v in self.G.vertices:
            if v not in self.A and v not in self.B and v not in back:
                side.add(v)
        comps = [c for c in self.G.components() if c & self.A]
        keep = frozenset().union(*comps) if comps else frozenset()
        return frozenset(side & keep)

    # -- flow decomposition --------------------------------------------------

    def paths(self) -> PathSystem:
        out_arcs: dict[object, list[int]] = {}
        for e, (tail, _head) in self.orient.items():
            out_arcs.setdefault(tail, []).append(e)
        for lst in out_arcs.values():
            lst.sort(reverse=True)  # pop() takes the lowest id
        result = []
        for e0 in sorted(out_arcs.get(_SRC, [])):
            u, v = self.G.endpoints(e0)
            if self._map(u) != _SRC:
                u, v = v, u
            verts, eds = [u, v], [e0]
            cur = self._map(v)
            while cur != _SNK:
                e = out_arcs[cur].pop()
                verts.append(self.G.other_endpoint(e, verts[-1]))
                eds.append(e)
                cur = self._map(verts[-1])
            verts, eds = _simplify_walk(verts, eds)
            result.append(Path(tuple(verts), tuple(eds)))
        return tuple(result)


def _simplify_walk(vertices: list[str], edges: list[int]) -> tuple[list[str], list[int]]:
    """Splice loops out of a walk, keeping both endpoints."""
    sv = [vertices[0]]
    se: list[int] = []
    pos = {vertices[0]: 0}
    for v, e in zip(vertices[1:], edges):
        if v in pos:
            a = pos[v]
            for x in sv[a + 1 :]:
                del pos[x]
            sv = sv[: a + 1]
            se = se[:a]
        else:
            sv.append(v)
            se.append(e)
            pos[v] = len(sv) - 1
    return sv, se


# -- public operations -------------------------------------------------------

def max_disjoint_paths(G: Multigraph, A: Iterable[str], B: Iterable[str]) -> FlowResult:
    """Maximum edge-disjoint AB-path system with an orthogonal minimum cut."""
    aset, bset = frozenset(A), frozenset(B)
    if not aset or not bset:
        raise GraphError("A and B must be nonempty")
    net = _Net(G, aset, bset)
    net.run()
    paths = net.paths()
    side = net.smallest_side()
    cut_edges = G.boundary(side)
    cut = Cut(cut_edges, side, is_minimal_ab_cut(G, aset, bset, cut_edges, side))
    orth = _is_orthogonal(paths, cut_edges)
    return FlowResult(paths, cut, orth)


def _is_orthogonal(paths: Sequence[Path], cut_edges: frozenset[int]) -> bool:
    seen: set[int] = set()
    for p in paths:
        hits = [e for e in p.edges if e in cut_edges]
        if len(hits) != 1:
            return False
        seen.add(hits[0])
    return seen == set(cut_edges)


def lam(G: Multigraph, A: Iterable[str], B: Iterable[str]) -> int:
    """lambda(A, B): maximum number of edge-disjoint AB-paths."""
    aset, bset = frozenset(A), frozenset(B)
    if aset & bset:
        raise GraphError("A and B must be disjoint")
    if not aset or not bset:
        return 0
    net = _Net(G, aset, bset)
    net.run()
    return len(net.paths())


def augment_once(
    G: Multigraph, A: Iterable[str], B: Iterable[str], P: Sequence[Path]
) -> tuple[PathSystem | None, Cut | None]:
    """One augmentation step: either a strictly larger system (one new edge at
    each of A and B, old boundary edges kept) or a cut orthogonal to P."""
    aset, bset = frozenset(A), frozenset(B)
    validate_ab_system(G, aset, bset, P)
    net = _Net(G, aset, bset)
    net.seed(P)
    if net.augment_once():
        return net.paths(), None
    side = net.smallest_side()
    cut_edges = G.boundary(side)
    return None, Cut(cut_edges, side, is_minimal_ab_cut(G, aset, bset, cut_edges, side))


def _extreme_cut(G: Multigraph, A: Iterable[str], B: Iterable[str], largest: bool) -> Cut:
    aset, bset = frozenset(A), frozenset(B)
    if not aset or not bset:
        raise GraphError("A and B must be nonempty")
    net = _Net(G, aset, bset)
    net.run()
    side = net.largest_side() if largest else net.smallest_side()
    edges = G.boundary(side)
    return Cut(edges, side, is_minimal_ab_cut(G, aset, bset, edges, side))


def min_cut_smallest(G: Multigraph, A: Iterable[str], B: Iterable[str]) -> Cut:
    """Minimum AB-cut whose A-side is set-minimal."""
    return _extreme_cut(G, A, B, largest=False)


def min_cut_largest(G: Multigraph, A: Iterable[str], B: Iterable[str]) -> Cut:
    """Minimum AB-cut whose A-side is set-maximal (within A's components)."""
    return _extreme_cut(G, A, B, largest=True)


def _check_min_cut(G: Multigraph, A: frozenset[str], B: frozenset[str], c: Cut, k: int) -> None:
    if G.boundary(c.side) != c.edges:
        raise GraphError("cut edges do not match the designated side")
    if not A <= c.side or B & c.side:
        raise GraphError("cut side must contain A and avoid B")
    if len(c.edges) != k:
        raise GraphError("not a minimum cut")


def cut_meet(G: Multigraph, A: Iterable[str], B: Iterable[str], c1: Cut, c2: Cut) -> Cut:
    """Lattice meet of two minimum AB-cuts: boundary of the side intersection."""
    return _lattice(G, A, B, c1, c2, join=False)


def cut_join(G: Multigraph, A: Iterable[str], B: Iterable[str], c1: Cut, c2: Cut) -> Cut:
    """Lattice join of two minimum AB-cuts: boundary of the side union."""
    return _lattice(G, A, B, c1, c2, join=True)


def _lattice(G, A, B, c1: Cut, c2: Cut, join: bool) -> Cut:
    aset, bset = frozenset(A), frozenset(B)
    k = lam(G, aset, bset)
    _check_min_cut(G, aset, bset, c1, k)
    _check_min_cut(G, aset, bset, c2, k)
    side = (c1.side | c2.side) if join else (c1.side & c2.side)
    edges = G.boundary(side)
    return Cut(edges, side, is_minimal_ab_cut(G, aset, bset, edges, side))


# -- Pym merge: feasible flow with forced boundary edges ---------------------

def pym_merge(G: Multigraph, s: str, t: str, P: Sequence[Path], Q: Sequence[Path]) -> PathSystem:
    """Merge two st-path systems into one R with delta_R(s) >= delta_P(s) and
    delta_R(t) >= delta_Q(t), via a feasible flow with unit lower bounds on the
    boundary edges that must be kept."""
    validate_ab_system(G, {s}, {t}, P)
    validate_ab_system(G, {s}, {t}, Q)
    forced: dict[int, tuple[str, str]] = {}
    for p in P:
        e = p.edges[0]
        forced[e] = (s, p.vertices[1])
    for q in Q:
        e = q.edges[-1]
        forced[e] = (q.vertices[-2], t)
    arcs: list[list] = []  # [u, v, cap, flow]
    for e in G.edges:
        if e in forced:
            continue
        u, v = G.endpoints(e)
        # never route into s or out of t
        if v != s and u != t:
            arcs.append([u, v, 1, 0, e])
        if u != s and v != t:
            arcs.append([v, u, 1, 0, e])
    n_forced = len(forced)
    big = len(G.edges) + 1
    arcs.append([t, s, big, 0, None])
    for e in sorted(forced):
        u, v = forced[e]
        arcs.append([_SRC, v, 1, 0, None])
        arcs.append([u, _SNK, 1, 0, None])
    value = _edmonds_karp(arcs, _SRC, _SNK)
    if value != n_forced:
        raise GraphError("merge infeasible: inputs are not valid st-path systems")
    # net orientation per original edge (the two opposite arcs may cancel)
    orient: dict[int, tuple[str, str]] = {e: uv for e, uv in forced.items()}
    net_flow: dict[int, int] = {}
    for u, v, _cap, fl, e in arcs:
        if e is None or fl == 0:
            continue
        eu, _ev = G.endpoints(e)
        net_flow[e] = net_flow.get(e, 0) + (fl if u == eu else -fl)
    for e, fl in net_flow.items():
        eu, ev = G.endpoints(e)
        if fl > 0:
            orient[e] = (eu, ev)
        elif fl < 0:
            orient[e] = (ev, eu)
    # decompose s->t walks
    out_arcs: dict[str, list[int]] = {}
    for e, (u, _v) in orient.items():
        out_arcs.setdefault(u, []).append(e)
    for lst in out_arcs.values():
        lst.sort(reverse=True)
    result = []
    for e0 in sorted(out_arcs.get(s, [])):
        verts, eds = [s, orient[e0][1]], [e0]
        while verts[-1] != t:
            e = out_arcs[verts[-1]].pop()
            verts.append(orient[e][1])
            eds.append(e)
        verts, eds = _simplify_walk(verts, eds)
        result.append(Path(tuple(verts), tuple(eds)))
    return tuple(result)


def _edmonds_karp(arcs: list[list], s, t) -> int:
    """Max flow on an explicit arc list; arcs are [u, v, cap, flow, tag]."""
    adj: dict[object, list[int]] = {}
    for i, (u, v, _c, _f, _tag) in enumerate(arcs):
        adj.setdefault(u, []).append(i)
        adj.setdefault(v, []).append(i)
    total = 0
    while True:
        parent: dict[object, tuple[int, object, bool]] = {s: (0, None, False)}
        queue = [s]
        qi = 0
        hit = False
        while qi < len(queue) and not hit:
            x = queue[qi]
            qi += 1
            for i in adj.get(x, []):
                u, v, cap, fl, _tag = arcs[i]
                if u == x and fl < cap and v not in parent:
                    parent[v] = (i, x, True)
                elif v == x and fl > 0 and u not in parent:
                    parent[u] = (i, x, False)
                else:
                    continue
                y = v if u == x else u
                if y == t:
                    hit = True
                    break
                queue.append(y)
        if not hit:
            return total
        cur = t
        while cur != s:
            i, prev, fwd = parent[cur]
            arcs[i][3] += 1 if fwd else -1
            cur = prev
        total += 1

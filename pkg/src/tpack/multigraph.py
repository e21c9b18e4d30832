"""Immutable multigraph model: boundaries, cuts, contraction, parity checks.

Vertices are string identifiers, edges are positive integer identifiers that
stay stable under deletion and contraction.  Parallel edges are allowed, loops
are not.  All iteration orders are deterministic: vertices in declaration
order, edges in ascending id order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Invalid graph data or an operation precondition violation."""


class ParseError(GraphError):
    """Malformed graph text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Cut:
    """An edge cut delta(side) together with its designated side."""

    edges: frozenset[int]
    side: frozenset[str]
    minimal: bool = False


class Multigraph:
    """Finite multigraph (V, E, I) with stable integer edge ids."""

    __slots__ = ("vertices", "_inc", "_adj")

    def __init__(self, vertices: Iterable[str], incidence: Mapping[int, tuple[str, str]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        inc: dict[int, tuple[str, str]] = {}
        for e in sorted(incidence):
            if not isinstance(e, int) or e <= 0:
                raise GraphError(f"edge id {e!r} is not a positive integer")
            u, v = incidence[e]
            if u not in vset or v not in vset:
                raise GraphError(f"edge {e} has unknown endpoint")
            if u == v:
                raise GraphError(f"edge {e} is a loop at {u}")
            inc[e] = (u, v)
        self._inc = inc
        adj: dict[str, list[int]] = {v: [] for v in self.vertices}
        for e, (u, v) in inc.items():
            adj[u].append(e)
            adj[v].append(e)
        self._adj = adj

    # -- basic accessors ---------------------------------------------------

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(self._inc)

    def endpoints(self, e: int) -> tuple[str, str]:
        try:
            return self._inc[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e}") from None

    def other_endpoint(self, e: int, v: str) -> str:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def edges_at(self, v: str) -> tuple[int, ...]:
        try:
            return tuple(self._adj[v])
        except KeyError:
            raise GraphError(f"unknown vertex id {v}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertices == other.vertices and self._inc == other._inc

    def __hash__(self):  # pragma: no cover - identity hashing is never relied on
        return hash((self.vertices, tuple(self._inc.items())))

    def __repr__(self) -> str:
        return f"Multigraph({len(self.vertices)} vertices, {len(self._inc)} edges)"

    # -- boundaries and degrees --------------------------------------------

    def boundary(self, X: Iterable[str]) -> frozenset[int]:
        """delta(X): edges with exactly one endpoint in X."""
        xs = set(X)
        for v in xs:
            if v not in self._adj:
                raise GraphError(f"unknown vertex id {v}")
        out = set()
        for v in xs:
            for e in self._adj[v]:
                if self.other_endpoint(e, v) not in xs:
                    out.add(e)
        return frozenset(out)

    def degree(self, X: Iterable[str] | str) -> int:
        """d(X) = |delta(X)|; accepts a single vertex or a vertex set."""
        if isinstance(X, str):
            return len(self._adj.get(X, ()))  # no loops, so plain incidence count
        return len(self.boundary(X))

    # -- derived graphs ----------------------------------------------------

    def delete_edges(self, dead: Iterable[int]) -> "Multigraph":
        gone = set(dead)
        for e in gone:
            if e not in self._inc:
                raise GraphError(f"unknown edge id {e}")
        return Multigraph(self.vertices, {e: uv for e, uv in self._inc.items() if e not in gone})

    def induced(self, keep: Iterable[str]) -> "Multigraph":
        ks = set(keep)
        verts = tuple(v for v in self.vertices if v in ks)
        inc = {e: (u, v) for e, (u, v) in self._inc.items() if u in ks and v in ks}
        return Multigraph(verts, inc)

    def contract(self, family: Mapping[str, Iterable[str]]) -> "Multigraph":
        """G/F: contract each part X_u to its root u and drop interior edges.

        Parts must be pairwise disjoint and contain their root.  Surviving
        edges keep their ids; edges inside a part are dropped for good.
        """
        parts = {u: frozenset(xs) for u, xs in family.items()}
        image: dict[str, str] = {}
        for u, xs in parts.items():
            if u not in xs:
                raise GraphError(f"root {u} not in its own part")
            for v in xs:
                if v not in self._adj:
                    raise GraphError(f"unknown vertex id {v}")
                if v in image:
                    raise GraphError(f"vertex {v} in two contraction parts")
                image[v] = u
        verts = tuple(v for v in self.vertices if v not in image or image[v] == v)
        inc = {}
        for e, (u, v) in self._inc.items():
            iu, iv = image.get(u, u), image.get(v, v)
            if iu != iv:
                inc[e] = (iu, iv)
        return Multigraph(verts, inc)

    # -- connectivity ------------------------------------------------------

    def component(self, v: str) -> frozenset[str]:
        if v not in self._adj:
            raise GraphError(f"unknown vertex id {v}")
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for e in self._adj[x]:
                y = self.other_endpoint(e, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def components(self) -> tuple[frozenset[str], ...]:
        seen: set[str] = set()
        out = []
        for v in self.vertices:
            if v not in seen:
                comp = self.component(v)
                seen |= comp
                out.append(comp)
        return tuple(out)

    def is_connected_set(self, X: Iterable[str]) -> bool:
        xs = set(X)
        if not xs:
            return False
        start = next(iter(sorted(xs)))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for e in self._adj[x]:
                y = self.other_endpoint(e, x)
                if y in xs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == xs


def check_terminals(G: Multigraph, T: Sequence[str]) -> tuple[str, ...]:
    """Validate a terminal list: known vertices, no duplicates."""
    seen = set()
    for t in T:
        if not G.has_vertex(t):
            raise GraphError(f"terminal {t} is not a vertex")
        if t in seen:
            raise GraphError(f"duplicate terminal {t}")
        seen.add(t)
    return tuple(T)


def is_inner_eulerian(G: Multigraph, T: Sequence[str]) -> tuple[bool, str | None]:
    """True iff every non-terminal degree is even; else returns a witness vertex."""
    ts = set(check_terminals(G, T))
    for v in G.vertices:
        if v not in ts and G.degree(v) % 2 == 1:
            return False, v
    return True, None


# -- Eulerian-style decomposition ------------------------------------------

def _simplify_closed(vertices: list[str], edges: list[int]) -> list[tuple[list[str], list[int]]]:
    """Split a closed trail v0..v0 into vertex-simple cycles."""
    cycles = []
    verts = list(vertices[:-1])  # drop repeated start
    eds = list(edges)
    while eds:
        pos: dict[str, int] = {}
        i = 0
        cut = None
        for i, v in enumerate(verts):
            if v in pos:
                cut = (pos[v], i)
                break
            pos[v] = i
        if cut is None:
            cycles.append((verts, eds))
            break
        a, b = cut
        cycles.append((verts[a:b], eds[a:b]))
        verts = verts[:a] + verts[b:]
        eds = eds[:a] + eds[b:]
        if not verts:
            break
    return [c for c in cycles if c[1]]


def _walk(G: Multigraph, unused: set[int], start: str, stop_at) -> tuple[list[str], list[int]]:
    """Greedy trail from start along unused edges until stop_at(v) holds."""
    verts = [start]
    eds: list[int] = []
    cur = start
    while True:
        e = min((x for x in G.edges_at(cur) if x in unused), default=None)
        if e is None:
            raise GraphError(f"trail stuck at {cur}")  # cannot happen with even interior degrees
        unused.discard(e)
        cur = G.other_endpoint(e, cur)
        verts.append(cur)
        eds.append(e)
        if stop_at(cur):
            return verts, eds


def eulerian_decomposition(
    G: Multigraph, T: Sequence[str]
) -> tuple[tuple[str, tuple[str, ...], tuple[int, ...]], ...]:
    """Partition E into (edge sets of) cycles and T-paths.

    Requires G inner Eulerian w.r.t. T.  Each part is a triple
    ("cycle"|"tpath", vertices, edges); cycle vertices are listed once
    without the closing repeat.
    """
    ok, witness = is_inner_eulerian(G, T)
    if not ok:
        raise GraphError(f"not inner Eulerian: {witness} has odd degree")
    ts = set(T)
    unused = set(G.edges)
    parts: list[tuple[str, tuple[str, ...], tuple[int, ...]]] = []

    def remaining_degree(v: str) -> int:
        return sum(1 for e in G.edges_at(v) if e in unused)

    # Phase 1: pair off odd-degree terminals through T-paths.  A trail from an
    # odd terminal can only stop at a terminal; closed returns are peeled off
    # as cycles and the walk retried.
    progress = True
    while progress:
        progress = False
        for t in G.vertices:
            if t in ts and remaining_degree(t) % 2 == 1:
                verts, eds = _walk(G, unused, t, lambda v: v in ts)
                if verts[-1] == t:
                    for cv, ce in _simplify_closed(verts, eds):
                        parts.append(("cycle", tuple(cv), tuple(ce)))
                else:
                    pos: dict[str, int] = {}
                    sv, se = list(verts), list(eds)
                    i = 0
                    while i < len(sv):  # splice out revisited inner vertices
                        v = sv[i]
                        if v in pos:
                            a = pos[v]
                            loop_v, loop_e = sv[a:i], se[a:i]
                            parts.extend(
                                ("cycle", tuple(cv), tuple(ce))
                                for cv, ce in _simplify_closed(loop_v + [v], loop_e)
                            )
                            sv = sv[:a] + sv[i:]
                            se = se[:a] + se[i:]
                            pos = {x: j for j, x in enumerate(sv[: a + 1])}
                            i = a + 1
                        else:
                            pos[v] = i
                            i += 1
                    parts.append(("tpath", tuple(sv), tuple(se)))
                progress = True

    # Phase 2: all remaining degrees are even; peel simple cycles.
    for v in G.vertices:
        while any(e in unused for e in G.edges_at(v)):
            verts, eds = _walk(G, unused, v, lambda x: x == v)
            for cv, ce in _simplify_closed(verts, eds):
                parts.append(("cycle", tuple(cv), tuple(ce)))
    return tuple(parts)


# -- minimal-cut predicate -------------------------------------------------

def is_minimal_ab_cut(
    G: Multigraph, A: Iterable[str], B: Iterable[str], cut: Iterable[int], side: Iterable[str]
) -> bool:
    """Is delta(side) == cut a minimal AB-cut (both sides connected after
    contracting A and B each to a single vertex, inside the relevant
    component)?"""
    aset, bset = frozenset(A), frozenset(B)
    cset, sset = frozenset(cut), frozenset(side)
    if not aset or not bset or aset & bset:
        return False
    if not aset <= sset or bset & sset:
        return False
    if G.boundary(sset) != cset:
        return False
    fam = {}
    a0, b0 = sorted(aset)[0], sorted(bset)[0]
    fam[a0] = aset
    fam[b0] = bset
    H = G.contract(fam)
    comp = H.component(a0)
    if b0 not in comp:
        return False
    hs = (sset - aset) | {a0}
    return H.is_connected_set(hs & comp) and H.is_connected_set(comp - hs)


# -- text format -----------------------------------------------------------

def parse_graph(text: str) -> tuple[Multigraph, tuple[str, ...]]:
    """Parse the line-oriented graph format; returns (graph, terminals).

    Directives: ``vertex <name>``, ``terminal <name>``, ``edge <id> <u> <v>``.
    ``#`` starts a comment.  Unknown directives and malformed lines are
    errors carrying the line number.
    """
    vertices: list[str] = []
    terminals: list[str] = []
    inc: dict[int, tuple[str, str]] = {}
    known: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind in ("vertex", "terminal"):
            if len(args) != 1:
                raise ParseError(lineno, f"{kind} takes exactly one name")
            name = args[0]
            if name in known:
                raise ParseError(lineno, f"duplicate vertex {name}")
            known.add(name)
            vertices.append(name)
            if kind == "terminal":
                terminals.append(name)
        elif kind == "edge":
            if len(args) != 3:
                raise ParseError(lineno, "edge takes <id> <u> <v>")
            try:
                eid = int(args[0])
            except ValueError:
                raise ParseError(lineno, f"edge id {args[0]!r} is not an integer") from None
            if eid <= 0:
                raise ParseError(lineno, f"edge id {eid} must be positive")
            if eid in inc:
                raise ParseError(lineno, f"duplicate edge id {eid}")
            u, v = args[1], args[2]
            for x in (u, v):
                if x not in known:
                    raise ParseError(lineno, f"unknown vertex {x}")
            if u == v:
                raise ParseError(lineno, f"edge {eid} is a loop")
            inc[eid] = (u, v)
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")
    return Multigraph(vertices, inc), tuple(terminals)


def format_graph(G: Multigraph, T: Sequence[str]) -> str:
    ts = set(T)
    lines = [f"terminal {v}" if v in ts else f"vertex {v}" for v in G.vertices]
    lines += [f"edge {e} {u} {v}" for e, (u, v) in ((e, G.endpoints(e)) for e in G.edges)]
    return "\n".join(lines) + "\n"


# -- fuzz generator --------------------------------------------------------

def random_inner_eulerian(
    seed: int, max_vertices: int = 8, max_edges: int = 14
) -> tuple[Multigraph, tuple[str, ...]]:
    """Deterministic random inner-Eulerian instance.

    Soundness: the edge set is a union of closed walks and terminal-to-terminal
    walks, so every inner vertex receives even degree by construction.
    """
    rng = random.Random(seed)
    nv = rng.randint(2, max(2, max_vertices))
    verts = [f"v{i}" for i in range(nv)]
    nt = rng.randint(2, max(2, min(nv, 4)))
    T = sorted(rng.sample(verts, nt))

    inc: dict[int, tuple[str, str]] = {}
    nxt = 1

    def add(u: str, v: str) -> None:
        nonlocal nxt
        inc[nxt] = (u, v)
        nxt += 1

    def rand_step(cur: str) -> str:
        choices = [v for v in verts if v != cur]
        return rng.choice(choices)

    for _ in range(rng.randint(1, 4)):
        if len(inc) >= max_edges:
            break
        if rng.random() < 0.5 and nv >= 2:
            # closed walk: v0 .. vk (consecutive distinct, vk != v0), closed up
            length = rng.randint(2, 5)
            walk = [rng.choice(verts)]
            for _ in range(length - 1):
                walk.append(rand_step(walk[-1]))
            if walk[-1] == walk[0]:
                fixes = [v for v in verts if v not in (walk[0], walk[-2])]
                if not fixes:
                    continue
                walk[-1] = rng.choice(fixes)
            for a, b in zip(walk, walk[1:]):
                add(a, b)
            add(walk[-1], walk[0])
        else:
            a, b = rng.sample(T, 2)
            walk = [a]
            for _ in range(rng.randint(0, 3)):
                walk.append(rand_step(walk[-1]))
            if walk[-1] != b:
                walk.append(b)
            for x, y in zip(walk, walk[1:]):
                add(x, y)
    if not inc:  # never emit an edgeless instance
        a, b = T[0], T[1]
        add(a, b)
    G = Multigraph(verts, inc)
    ok, _ = is_inner_eulerian(G, T)
    assert ok, "generator produced an odd inner vertex"
    return G, tuple(T)

"""Command-line front end: checks, solvers, duals, fuzzing, and exports.

Exit codes: 0 success or verified, 1 property violated, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .closure import build_closure_system, closed_partition
from .duality import (
    brute_force_max_packing,
    mader_bound,
    mader_min,
    obstructive_components,
)
from .menger import Path, lam, min_cut_largest, min_cut_smallest
from .multigraph import (
    Cut,
    GraphError,
    Multigraph,
    ParseError,
    is_inner_eulerian,
    parse_graph,
    random_inner_eulerian,
)
from .packing import PackingCertificate, linkability_check, solve, verify_certificate
from .waves import large_wave


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: str | None
    seed: int
    count: int
    limit: int
    fmt: str


def certificate_to_json(cert: PackingCertificate) -> str:
    doc = {
        "paths": [
            {"vertices": list(p.vertices), "edges": list(p.edges)}
            for p in cert.paths
        ],
        "cuts": {
            t: {"edges": sorted(c.edges), "side": sorted(c.side)}
            for t, c in cert.cuts.items()
        },
    }
    return json.dumps(doc, sort_keys=True, indent=2)


def certificate_from_json(G: Multigraph, T: Sequence[str], text: str) -> PackingCertificate:
    """Rebuild a certificate; the per-path cut-edge choices are recomputed."""
    doc = json.loads(text)
    paths = tuple(
        Path(tuple(p["vertices"]), tuple(p["edges"])) for p in doc["paths"]
    )
    cuts = {
        t: Cut(frozenset(c["edges"]), frozenset(c["side"]), False)
        for t, c in doc["cuts"].items()
    }
    choices = {}
    for t, c in cuts.items():
        chosen = []
        for i, p in enumerate(paths):
            if t not in (p.first, p.last):
                continue
            hits = sorted(set(p.edges) & c.edges)
            if len(hits) == 1:
                chosen.append((i, hits[0]))
        choices[t] = tuple(chosen)
    return PackingCertificate(paths, cuts, choices)


def _load(path: str) -> tuple[Multigraph, tuple[str, ...]]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _cmd_check(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    ok, witness = is_inner_eulerian(G, T)
    if not ok:
        print(f"not inner Eulerian: vertex {witness} has odd degree")
        return 1
    print("inner Eulerian: yes")
    code = 0
    for t in sorted(T):
        linked = linkability_check(G, T, t)
        print(f"{t}\tlinkable\t{'yes' if linked else 'no'}")
        if not linked:
            code = 1
    return code


def _cmd_lambda(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    ts = set(T)
    for t in sorted(T):
        print(f"{t}\t{lam(G, {t}, ts - {t})}\t{G.degree(t)}")
    return 0


def _cmd_mincut(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    s, t = args.s, args.t
    if not G.has_vertex(s) or not G.has_vertex(t) or s == t:
        print(f"error: need two distinct vertices of the graph", file=sys.stderr)
        return 2
    small = min_cut_smallest(G, {s}, {t})
    large = min_cut_largest(G, {s}, {t})
    for name, c in (("smallest", small), ("largest", large)):
        print(f"{name}\tedges={','.join(map(str, sorted(c.edges)))}"
              f"\tside={','.join(sorted(c.side))}")
    return 0


def _cmd_waves(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    for t in sorted(T):
        w = large_wave(G, T, t)
        print(f"{t}\tcut={','.join(map(str, sorted(w.cut.edges)))}"
              f"\tside={','.join(sorted(w.cut.side))}\tpaths={len(w.paths)}")
    return 0


def _cmd_pack(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    cert = solve(G, T)
    if args.certify:
        print(certificate_to_json(cert))
    else:
        for p in cert.paths:
            print(f"path\t{'>'.join(p.vertices)}\t{','.join(map(str, p.edges))}")
        for t in sorted(cert.cuts):
            c = cert.cuts[t]
            print(f"cut\t{t}\t{','.join(map(str, sorted(c.edges)))}"
                  f"\t{','.join(sorted(c.side))}")
    if args.figure:
        from .viz import render_graph

        render_graph(G, T, args.figure, paths=cert.paths,
                     cut_edges={t: c.edges for t, c in cert.cuts.items()},
                     title=f"{len(cert.paths)} edge-disjoint T-paths")
    return 0


def _cmd_verify(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    with open(args.certificate, encoding="utf-8") as fh:
        try:
            cert = certificate_from_json(G, T, fh.read())
        except (json.JSONDecodeError, KeyError, TypeError, GraphError) as ex:
            print(f"error: malformed certificate: {ex}", file=sys.stderr)
            return 2
    ok, reason = verify_certificate(G, T, cert)
    print(reason)
    return 0 if ok else 1


def _cmd_mader(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    value, A = mader_min(G, T, limit=cfg.limit)
    print(f"value\t{value}")
    for t in sorted(A.parts):
        print(f"class\t{t}\t{','.join(sorted(A.parts[t]))}")
    report = obstructive_components(G, T, A)
    for c in report.components:
        print(f"component\t{','.join(sorted(c.component))}\td={c.degree}"
              f"\tobstructive={'yes' if c.obstructive else 'no'}")
    print(f"obstructive\t{report.count}")
    if args.figure:
        from .viz import render_graph

        classes = {v: t for t, X in A.parts.items() for v in X}
        render_graph(G, T, args.figure, classes=classes,
                     title=f"dual bound {value}")
    return 0


def _cmd_decompose(cfg: RunConfig, args) -> int:
    G, T = _load(args.file)
    system = build_closure_system(G, T)
    for piece in closed_partition(system, G, T):
        print(",".join(map(str, sorted(piece))))
    return 0


def _cmd_fuzz(cfg: RunConfig, args) -> int:
    for i in range(cfg.count):
        seed = cfg.seed + i
        G, T = random_inner_eulerian(seed, args.max_vertices, args.max_edges)
        ts = set(T)
        cert = solve(G, T)
        ok, reason = verify_certificate(G, T, cert)
        if not ok:
            print(f"{i}\tseed={seed}\tMISMATCH certificate: {reason}")
            return 1
        expected = Fraction(sum(lam(G, {t}, ts - {t}) for t in T), 2)
        if Fraction(len(cert.paths)) != expected:
            print(f"{i}\tseed={seed}\tMISMATCH count {len(cert.paths)} != {expected}")
            return 1
        checks = ["verify"]
        if len(G.edges) <= 16:
            best = brute_force_max_packing(G, T)
            if len(best) != len(cert.paths):
                print(f"{i}\tseed={seed}\tMISMATCH brute force {len(best)}")
                return 1
            checks.append("brute")
        inner = len(set(G.vertices) - ts)
        if (len(ts) + 1) ** inner <= 100_000:
            value, _ = mader_min(G, T)
            if value != Fraction(len(cert.paths)):
                print(f"{i}\tseed={seed}\tMISMATCH dual {value}")
                return 1
            checks.append("dual")
        print(f"{i}\tseed={seed}\tn={len(G.vertices)}\tm={len(G.edges)}"
              f"\tpaths={len(cert.paths)}\tchecks={','.join(checks)}")
    return 0


def _cmd_dot(cfg: RunConfig, args) -> int:
    from .viz import render_graph, to_dot

    G, T = _load(args.file)
    sys.stdout.write(to_dot(G, T))
    if args.figure:
        render_graph(G, T, args.figure)
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "lambda": _cmd_lambda,
    "mincut": _cmd_mincut,
    "waves": _cmd_waves,
    "pack": _cmd_pack,
    "verify": _cmd_verify,
    "mader": _cmd_mader,
    "decompose": _cmd_decompose,
    "fuzz": _cmd_fuzz,
    "dot": _cmd_dot,
}


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tpack",
        description="Pack edge-disjoint T-paths and verify cut certificates.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def with_file(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="graph file")
        return p

    with_file("check", "inner-Eulerian and linkability report")
    with_file("lambda", "per-terminal connectivity and degree")
    mc = with_file("mincut", "smallest and largest minimum cut between two vertices")
    mc.add_argument("s")
    mc.add_argument("t")
    with_file("waves", "large wave per terminal")
    pk = with_file("pack", "solve and print the packing")
    pk.add_argument("--certify", action="store_true", help="emit a JSON certificate")
    pk.add_argument("--figure", metavar="OUT", help="render the packing to an image file")
    vf = with_file("verify", "check a certificate against the graph")
    vf.add_argument("certificate", help="JSON certificate file")
    md = with_file("mader", "exact dual minimum and obstruction report")
    md.add_argument("--limit", type=int, default=2_000_000,
                    help="assignment-enumeration bound")
    md.add_argument("--figure", metavar="OUT", help="render the partition to an image file")
    with_file("decompose", "closed-piece decomposition of the edge set")
    fz = sub.add_parser("fuzz", help="randomized cross-checking")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--count", type=int, default=10)
    fz.add_argument("--max-vertices", type=int, default=6)
    fz.add_argument("--max-edges", type=int, default=10)
    dt = with_file("dot", "Graphviz export")
    dt.add_argument("--figure", metavar="OUT", help="render the graph to an image file")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        input=getattr(args, "file", None),
        seed=getattr(args, "seed", 0),
        count=getattr(args, "count", 0),
        limit=getattr(args, "limit", 2_000_000),
        fmt="json" if getattr(args, "certify", False) else "text",
    )
    try:
        return _HANDLERS[cfg.subcommand](cfg, args)
    except ParseError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except OSError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except GraphError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``count``, ``construct``, ``search`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from turanlab import constructions as cons
from turanlab.counting import (
    CompleteBipartite,
    CountResult,
    Cycle,
    Pattern,
    count_copies,
    parse_pattern,
)
from turanlab.graph import Graph, GraphError, from_graph6, to_graph6
from turanlab.graph6 import Graph6Error
from turanlab.reports import ResultCache, VerificationReport, config_key, dumps
from turanlab.search import (
    BIPARTITE_CAP,
    BIPARTITE_CASES,
    CapExceeded,
    SearchConfig,
    c4_bound_sweep,
    search_max,
    verify_bipartite_case,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class InputError(Exception):
    pass


def _error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _bool_flag(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a > b or a < 1:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return list(range(a, b + 1))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pattern(text: str) -> Pattern:
    try:
        return parse_pattern(text)
    except (ValueError, Graph6Error) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def _count_pattern(args) -> Pattern:
    if args.cycle is not None:
        return Cycle(args.cycle)
    if args.biclique is not None:
        return CompleteBipartite(*args.biclique)
    return args.pattern


def _read_graphs(source: str) -> list[Graph]:
    path = Path(source)
    if not path.is_file():
        try:
            return [from_graph6(source.strip())]
        except Graph6Error as exc:
            raise InputError(f"cannot parse graph6 {source!r}: {exc}") from None
    graphs = []
    for lineno, line in enumerate(path.read_text(encoding="ascii", errors="replace").splitlines(), 1):
        if not line.strip():
            continue
        try:
            graphs.append(from_graph6(line.strip()))
        except Graph6Error as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
    return graphs


def cmd_count(args) -> int:
    try:
        pattern = _count_pattern(args)
        graphs = _read_graphs(args.graph)
    except (ValueError, GraphError) as exc:
        raise InputError(str(exc)) from None
    for g in graphs:
        res = CountResult(pattern, g.n, count_copies(g, pattern))
        print(json.dumps(res.to_dict(), sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

_CONSTRUCT_PARAMS = {
    "kbip": ("a", "b"),
    "thm3": ("n",),
    "thm4": ("n", "s"),
    "kplus": ("a", "b"),
    "star": ("k",),
    "clique": ("k",),
    "empty": ("k",),
}


def _construction(args) -> cons.Construction:
    missing = [f"--{p}" for p in _CONSTRUCT_PARAMS[args.kind] if getattr(args, p) is None]
    if missing:
        raise InputError(f"construct {args.kind} needs {', '.join(missing)}")
    match args.kind:
        case "kbip":
            return cons.KBipartite(args.a, args.b)
        case "thm3":
            return cons.AugmentedK2(args.n)
        case "thm4":
            return cons.SplitJoin(args.n, args.s, args.clique_mask, args.h_edge)
        case "kplus":
            return cons.CliqueJoinIndependent(args.a, args.b)
        case "star":
            return cons.Star(args.k)
        case "clique":
            return cons.Clique(args.k)
        case "empty":
            return cons.Empty(args.k)
    raise InputError(f"unknown construction {args.kind!r}")


def _edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines)


def cmd_construct(args) -> int:
    c = _construction(args)
    try:
        g = cons.build(c)
    except (cons.ConstructionError, GraphError) as exc:
        raise InputError(str(exc)) from None
    print(to_graph6(g) if args.emit == "graph6" else _edge_list(g))
    if not args.check:
        return EXIT_OK
    verdicts = cons.check_construction(c)
    out = {"construction": args.kind, "n": g.n, "graph6": to_graph6(g), "check": verdicts}
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK if verdicts["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _reference(cfg: SearchConfig) -> tuple[dict, dict]:
    """Closed-form value for recognized configurations, with its verdict."""
    target, forbidden = cfg.target, cfg.forbidden
    n = cfg.n
    if len(forbidden) != 1 or not isinstance(target, Cycle) or not isinstance(forbidden[0], Cycle):
        return {}, {}
    pair = (target.k, forbidden[0].k)
    if cfg.bipartite and pair in ((4, 6), (6, 8)):
        f = cons.BipC4C6(n) if pair == (4, 6) else cons.BipC6C8(n)
        return {"name": cons.formula_name(f), "value": cons.formula_value(f)}, {"exact": True}
    if not cfg.bipartite and pair == (4, 6) and n >= 6:
        f = cons.C4C6(n)
        return {"name": cons.formula_name(f), "value": cons.formula_value(f)}, {"exact": False}
    return {}, {}


def _search_report(cfg: SearchConfig, argv: list[str]) -> VerificationReport:
    res = search_max(cfg)
    formula, kind = _reference(cfg)
    verdicts: dict = {"complete": res.complete, "lower_bound_only": res.lower_bound_only}
    if formula:
        if kind["exact"]:
            verdicts["matches_formula"] = res.max_copies == formula["value"]
        else:
            verdicts["at_least_construction"] = res.max_copies >= formula["value"]
    verdicts["pass"] = res.complete
    return VerificationReport(
        kind="search",
        command=argv,
        config=cfg.semantic(),
        computed={
            "max_copies": res.max_copies,
            "extremal_graph6": res.graph6,
            "extremal_count": len(res.extremal),
            "explored": res.explored,
        },
        formula=formula,
        verdicts=verdicts,
        timing={"wall_time_s": round(res.wall_time, 6), "workers": cfg.worker_count},
    )


def cmd_search(args, argv: list[str]) -> int:
    try:
        cfg = SearchConfig(
            n=args.n,
            target=args.target,
            forbidden=tuple(args.forbid or ()),
            bipartite=args.bipartite,
            worker_count=args.workers,
            node_budget=args.budget,
            allow_large=args.force,
        )
    except CapExceeded:
        raise
    except (ValueError, GraphError) as exc:
        raise InputError(str(exc)) from None

    key = config_key("search", cfg.semantic())
    cache = ResultCache(args.cache_dir)
    stored = None if args.no_cache else cache.get(key)
    if stored is not None:
        data = json.loads(stored)
        data["cache_hit"] = True
        data["explored_this_run"] = 0
    else:
        report = _search_report(cfg, argv)
        data = report.to_dict()
        if not args.no_cache:
            cache.put(key, dumps(data))
        data["cache_hit"] = False
        data["explored_this_run"] = data["computed"]["explored"]

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / f"search-{key[:16]}"
    g6_path = stem.with_suffix(".g6")
    g6_path.write_text("".join(f"{s}\n" for s in data["computed"]["extremal_graph6"]), encoding="ascii")
    data["graph6_file"] = str(g6_path)
    text = dumps(data)
    stem.with_suffix(".json").write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _bipartite_reports(which: int, n_values: list[int], workers: int, argv):
    case = BIPARTITE_CASES["c4c6" if which == 1 else "c6c8"]
    if max(n_values) > BIPARTITE_CAP:
        raise CapExceeded(f"cap exceeded: n={max(n_values)} > {BIPARTITE_CAP} in bipartite mode")
    reports, rows = [], []
    for chk in verify_bipartite_case(case.name, n_values, workers):
        degenerate = not chk.unique and not chk.uniqueness_required
        verdicts = {
            "max_matches": chk.max_matches,
            "unique_extremal": chk.unique,
            "uniqueness_required": chk.uniqueness_required,
            "degenerate_order": degenerate,
            "pass": chk.passed,
        }
        reports.append(
            VerificationReport(
                kind=f"bipartite-{case.name}",
                command=argv,
                config={
                    "n": chk.n,
                    "target": str(case.target),
                    "forbidden": [str(case.forbidden)],
                    "mode": "bipartite",
                },
                computed={
                    "max_copies": chk.max_copies,
                    "extremal_graph6": chk.extremal,
                    "explored": chk.explored,
                },
                formula={"name": f"{case.side}-side complete bipartite count", "value": chk.formula},
                verdicts=verdicts,
                timing={"wall_time_s": round(chk.wall_time, 6), "workers": workers},
            )
        )
        rows.append(
            {
                "n": chk.n,
                "formula": chk.formula,
                "computed": chk.max_copies,
                "match": chk.max_matches,
                "extremal_count": len(chk.extremal),
                "unique": chk.unique,
                "pass": chk.passed,
            }
        )
    return reports, rows


def _c4_bound_reports(s_values: list[int], n_max: int, argv):
    reports, rows = [], []
    for sweep in c4_bound_sweep(s_values, n_max):
        reports.append(
            VerificationReport(
                kind="c4-vertex-bound",
                command=argv,
                config={"s": sweep.s, "n_max": n_max},
                computed={
                    "graphs": sweep.graphs,
                    "graphs_per_order": {str(k): v for k, v in sorted(sweep.per_order.items())},
                    "vertices_checked": sweep.vertices,
                    "k5_free_vertices_checked": sweep.k5_free_vertices,
                    "max_ratio": _fraction(sweep.max_ratio),
                    "max_ratio_k5_free": _fraction(sweep.max_ratio_k5),
                    "violations": sweep.violations,
                },
                formula={
                    "bound": "max(3*deg, (s-1)(s+2)/(2(s+1))*deg)",
                    "k5_free_bound": "max(2*deg, (s-1)(s+2)/(2(s+1))*deg)",
                },
                verdicts={"violations": len(sweep.violations), "pass": sweep.passed},
            )
        )
        rows.append(
            {
                "s": sweep.s,
                "n_max": n_max,
                "graphs": sweep.graphs,
                "vertices": sweep.vertices,
                "violations": len(sweep.violations),
                "max_ratio": _fraction(sweep.max_ratio),
                "max_ratio_k5_free": _fraction(sweep.max_ratio_k5),
                "pass": sweep.passed,
            }
        )
    return reports, rows


def _family_reports(s: int, n_min: int, n_max: int, argv):
    if s < 2:
        raise InputError("--s must be at least 2")
    if n_max > 64:
        raise CapExceeded(f"cap exceeded: n_max={n_max} > 64")
    n_min = max(n_min, 2 * s + 1)
    if n_min > n_max:
        raise InputError(f"empty range: n from {n_min} to {n_max}")
    reports, rows = [], []
    for n in range(n_min, n_max + 1):
        members = cons.sweep_split_join(s, [n])
        member_rows = []
        for m in members:
            row = {
                "n": m.n,
                "s": m.s,
                "clique_mask": m.clique_mask,
                "h_edge": m.h_edge,
                "formula": m.formula,
                "computed": m.kss_count,
                "match": m.count_matches,
                "cycle_free": m.cycle_free,
                "structure": m.structure,
                "contains_kst": m.contains_kst,
                "above_threshold": m.above_threshold,
                "extra_copy": None if m.extra_copy is None else [list(m.extra_copy[0]), list(m.extra_copy[1])],
                "pass": m.passed,
            }
            member_rows.append(row)
        rows.extend(member_rows)
        deviations = [r for r in member_rows if not r["match"]]
        reports.append(
            VerificationReport(
                kind="split-join-family",
                command=argv,
                config={"n": n, "s": s, "members": len(members)},
                computed={
                    "members_passing": sum(r["pass"] for r in member_rows),
                    "count_deviations": deviations,
                    "kss_counts": sorted({r["computed"] for r in member_rows}),
                },
                formula={"name": f"C(n-{s},{s})", "value": members[0].formula},
                verdicts={
                    "all_cycle_free": all(r["cycle_free"] for r in member_rows),
                    "all_structure": all(r["structure"] for r in member_rows),
                    "all_contain_kst": all(r["contains_kst"] for r in member_rows),
                    "all_counts_match": not deviations,
                    "pass": all(r["pass"] for r in member_rows),
                },
            )
        )
    return reports, rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        if not rows:
            return
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})


def cmd_verify(args, argv: list[str]) -> int:
    if args.theorem is not None:
        if args.n_range is None:
            raise InputError("--theorem needs --n-range a..b")
        name = f"bipartite-{'c4c6' if args.theorem == 1 else 'c6c8'}"
        reports, rows = _bipartite_reports(args.theorem, args.n_range, args.workers, argv)
    elif args.lemma1:
        if args.s_list is None or args.n_max is None:
            raise InputError("--lemma1 needs --s-list and --n-max")
        if any(s < 2 for s in args.s_list):
            raise InputError("--s-list values must be at least 2")
        name = "c4-vertex-bound"
        reports, rows = _c4_bound_reports(args.s_list, args.n_max, argv)
    else:
        if args.s is None or args.n_max is None:
            raise InputError("--thm4-family needs --s and --n-max")
        name = f"split-join-family-s{args.s}"
        n_min = args.n_min if args.n_min is not None else 2 * args.s + 2
        reports, rows = _family_reports(args.s, n_min, args.n_max, argv)

    ok = sum(bool(r["pass"]) for r in rows)
    passed = ok == len(rows) and all(r.passed for r in reports)
    summary = f"PASS {ok}/{len(rows)}" if passed else f"FAIL {ok}/{len(rows)}"
    csv_path = Path(args.csv) if args.csv else Path(args.out) / f"verify-{name}.csv"
    _write_csv(csv_path, rows)
    out = {
        "kind": name,
        "summary": summary,
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
        "csv": str(csv_path),
    }
    print(dumps(out))
    print(summary, file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanlab",
        description="Count subgraphs, build extremal constructions and run exhaustive Turán-number searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count copies of a pattern in graph6 input")
    p.add_argument("graph", help="graph6 string, or a file with one graph6 per line")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--cycle", type=int, metavar="K")
    which.add_argument("--biclique", type=int, nargs=2, metavar=("S", "T"))
    which.add_argument("--pattern", type=_pattern, help="cycle:K, biclique:S,T, clique:K or g6:<graph6>")

    p = sub.add_parser("construct", help="emit an extremal construction")
    p.add_argument("kind", choices=sorted(_CONSTRUCT_PARAMS))
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--clique-mask", type=lambda x: int(x, 0), default=0)
    p.add_argument("--h-edge", type=_bool_flag, default=False, metavar="true|false")
    p.add_argument("--emit", choices=("graph6", "edge-list"), default="graph6")
    p.add_argument("--check", action="store_true", help="also print freeness and count verdicts")

    p = sub.add_parser("search", help="exact maximum of a pattern count over F-free graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", type=_pattern, required=True)
    p.add_argument("--forbid", type=_pattern, action="append", metavar="PATTERN")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, help="node budget; an exhausted budget yields a lower bound")
    p.add_argument("--force", action="store_true", help="lift the soft order caps")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache-dir", help="overrides TURAN_CACHE_DIR")
    p.add_argument("--out", default=".", help="directory for the report and the .g6 file")

    p = sub.add_parser("verify", help="check stated results over a range")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--theorem", type=int, choices=(1, 2))
    mode.add_argument("--lemma1", action="store_true")
    mode.add_argument("--thm4-family", action="store_true")
    p.add_argument("--n-range", type=_n_range, metavar="A..B")
    p.add_argument("--s-list", type=_int_list, metavar="S1,S2,...")
    p.add_argument("--s", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="CSV path (default: <out>/verify-<kind>.csv)")
    p.add_argument("--out", default=".")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        match args.command:
            case "count":
                return cmd_count(args)
            case "construct":
                return cmd_construct(args)
            case "search":
                return cmd_search(args, argv)
            case "verify":
                return cmd_verify(args, argv)
    except CapExceeded as exc:
        _error(str(exc))
        return EXIT_CAP
    except InputError as exc:
        _error(str(exc))
        return EXIT_INPUT
    except ValueError as exc:
        _error(str(exc))
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

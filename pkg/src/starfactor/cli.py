"""Command-line entry point: ``starfactor <subcommand> ...``.

Exit status: 0 when every check passed, 1 when at least one failed,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import search as search_mod
from .errors import GraphError, SearchTimeout
from .factors import find_star_factor, isolated_toughness, kano_saito_max_deficiency
from .graph import ExtremalParams, Graph, extremal_g1, extremal_g2, extremal_g_star, is_connected
from .oracle import small_oracle
from .polynomials import phi_b_star
from .report import fmt_value, rows_to_csv, write_outputs
from .spectral import (
    adjacency_matrix,
    das_bound,
    distance_matrix,
    hong_bound,
    signless_laplacian,
    spectral_radius,
    wiener_index,
)
from .verify import DEFAULT_BS, DEFAULT_MS, THEOREMS, verify_bounds, verify_identities


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return Graph.from_edgelist(text)


def _emit(args, payload: dict, stem: str, csv_rows: list[dict] | None = None) -> None:
    if args.format == "json" or csv_rows is None:
        print(json.dumps(payload, indent=2, sort_keys=True, default=fmt_value))
    else:
        print(rows_to_csv(csv_rows, list(csv_rows[0])), end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.json").write_text(json.dumps(payload, indent=2, sort_keys=True, default=fmt_value) + "\n")


def _spectra(g: Graph) -> dict:
    out = {
        "n": g.n,
        "edges": g.num_edges,
        "rho": spectral_radius(adjacency_matrix(g)).value,
        "q": spectral_radius(signless_laplacian(g)).value,
    }
    if g.n >= 2:
        out["das_bound"] = das_bound(g)
    if 2 * g.num_edges - g.n + 1 >= 0:
        out["hong_bound"] = hong_bound(g)
    if is_connected(g):
        d = distance_matrix(g)
        out["mu"] = spectral_radius(d).value
        out["wiener"] = wiener_index(g)
        out["rayleigh_lower"] = 2 * out["wiener"] / g.n
    return out


def cmd_extremal(args) -> int:
    if args.kind == "gstar":
        g, lab = extremal_g_star(ExtremalParams(args.n, args.m, args.b))
        stem = f"gstar_n{args.n}_m{args.m}_b{args.b}"
    elif args.kind == "g1":
        g, lab = extremal_g1(args.n, args.m, args.i)
        stem = f"g1_n{args.n}_m{args.m}_i{args.i}"
    else:
        g, lab = extremal_g2(args.n, args.m)
        stem = f"g2_n{args.n}_m{args.m}"
    summary = _spectra(g)
    summary["blocks"] = {name: len(block) for name, block in zip(lab.names, lab.blocks)}
    summary["block_sizes"] = list(lab.sizes)
    summary["degrees_by_block"] = {name: sorted({g.degree(v) for v in block}) for name, block in zip(lab.names, lab.blocks)}
    if args.kind == "gstar":
        summary["phi_b_star"] = list(phi_b_star(args.n, args.m, args.b).coeffs)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.txt").write_text(g.to_edgelist())
    _emit(args, summary, stem)
    return 0


def cmd_spectra(args) -> int:
    g = _read_graph(args.graph)
    payload = _spectra(g)
    _emit(args, payload, "spectra", [{k: fmt_value(v) for k, v in payload.items()}])
    return 0


def cmd_toughness(args) -> int:
    g = _read_graph(args.graph)
    try:
        value, witness = isolated_toughness(g, budget_ms=args.budget_ms)
    except SearchTimeout:
        _emit(args, {"status": "timeout"}, "toughness")
        return 1
    payload = {"toughness": fmt_value(value)}
    if witness is not None:
        payload["witness"] = json.loads(witness.to_json())
    _emit(args, payload, "toughness")
    return 0


def cmd_factor(args) -> int:
    g = _read_graph(args.graph)
    payload: dict = {"m": args.m}
    try:
        factor = find_star_factor(g, args.m, budget_ms=args.budget_ms)
    except SearchTimeout:
        payload["status"] = "timeout"
        _emit(args, payload, "factor")
        return 1
    payload["status"] = "yes" if factor is not None else "no"
    if factor is not None:
        payload["factor"] = json.loads(factor.to_json())
    if g.n <= 28:
        payload["max_deficiency"], _ = kano_saito_max_deficiency(g, args.m, budget_ms=args.budget_ms)
    _emit(args, payload, "factor")
    return 0


def _finish_report(args, report, stem: str) -> int:
    summary = report.summary()
    write_outputs(args.out, stem, report.to_csv(), summary)
    if args.format == "csv":
        print(report.to_csv(), end="")
    else:
        brief = {k: v for k, v in summary.items() if k != "failures"}
        brief["failures"] = summary["failures"][:10]
        print(json.dumps(brief, indent=2, sort_keys=True))
    return 0 if report.ok else 1


def cmd_verify_identities(args) -> int:
    points = [tuple(args.point)] if args.point else None
    report = verify_identities(_int_list(args.ms), _int_list(args.bs), args.n_max, points, quotient_roots=not args.no_quotient_roots)
    return _finish_report(args, report, "verify_identities")


def cmd_verify_bounds(args) -> int:
    theorems = THEOREMS if args.theorem == "all" else (args.theorem,)
    report = verify_bounds(theorems, _int_list(args.ms), _int_list(args.bs), args.span, numeric=not args.exact_only)
    return _finish_report(args, report, "verify_bounds")


def cmd_search(args) -> int:
    cfg = search_mod.TheoremConfig(
        theorem=args.theorem,
        m=args.m,
        b=args.b,
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        budget_ms=args.budget_ms,
        node_budget=args.node_budget or None,
    )
    if cfg.below_threshold:
        print(f"warning: n={cfg.n} is below the theorem threshold; exploring anyway", file=sys.stderr)
    rows, summary = search_mod.run_search(cfg)
    csv_text = search_mod.rows_csv(rows)
    write_outputs(args.out, "search", csv_text, summary)
    if args.out:
        search_mod.write_counterexamples(rows, args.out)
    if args.format == "csv":
        print(csv_text, end="")
    else:
        print(json.dumps(summary, indent=2, sort_keys=True))
    return 1 if summary["counterexamples"] else 0


def cmd_small_oracle(args) -> int:
    report, summary = small_oracle(_int_list(args.ms), args.n_max, args.toughness_n_max)
    summary["checks"] = report.summary()
    write_outputs(args.out, "small_oracle", report.to_csv(), json.loads(json.dumps(summary, default=str)))
    if args.format == "csv":
        print(report.to_csv(), end="")
    else:
        print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="directory for report files")
    common.add_argument("--seed", type=int, default=0, help="master seed (u64)")
    common.add_argument("--budget-ms", type=float, default=None, help="wall-clock budget per exhaustive search")
    common.add_argument("--format", choices=("csv", "json"), default="json")

    parser = argparse.ArgumentParser(prog="starfactor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extremal", parents=[common], help="build G*, G1 or G2")
    p.add_argument("--kind", choices=("gstar", "g1", "g2"), required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("-i", type=int, default=1)
    p.set_defaults(func=cmd_extremal)

    for name, func, help_text in (
        ("spectra", cmd_spectra, "spectral radii, Wiener index and bounds of a graph file"),
        ("toughness", cmd_toughness, "isolated toughness with witness"),
        ("factor", cmd_factor, "search for a {K_1,j : m <= j <= 2m}-factor"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("graph", help="edge-list file, or - for stdin")
        if name == "factor":
            p.add_argument("-m", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-identities", parents=[common], help="polynomial, Wiener and quotient identities")
    p.add_argument("--ms", default=",".join(map(str, DEFAULT_MS)))
    p.add_argument("--bs", default=",".join(map(str, DEFAULT_BS)))
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--point", type=int, nargs=3, metavar=("N", "M", "B"))
    p.add_argument("--no-quotient-roots", action="store_true", help="skip the eigenvalue comparisons")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("verify-bounds", parents=[common], help="inequality chains of the three theorems")
    p.add_argument("--theorem", choices=(*THEOREMS, "all"), default="all")
    p.add_argument("--ms", default=",".join(map(str, DEFAULT_MS)))
    p.add_argument("--bs", default=",".join(map(str, DEFAULT_BS)))
    p.add_argument("--span", type=int, default=20, help="grid runs from the threshold to threshold + span")
    p.add_argument("--exact-only", action="store_true", help="skip floating-point eigenvalue checks")
    p.set_defaults(func=cmd_verify_bounds)

    p = sub.add_parser("search", parents=[common], help="random counterexample search near the extremal graph")
    p.add_argument("--theorem", choices=THEOREMS, default="adjacency")
    p.add_argument("-m", type=int, default=2)
    p.add_argument("-b", type=int, default=1)
    p.add_argument("-n", type=int, default=27)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--node-budget", type=int, default=search_mod.DEFAULT_NODE_BUDGET,
                   help="deterministic per-search node budget (0 disables)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("small-oracle", parents=[common], help="exhaustive deficiency-criterion and toughness checks")
    p.add_argument("--ms", default="2,3")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--toughness-n-max", type=int, default=None)
    p.set_defaults(func=cmd_small_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

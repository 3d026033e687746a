"""Command-line interface: verify suites, convergence studies, chain replay.

Exit codes: 0 all checks passed, 1 tolerance failure (report still
written), 2 usage or input error.  Reports are JSON with a schema version;
convergence tables are CSV; both get a companion PNG figure unless
--no-fig is given.  Thread count is controlled only by the BLAS
environment (e.g. OMP_NUM_THREADS); the tool reads no other environment.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .funcspecs import parse_function_spec
from .kazdan_warner import verify_proof_chain
from .suites import (
    CONVERGENCE_COLUMNS,
    SUITES,
    convergence_study,
    run_suite,
    write_csv,
)

SPEC_HELP = (
    "field spec: zero | constant:C | ylm:l,m,amp | "
    "sum:l,m,amp;l,m,amp | random:seed,lmax,amp"
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--f", default="ylm:2,0,0.2", metavar="SPEC", help=SPEC_HELP)
    parser.add_argument(
        "--h",
        default=None,
        metavar="SPEC",
        help="embedding exponent spec (defaults to --f)",
    )
    parser.add_argument("--seed", type=int, default=0, help="base seed for all sampled families")
    parser.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override a named tolerance (repeatable)",
    )
    parser.add_argument("--out", default=None, metavar="PATH", help="write JSON report here")
    parser.add_argument("--csv", default=None, metavar="PATH", help="write CSV table here")
    parser.add_argument("--fig", default=None, metavar="PATH", help="write PNG figure here")
    parser.add_argument(
        "--no-fig",
        action="store_true",
        help="suppress the figure that otherwise accompanies --out/--csv",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nullcone",
        description="Verify spectral identities of conformal sphere metrics "
        "and their lightcone embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument(
        "--band-limit", type=int, default=32, metavar="L", help="spectral band limit"
    )
    _add_common(p_verify)

    p_conv = sub.add_parser("convergence", help="residuals across band limits")
    p_conv.add_argument(
        "--band-limit",
        default="12,16,24,32",
        metavar="L1,L2,...",
        help="ascending comma-separated band limits",
    )
    _add_common(p_conv)

    p_chain = sub.add_parser("chain", help="replay the integral identity chain")
    p_chain.add_argument(
        "--band-limit", type=int, default=32, metavar="L", help="spectral band limit"
    )
    _add_common(p_chain)
    return parser


def _parse_tols(pairs: list[str]) -> dict[str, float]:
    out = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"--tol expects NAME=VALUE, got {pair!r}")
        out[name] = float(value)
    return out


def _figure_path(args) -> str | None:
    if args.no_fig:
        return None
    if args.fig:
        return args.fig
    anchor = args.out or args.csv
    if anchor is None:
        return None
    return str(Path(anchor).with_suffix(".png"))


def _cmd_verify(args) -> int:
    report = run_suite(
        args.suite,
        args.f,
        band_limit=args.band_limit,
        h_spec=args.h,
        seed=args.seed,
        tol_overrides=_parse_tols(args.tol),
    )
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status}  {check.name:32s} {check.value:.3e}  (tol {check.tolerance:.1e})")
    print(
        f"{'PASS' if report.passed else 'FAIL'}  suite={report.suite} "
        f"L={report.band_limit} wall={report.wall_time:.2f}s"
    )
    if args.out:
        Path(args.out).write_text(report.to_json())
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["name", "value", "tolerance", "passed"])
            for check in report.checks:
                writer.writerow(
                    [check.name, repr(check.value), repr(check.tolerance), check.passed]
                )
    fig = _figure_path(args)
    if fig:
        from .figures import render_report

        render_report(report, fig)
    return 0 if report.passed else 1


def _cmd_convergence(args) -> int:
    limits = [int(part) for part in str(args.band_limit).split(",") if part]
    rows = convergence_study(args.f, limits, h_spec=args.h, seed=args.seed)
    header = "  ".join(f"{c:>13s}" for c in CONVERGENCE_COLUMNS)
    print(header)
    for row in rows:
        print(
            "  ".join(
                f"{row[c]:13d}" if c == "band_limit" else f"{row[c]:13.3e}"
                for c in CONVERGENCE_COLUMNS
            )
        )
    if args.csv:
        write_csv(rows, args.csv)
    if args.out:
        Path(args.out).write_text(json.dumps(rows, indent=2))
    fig = _figure_path(args)
    if fig:
        from .figures import render_convergence

        render_convergence(rows, fig)
    return 0


def _cmd_chain(args) -> int:
    from .conformal import ckv_fields
    from .funcspecs import build_field
    from .sphere import build_grid

    tols = _parse_tols(args.tol)
    chain_tol = tols.get("chain_gap", 1e-7)
    grid = build_grid(args.band_limit)
    f = build_field(grid, parse_function_spec(args.f))
    payload = {
        "band_limit": args.band_limit,
        "f_spec": args.f,
        "tolerance": chain_tol,
        "axes": {},
    }
    ok = True
    for axis in (1, 2, 3):
        X = ckv_fields(grid)[axis - 1]
        report = verify_proof_chain(grid, f, X, tolerance=chain_tol)
        rel = report.chain_gap() / max(report.normalization, 1.0)
        ok = ok and report.passed
        payload["axes"][f"grad_x{axis}"] = {
            "values": list(report.chain_values),
            "normalization": report.normalization,
            "gap_relative": rel,
            "intrinsic_gap": report.extras["intrinsic_gap"],
            "passed": report.passed,
        }
        print(f"axis {axis}: gap={rel:.3e} {'PASS' if report.passed else 'FAIL'}")
        for k, value in enumerate(report.chain_values, start=1):
            print(f"    step {k}: {value: .6e}")
    payload["passed"] = ok
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True))
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["axis", "step", "value"])
            for axis, data in payload["axes"].items():
                for k, value in enumerate(data["values"], start=1):
                    writer.writerow([axis, k, repr(value)])
    fig = _figure_path(args)
    if fig:
        _render_chain_figure(payload, fig)
    return 0 if ok else 1


def _render_chain_figure(payload: dict, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    for label, data in payload["axes"].items():
        steps = range(1, len(data["values"]) + 1)
        ax.plot(steps, data["values"], marker="o", label=label)
    ax.set_xlabel("chain step")
    ax.set_ylabel("integral value")
    ax.set_title("integral identity replay (all steps should coincide)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "convergence":
            return _cmd_convergence(args)
        return _cmd_chain(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

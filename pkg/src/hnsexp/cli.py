"""Command-line entry point.

Exit codes: 0 success, 2 usage or input error, 3 verification failure.
JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import catalog as cat
from .core import HyperNum, multiply, natural_form
from .errors import HnsError
from .exponent import METHODS, applicable_methods, crosscheck, exp_series, exponential
from .spectral import DEFAULT_TRIALS, assoc_matrix, iso_signature, spectrum
from .verify import run_verification

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


def parse_coeffs(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"--coeffs must be comma-separated decimals, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise UsageError("--coeffs must be finite")
    return values


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _system(args):
    return cat.search(cat.user_catalog(args.catalog), args.system)


def _number(args, hns) -> HyperNum:
    if args.coeffs is None:
        raise UsageError("--coeffs is required")
    values = parse_coeffs(args.coeffs)
    if len(values) != hns.dim:
        raise UsageError(f"{hns.name} has dimension {hns.dim} but {len(values)} coefficients were given")
    return HyperNum(values, hns)


def _fmt_list(values) -> str:
    return "[" + ", ".join(f"{v:.10f}" for v in values) + "]"


def cmd_table(args) -> int:
    hns = _system(args)
    n = hns.dim
    grid = []
    for i in range(n):
        grid.append([natural_form(multiply(hns.basis(i + 1), hns.basis(j + 1))) for j in range(n)])
    header = [hns.name] + [f"e{j}" for j in range(1, n + 1)]
    rows = [header] + [[f"e{i}"] + grid[i - 1] for i in range(1, n + 1)]
    width = max(len(c) for r in rows for c in r)
    text = "\n".join("  ".join(c.ljust(width) for c in r).rstrip() for r in rows)
    _emit(args, {"system": hns.name, "dim": n, "table": grid}, text)
    return EXIT_OK


def cmd_exp(args) -> int:
    hns = _system(args)
    m = _number(args, hns)
    if args.method == "all":
        report = crosscheck(m, args.tol)
        lines = [f"system: {hns.name}", f"M = {natural_form(m)}"]
        for name, value in report.results.items():
            lines.append(f"{name:>7}: {_fmt_list(value.coeffs)}")
        for name, err in report.errors.items():
            lines.append(f"{name:>7}: error: {err}")
        status = "FAIL" if report.flagged else "ok"
        lines.append(f"max pairwise deviation: {report.max_pairwise_deviation:.3e} (tol {args.tol:g}) {status}")
        _emit(args, report.to_dict(), "\n".join(lines))
        return EXIT_VERIFY if report.flagged else EXIT_OK
    if args.method not in applicable_methods(hns):
        raise UsageError(
            f"method {args.method!r} does not apply to {hns.name}; applicable: {', '.join(applicable_methods(hns)) or 'none'}"
        )
    terms = None
    if args.method == "series":
        value, terms = exp_series(m)
    else:
        value = exponential(m, args.method)
    payload = {
        "system": hns.name,
        "coeffs": m.tolist(),
        "results": {args.method: value.tolist()},
        "deviation": 0.0,
        "terms_used": terms,
    }
    text = f"Exp({natural_form(m)}) [{args.method}]\n= {natural_form(value)}\n{_fmt_list(value.coeffs)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    hns = _system(args)
    m = _number(args, hns)
    spec = spectrum(assoc_matrix(m))
    sig = iso_signature(hns, args.trials, args.seed)
    payload = {
        "system": hns.name,
        "coeffs": m.tolist(),
        "spectrum": spec.to_dict(),
        "signature": {"label": sig.label, "r_count": sig.r_count, "c_count": sig.c_count},
    }
    lines = [f"system: {hns.name}", f"M = {natural_form(m)}"]
    lines.append("real roots: " + (", ".join(f"{r:.10g}" for r in spec.reals) or "none"))
    lines.append("pairs: " + (", ".join(f"{re:.10g} ± {im:.10g}i" for re, im in spec.pairs) or "none"))
    lines.append(f"signature: {hns.name} ≅ {sig.label}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    hns = _system(args)
    report = run_verification(hns, args.trials, args.tol, args.seed)
    lines = [f"verify {hns.name}: trials={args.trials} tol={args.tol:g} seed={args.seed}"]
    for s in report.suites:
        if s.skipped:
            lines.append(f"  {s.name:<22} skipped ({s.skipped})")
        else:
            flag = "PASS" if s.ok else "FAIL"
            lines.append(
                f"  {s.name:<22} {flag}  passed={s.passed} failed={s.failed} worst={s.worst:.3e} bound={s.bound:.1e}"
            )
    lines.append("all suites passed" if report.ok else "verification FAILED")
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_catalog(args) -> int:
    store = args.catalog if args.catalog is not None else cat.default_path()
    if args.action == "list":
        current = cat.user_catalog(store)
    elif args.action == "export":
        if not args.path:
            raise UsageError("catalog export needs --path")
        current = cat.user_catalog(store)
        cat.save(current, args.path)
        print(f"wrote {len(current.systems)} systems to {args.path}", file=sys.stderr)
    else:
        if not args.path:
            raise UsageError("catalog import needs --path")
        incoming = cat.load(args.path)
        existing = cat.load(store) if Path(store).exists() else cat.Catalog(cat.FORMAT_VERSION, [])
        cat.save(existing.merged(incoming), store)
        print(f"imported {len(incoming.systems)} systems into {store}", file=sys.stderr)
        current = cat.user_catalog(store)
    payload = {"systems": [{"name": h.name, "dim": h.dim} for h in current.systems]}
    _emit(args, payload, "\n".join(f"{h.name}\t{h.dim}" for h in current.systems))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--catalog", default=None, help=f"user catalog file (default: ${cat.ENV_VAR} or ~/.hnsexp/catalog.json)")

    parser = argparse.ArgumentParser(prog="hnsexp", description="Exponentials in hypercomplex number systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print a Cayley table")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("exp", parents=[common], help="exponential of a hypercomplex number")
    p.add_argument("--system", required=True)
    p.add_argument("--coeffs", help="comma-separated coefficients, e.g. 1,0.5,-0.2 (use --coeffs=-1,2 for a leading minus)")
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    p.add_argument("--tol", type=positive_float, default=1e-8)
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of the associated matrix")
    p.add_argument("--system", required=True)
    p.add_argument("--coeffs")
    p.add_argument("--trials", type=positive_int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run the seeded property suites")
    p.add_argument("--system", required=True)
    p.add_argument("--trials", type=positive_int, default=100)
    p.add_argument("--tol", type=positive_float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list, export or import systems")
    p.add_argument("action", choices=("list", "export", "import"))
    p.add_argument("--path")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, HnsError, OSError) as exc:
        print(f"hnsexp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 success, 1 verification or tolerance failure, 2 usage or config error.

A ``--config FILE`` of ``key=value`` lines supplies defaults for the chosen
command (keys are the long option names, with ``-`` or ``_``); flags given on the
command line win.  Relative ``--out`` paths are resolved against
``$COALSPIN_OUT_DIR`` when it is set.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__

OUT_DIR_ENV = "COALSPIN_OUT_DIR"


class ConfigError(ValueError):
    pass


def read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _out_path(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(text: str, out: str | None) -> None:
    path = _out_path(out)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hbar", default="1", help="hbar (rational p/q or float)")
    p.add_argument("--alpha", default="1", help="Coulomb strength alpha > 0")
    p.add_argument("--gamma", default="0", help="spin-orbit parameter gamma")


def _params(args) -> dict:
    from .spectral import parse_number

    return {name: parse_number(getattr(args, name)) for name in ("hbar", "alpha", "gamma")}


# -- commands ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .report import reports_to_json
    from .verifier import ALL_SUITES, UnknownSuite, parse_suite_id, run_suite

    suites = list(ALL_SUITES) if args.all else list(args.suite or [])
    if not suites:
        print("verify: give --suite ID (repeatable) or --all", file=sys.stderr)
        return 2
    for s in suites:
        try:
            parse_suite_id(s)
        except UnknownSuite:
            print(f"verify: unknown suite {s!r}; known: {', '.join(ALL_SUITES)}", file=sys.stderr)
            return 2
    reports = [run_suite(s) for s in suites]
    if args.format == "json":
        text = reports_to_json(reports, timings=args.timings)
    else:
        text = "".join(r.to_text(timings=args.timings, residuals=args.residuals) for r in reports)
        ok = all(r.passed for r in reports)
        text += f"overall: {'PASS' if ok else 'FAIL'}\n"
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _rows_text(rows) -> str:
    lines = [f"{'branch':6} {'l':>2} {'2j':>3} {'n':>2} {'E_closed':>22} {'E_fd':>22} {'rel_error':>10}  status"]
    for r in rows:
        ec = "" if r.energy_closed is None else f"{r.energy_closed:.15g}"
        ef = "" if r.energy_fd is None else f"{r.energy_fd:.15g}"
        er = "" if r.rel_error is None else f"{r.rel_error:.3e}"
        lines.append(f"{r.branch:6} {r.l:>2} {r.two_j:>3} {r.n:>2} {ec:>22} {ef:>22} {er:>10}  {r.status}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    from .spectral import BRANCHES, DomainError, rows_to_csv, rows_to_json, spectrum_rows

    try:
        params = _params(args)
        branches = BRANCHES if args.branch == "both" else (args.branch,)
        rows = spectrum_rows(
            params,
            lmax=args.lmax,
            nmax=args.nmax,
            branches=branches,
            points=args.points,
            scheme=args.scheme,
            extrapolate=not args.no_extrapolate,
            numeric=not args.closed_only,
        )
    except DomainError as exc:
        print(f"spectrum: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"spectrum: {exc}", file=sys.stderr)
        return 2
    fmt = {"csv": rows_to_csv, "json": rows_to_json, "text": _rows_text}[args.format]
    _emit(fmt(rows), args.out)
    bad_domain = [r for r in rows if r.status.startswith("domain")]
    for r in bad_domain:
        print(f"spectrum: {r.branch} l={r.l} 2j={r.two_j} n={r.n}: {r.status}", file=sys.stderr)
    if bad_domain:
        return 1
    if args.closed_only:
        return 0
    return 0 if all(r.ok(args.tol) for r in rows) else 1


def cmd_wavefunction(args) -> int:
    from .spectral import DomainError, closed_form_wavefunction

    try:
        params = _params(args)
        if args.samples < 2 or not 0 < args.r_min < args.r_max:
            raise ValueError("need 0 < r-min < r-max and at least 2 samples")
        lines = ["r,rho"]
        step = (args.r_max - args.r_min) / (args.samples - 1)
        for i in range(args.samples):
            r = args.r_min + i * step
            lines.append(f"{r!r},{closed_form_wavefunction(args.n, args.two_j, args.branch, params, r)!r}")
    except DomainError as exc:
        print(f"wavefunction: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"wavefunction: {exc}", file=sys.stderr)
        return 2
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_degeneracy(args) -> int:
    from .spectral import degeneracy_table, degeneracy_to_json

    try:
        params = _params(args)
        levels = degeneracy_table(params, args.nmax)
    except ValueError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = degeneracy_to_json(levels, params, args.nmax)
    else:
        lines = []
        for lv in levels:
            e = str(lv.energy_exact) if lv.energy_exact is not None else f"{lv.energy:.15g}"
            states = " ".join(f"({n},{tj}/2,{br})" for n, tj, br in lv.states)
            lines.append(f"E={e}  multiplicity={lv.multiplicity}  {states}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_catalog_dump(args) -> int:
    from .models import MissingParameter, UnknownKey, catalog_names, dump_catalog

    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            print(f"catalog-dump: --param expects key=value, got {item!r}", file=sys.stderr)
            return 2
        params[key.strip()] = value.strip()
    names = args.names or None
    if names:
        unknown = [n for n in names if n not in catalog_names()]
        if unknown:
            print(f"catalog-dump: unknown key(s): {', '.join(unknown)}", file=sys.stderr)
            return 2
    try:
        text = dump_catalog(names, params or None)
    except (UnknownKey, MissingParameter, ValueError) as exc:
        print(f"catalog-dump: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def cmd_compare(args) -> int:
    from .spectral import grid_study, spectrum_rows
    from .verifier import x_construction_summary

    lines = ["# X constructions (pairwise differences)"]
    summary = x_construction_summary()
    for key in sorted(summary):
        lines.append(f"{key}: {summary[key]}")
    agree = sorted(k for k, v in summary.items() if v == "equal")
    lines.append("exactly equal: " + (", ".join(agree) if agree else "none"))
    try:
        params = _params(args)
    except ValueError as exc:
        print(f"compare: {exc}", file=sys.stderr)
        return 2
    rows = spectrum_rows(params, lmax=args.lmax, nmax=args.nmax)
    worst = max((r.rel_error for r in rows if r.rel_error is not None), default=None)
    lines.append("")
    lines.append("# finite differences vs closed form")
    lines.append(f"levels compared: {sum(r.rel_error is not None for r in rows)}")
    lines.append(f"max rel_error: {'n/a' if worst is None else f'{worst:.3e}'}")
    if args.grid_study:
        lines.append("")
        lines.append("# grid study (unextrapolated)")
        studies = [
            ("plain", "plus", 0, 0, {"hbar": 1, "alpha": 1, "gamma": 0}),
            ("weighted", "plus", 0, 0, {**params}),
            ("weighted", "minus", 0, 0, {**params}),
        ]
        for scheme, branch, l, n, p_ in studies:
            try:
                study = grid_study(branch, l, n, p_, scheme=scheme)
            except ValueError as exc:
                lines.append(f"{scheme} {branch} l={l} n={n}: skipped ({exc})")
                continue
            lines.append(f"{scheme} {branch} l={l} n={n} gamma={p_['gamma']}:")
            for row in study:
                ratio = "" if row.ratio is None else f"  ratio={row.ratio:.3f}"
                lines.append(f"  points={row.points} h={row.h:.6g} rel_error={row.rel_error:.3e}{ratio}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coalspin", description="Exact and numerical checks of the spin-orbit Coulomb system.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value file with defaults for this command")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("verify", help="run exact relation suites")
    common(p)
    p.add_argument("--suite", action="append", help="suite id, e.g. CONSERVE_3D or SL2(3); repeatable")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall times (output no longer byte-stable)")
    p.add_argument("--residuals", action="store_true", help="print residual terms of failing relations")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="closed-form and finite-difference bound spectrum")
    common(p)
    _add_params(p)
    p.add_argument("--lmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--branch", choices=("plus", "minus", "both"), default="both")
    p.add_argument("--points", type=int, default=20000)
    p.add_argument("--scheme", choices=("weighted", "plain"), default="weighted")
    p.add_argument("--no-extrapolate", action="store_true")
    p.add_argument("--closed-only", action="store_true", help="skip the numerical oracle")
    p.add_argument("--tol", type=float, default=5e-6, help="relative error threshold")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="tabulate a closed-form radial eigenfunction")
    common(p)
    _add_params(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--two-j", type=int, default=1, help="2j (odd integer)")
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--r-min", type=float, default=0.01)
    p.add_argument("--r-max", type=float, default=20.0)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("degeneracy", help="degeneracy table of the closed-form levels")
    common(p)
    _add_params(p)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("catalog-dump", help="serialize catalog operators")
    common(p)
    p.add_argument("names", nargs="*", help="catalog keys (default: all)")
    p.add_argument("--param", action="append", help="exact binding such as gamma=1/2; repeatable")
    p.set_defaults(func=cmd_catalog_dump)

    p = sub.add_parser("compare", help="X-construction diffs and finite-difference accuracy")
    common(p)
    _add_params(p)
    p.add_argument("--lmax", type=int, default=2)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--grid-study", action="store_true", help="errors at three resolutions")
    p.set_defaults(func=cmd_compare)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    values = read_config(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]  # noqa: SLF001
    known = {a.dest: a for a in sub._actions}  # noqa: SLF001
    defaults = {}
    for key, raw in values.items():
        action = known.get(key)
        if action is None or key in ("config", "help", "func"):
            raise ConfigError(f"unknown config key {key!r} for {args.command}")
        if isinstance(action, argparse._StoreTrueAction):  # noqa: SLF001
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(action, argparse._AppendAction):  # noqa: SLF001
            defaults[key] = [v.strip() for v in raw.split(",") if v.strip()]
        else:
            conv = action.type or str
            try:
                val = conv(raw)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {raw!r}") from exc
            if action.choices and val not in action.choices:
                raise ConfigError(f"bad value for {key}: {raw!r}")
            defaults[key] = val
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
    except ConfigError as exc:
        print(f"coalspin: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line front end: every pipeline writes one JSON report document.

Exit status is 0 when every certification in the report passed, 2 when an
identity or numerical check failed, and 1 for bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Sequence

from . import __version__
from .bessel import comparison_table, wronskian_over_bessel, wronskian_over_operator, write_csv
from .chain import (ChainError, ChainSpec, Family, PotentialParams, crum_vs_stepwise_many,
                    filtered_interval, gm_seed_selection, predict_filtered_spectrum,
                    schrodinger_residual, verify_gm_theorem, verify_shape_invariance)
from .ring import trig_expand
from .seeds import SeedKind
from .seedexpr import SeedSemanticError, SeedSyntaxError, parse_seed, pretty, to_seedspec
from .spectral import SolverConfig, SpectralError, solve_dirichlet
from .wronskian import potential_from_wronskian, wronskian

__all__ = ["run_command", "render", "main", "UsageError", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _interval(text: str) -> tuple:
    try:
        lo, hi = (float(eval_number(t)) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"interval must be 'lo,hi': {exc}") from None
    return lo, hi


def eval_number(text: str) -> float:
    """Float literal, optionally written as a multiple of ``pi`` (``pi/2``, ``0.5pi``)."""
    t = text.strip().lower()
    if "pi" not in t:
        return float(t)
    head, _, tail = t.partition("pi")
    factor = float(head.rstrip("*")) if head.rstrip("*") else 1.0
    if tail:
        if not tail.startswith("/"):
            raise ValueError(f"bad multiple of pi: {text!r}")
        factor /= float(tail[1:])
    return factor * math.pi


def _build_parser() -> _Parser:
    p = _Parser(prog="darboux-wronskian", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, m=True, n=True, m_required=True):
        if m:
            sp.add_argument("--m", type=int, required=m_required)
        if n:
            sp.add_argument("--n", type=int, default=0)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("verify-gm", help="certify -2 (ln W)'' for the Gaillard-Matveev seed tuple")
    common(sp)
    sp = sub.add_parser("verify-si", help="certify shape invariance of the TDPT family")
    common(sp)
    sp = sub.add_parser("chain", help="Crum formula against stepwise dressing")
    common(sp, m_required=False)
    sp.add_argument("--seed", action="append", default=None,
                    help="seed expression such as 'sin(3x)'; repeat for a chain (overrides --m/--n)")
    sp.add_argument("--levels", type=int, default=None,
                    help="compare targets sin(kx) up to k = levels (default m + n + 4)")
    sp = sub.add_parser("spectrum", help="Dirichlet eigenvalues by Numerov shooting")
    common(sp, m=False, n=False)
    sp.add_argument("--potential", choices=[f.value for f in Family], default="tdpt")
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--grid", type=int, default=20000)
    sp.add_argument("--interval", type=_interval, default=None)
    sp.add_argument("--method", choices=("numerov", "fd"), default="numerov")
    sp = sub.add_parser("bessel", help="three-way Rayleigh comparison for m(m+1)/x^2")
    common(sp, n=False)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--points", type=int, default=20)
    sp.add_argument("--interval", type=_interval, default=(0.1, 10.0))
    sp = sub.add_parser("filter-predict", help="levels surviving a singular sin-seed chain")
    common(sp)
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--grid", type=int, default=None,
                    help="also solve numerically on this many points and compare")
    return p


# -- commands -------------------------------------------------------------


def _cmd_verify_gm(a):
    cert = verify_gm_theorem(a.m, a.n)
    return cert.identity_verified, cert.to_dict(timing=False), None


def _cmd_verify_si(a):
    cert = verify_shape_invariance(a.m, a.n)
    return cert.identity_verified, cert.to_dict(timing=False), None


def _cmd_chain(a):
    if a.seed:
        specs = tuple(to_seedspec(parse_seed(s)) for s in a.seed)
        if any(s.kind not in (SeedKind.SIN, SeedKind.COS) for s in specs):
            raise UsageError("chain compares sin(kx) targets; polynomial seeds belong to 'bessel'")
        chain = ChainSpec(specs, PotentialParams(Family.ZERO))
        top = a.levels or max(s.k for s in specs) + 4
        labels = [pretty(parse_seed(s)) for s in a.seed]
    elif a.m is None:
        raise UsageError("chain needs --m (with optional --n) or at least one --seed")
    else:
        chain = gm_seed_selection(a.m, a.n)
        top = a.levels or a.m + a.n + 4
        labels = [s.label for s in chain.seeds]
    used = {s.k for s in chain.seeds}
    ks = [k for k in range(1, top + 1) if k not in used]
    comps = crum_vs_stepwise_many(chain, [trig_expand("sin", k) for k in ks])
    w = wronskian(chain.realize())
    v = potential_from_wronskian(w)
    rows = []
    ok = True
    for k, c in zip(ks, comps):
        residual_zero = schrodinger_residual(c.crum_state, v, c.energy).is_zero()
        ok = ok and bool(c) and c.potential_agrees and residual_zero
        rows.append({"target": f"sin({k}x)", "energy": str(c.energy), "agrees": c.agrees,
                     "scale": None if c.scale is None else str(c.scale),
                     "potential_agrees": c.potential_agrees, "residual_zero": residual_zero})
    result = {"seeds": labels, "wronskian": w.to_str(), "comparisons": rows}
    return ok, result, rows


def _spectrum_config(potential: str, interval, grid: int, levels: int, method: str):
    if interval is None:
        interval = (0.0, math.pi / 2) if potential == "tdpt" else (0.0, math.pi)
    return SolverConfig(grid_points=grid, interval=interval, eigen_count=levels, method=method)


def _cmd_spectrum(a):
    params = PotentialParams(Family(a.potential), a.m, a.n)
    cfg = _spectrum_config(a.potential, a.interval, a.grid, a.levels, a.method)
    res = solve_dirichlet(params.function(), cfg)
    result = {"potential": params.to_dict() | {"interval": list(cfg.interval)}} | res.to_dict()
    rows = [{"index": i, "eigenvalue": e, "node_count": n, "residual": r}
            for i, (e, n, r) in enumerate(zip(res.eigenvalues, res.node_counts, res.residuals))]
    ok = res.node_counts == list(range(len(res.node_counts)))
    return ok, result, rows


def _cmd_bessel(a):
    if a.m < 0 or a.k <= 0 or a.points < 1:
        raise UsageError("bessel needs m >= 0, k > 0 and points >= 1")
    lo, hi = a.interval
    xs = [lo + (hi - lo) * i / max(1, a.points - 1) for i in range(a.points)]
    rows = comparison_table(a.m, a.k, xs)
    cw = wronskian_over_bessel(a.m, a.k)
    co = cw / wronskian_over_operator(a.m)
    dev_w = dev_o = 0.0
    for r in rows:
        ref = r["bessel_oracle"]
        scale = max(abs(ref), 1e-300)
        dev_w = max(dev_w, abs(r["wronskian_route"] - cw * ref) / (abs(cw) * scale))
        dev_o = max(dev_o, abs(r["operator_route"] - co * ref) / (abs(co) * scale))
    ok = dev_w < 1e-8 and dev_o < 1e-8
    result = {
        "m": a.m, "k": a.k,
        "ratio_wronskian_to_oracle": cw, "ratio_operator_to_oracle": co,
        "max_relative_deviation": {"wronskian_route": dev_w, "operator_route": dev_o},
        "rows": rows,
    }
    return ok, result, rows


def _cmd_filter_predict(a):
    chain = gm_seed_selection(a.m, a.n)
    top = max(s.k for s in chain.seeds) + 1
    levels = predict_filtered_spectrum(chain, top)
    for _ in range(8):
        if len(levels) >= a.levels:
            break
        top += 2 * a.levels
        levels = predict_filtered_spectrum(chain, top)
    else:
        raise ChainError(f"fewer than {a.levels} surviving levels below k = {top}")
    levels = levels[: a.levels]
    lo, hi = filtered_interval(chain)
    result = {"seeds": [s.label for s in chain.seeds], "interval": [lo, hi],
              "levels": [{"energy": e, "free_state": lbl} for e, lbl in levels]}
    ok = True
    rows = [{"energy": e, "free_state": lbl} for e, lbl in levels]
    if a.grid:
        cfg = SolverConfig(grid_points=a.grid, interval=(lo, hi), eigen_count=a.levels)
        res = solve_dirichlet(chain.target.function(), cfg)
        diffs = [abs(x - e) for x, (e, _) in zip(res.eigenvalues, levels)]
        ok = max(diffs) <= 1e-4
        result["numerical"] = {"eigenvalues": res.eigenvalues, "max_abs_difference": max(diffs)}
        for row, x in zip(rows, res.eigenvalues):
            row["numerical"] = x
    return ok, result, rows


_COMMANDS = {
    "verify-gm": _cmd_verify_gm,
    "verify-si": _cmd_verify_si,
    "chain": _cmd_chain,
    "spectrum": _cmd_spectrum,
    "bessel": _cmd_bessel,
    "filter-predict": _cmd_filter_predict,
}


def _echo(a) -> dict:
    skip = {"out", "format"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(a).items() if k not in skip}


def _rows_to_csv(rows: list, command: str) -> str:
    buf = io.StringIO()
    if command == "bessel":
        write_csv(rows, buf)
        return buf.getvalue()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _execute(argv: Sequence[str]):
    try:
        args = _build_parser().parse_args(list(argv))
    except UsageError as exc:
        return EXIT_USAGE, {"error": str(exc)}, None, None
    t0 = time.perf_counter()
    try:
        ok, result, rows = _COMMANDS[args.command](args)
    except (UsageError, ChainError, SeedSyntaxError, SeedSemanticError, ValueError, TypeError) as exc:
        return EXIT_USAGE, {"error": str(exc)}, None, args
    except SpectralError as exc:
        ok, result, rows = False, {"error": str(exc)}, None
    report = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": {"name": args.command, "args": _echo(args)},
        "passed": bool(ok),
        "results": result,
        "timing": {"wall_time_s": time.perf_counter() - t0},
    }
    return (EXIT_OK if ok else EXIT_FAILED), report, rows, args


def run_command(argv: Sequence[str]) -> tuple:
    """Run one subcommand and return ``(exit_code, report)``.

    On a usage error the report is ``{"error": message}``.  Nothing is printed.
    """
    code, report, _, _ = _execute(argv)
    return code, report


def render(report: dict, rows: list | None = None, fmt: str = "json") -> str:
    """Serialise a report; CSV output carries the tabular part only."""
    if fmt == "csv" and rows is not None:
        return _rows_to_csv(rows, report["command"]["name"])
    return json.dumps(report, indent=2, default=str) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, report, rows, args = _execute(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if code == EXIT_USAGE:
        print(f"error: {report['error']}", file=sys.stderr)
        return code
    text = render(report, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

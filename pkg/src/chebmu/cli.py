"""Command-line front end.

Commands: sums, verify, analytic, primes, count-ideals. All reports are
tab-separated with '.' decimals and 10 significant digits; byte-identical
across runs and worker counts for identical configs.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 data/classification error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from .analytic import default_table, gamma_bound, smooth_count
from .configs import load_extension, load_field
from .errors import (
    ConfigError,
    IndexDivisorError,
    InvariantsUnavailableError,
    NormOverflowError,
    UnclassifiablePrimeError,
)
from .galois import prime_census
from .moebius import mertens_series, qc_series, s_c_series
from .numberfield import count_ideals, residue, residue_from_invariants
from .verify import run_verification

log = logging.getLogger("chebmu")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DATA = 3

TSV_HEADER = "X\tseries\tlabel\tvalue\treference_value\tabs_diff"


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    return format(v, ".10g")


def _write(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_checkpoints(arg: str | None, x_max: int) -> list[int]:
    if not arg:
        return [x_max]
    try:
        cps = [int(tok) for tok in arg.split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"--checkpoints: {exc}") from exc
    if not cps or any(a >= b for a, b in zip(cps, cps[1:])):
        raise ConfigError("--checkpoints must be strictly ascending")
    if cps[-1] > x_max:
        raise ConfigError("--checkpoints must not exceed --xmax")
    return cps


def _field_residue(spec, x_max: int) -> float:
    try:
        c_k = residue_from_invariants(spec)
        log.info("zeta residue from invariants: %.10g", c_k)
        return c_k
    except InvariantsUnavailableError:
        c_k = residue(spec, x_max)
        log.info("zeta residue estimated by ideal counting at %d: %.10g",
                 x_max, c_k)
        return c_k


def cmd_sums(args) -> int:
    spec = load_field(args.field)
    if not args.ext:
        raise ConfigError("sums requires --ext")
    ext = load_extension(args.ext)
    if args.xmax < 2:
        _write(TSV_HEADER + "\n", args.out)
        return EXIT_OK
    cps = _parse_checkpoints(args.checkpoints, args.xmax)
    inclusive = args.boundary == "inclusive"
    c_k = _field_residue(spec, args.xmax)
    series = s_c_series(spec, ext, cps, boundary_inclusive=inclusive,
                        workers=args.workers)
    series = series.merged_with(
        mertens_series(spec, cps, boundary_inclusive=inclusive,
                       workers=args.workers, c_k=c_k))
    qc = qc_series(spec, ext, cps, boundary_inclusive=inclusive,
                   workers=args.workers, c_k=c_k)
    series = series.merged_with(qc)
    for lab, kp in (qc.kprime or {}).items():
        log.info("fitted log-comparison constant for %s: %.6f", lab, kp)
    _write(series.to_tsv(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_field(args.field)
    ext = load_extension(args.ext) if args.ext else None
    report = run_verification(spec, ext, args.xmax)
    text = "\n".join(report.lines()) + "\n"
    _write(text, args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_analytic(args) -> int:
    table = default_table()
    rows = [TSV_HEADER]
    violation = False
    beta = 0.0
    while beta <= table.beta_max + 1e-9:
        r = table.rho(min(beta, table.beta_max))
        bound = gamma_bound(beta)
        rows.append(f"{_fmt(beta)}\trho\t\t{_fmt(r)}\t{_fmt(bound)}"
                    f"\t{_fmt(abs(r - bound))}")
        if r > bound * (1 + 1e-12):
            violation = True
        beta += 0.25
    if args.field and args.xmax:
        spec = load_field(args.field)
        x = args.xmax
        for y in (math.isqrt(x), x):
            sc = smooth_count(spec, x, y)
            rows.append(f"{x}\tsmooth_exact\tY={y}\t{sc.exact}"
                        f"\t{_fmt(sc.predicted)}\t{_fmt(abs(sc.exact - sc.predicted))}")
            rows.append(f"{x}\tsmooth_rel_error\tY={y}\t{_fmt(sc.rel_error)}\t\t")
    _write("\n".join(rows) + "\n", args.out)
    return EXIT_VERIFY if violation else EXIT_OK


def cmd_primes(args) -> int:
    spec = load_field(args.field)
    if not args.ext:
        raise ConfigError("primes requires --ext")
    ext = load_extension(args.ext)
    rep = prime_census(spec, ext, args.xmax)
    x = args.xmax
    rows = [TSV_HEADER]
    rows.append(f"{x}\tpi\t\t{rep.total}\t{_fmt(rep.li_value)}"
                f"\t{_fmt(abs(rep.total - rep.li_value))}")
    for lab in rep.counts:
        w = rep.weights[lab]
        main_term = w * rep.li_value
        rows.append(f"{x}\tpi_C\t{lab}\t{rep.counts[lab]}\t{_fmt(main_term)}"
                    f"\t{_fmt(rep.li_deviation[lab])}")
        rows.append(f"{x}\tpi_C_ratio\t{lab}\t{_fmt(rep.ratios[lab])}\t{_fmt(w)}"
                    f"\t{_fmt(abs(rep.ratios[lab] - w))}")
    rows.append(f"{x}\tpi_ramified\t\t{rep.ramified}\t\t")
    _write("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_count_ideals(args) -> int:
    spec = load_field(args.field)
    res = count_ideals(spec, args.xmax)
    rows = [TSV_HEADER]
    rows.append(f"{args.xmax}\tideal_count\t\t{res.count}\t\t")
    try:
        c_k = residue_from_invariants(spec)
        rows.append(f"{args.xmax}\tideal_count_ratio\t\t{_fmt(res.ratio)}"
                    f"\t{_fmt(c_k)}\t{_fmt(abs(res.ratio - c_k))}")
    except InvariantsUnavailableError:
        rows.append(f"{args.xmax}\tideal_count_ratio\t\t{_fmt(res.ratio)}\t\t")
    _write("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebmu",
        description="Chebotarev densities as Mobius-weighted sums over ideals. "
                    "The logarithmic integral columns use the offset li(x) = "
                    "integral from 2 to x of dt/log t.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_xmax=True):
        p.add_argument("--field", required=True,
                       help="field config path or bundled name (gaussian, zeta7, sqrt2)")
        p.add_argument("--ext", default=None,
                       help="extension config path or bundled name (example1, example2)")
        if need_xmax:
            p.add_argument("--xmax", type=int, required=True, help="norm bound")
        p.add_argument("--workers", type=int, default=1, help="worker processes")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--boundary", choices=("inclusive", "exclusive"),
                       default="inclusive",
                       help="count ideals with N(I) = X at checkpoint X or not")

    p = sub.add_parser("sums", help="S_C, Mertens, and Q-series TSV report")
    common(p)
    p.add_argument("--checkpoints", default=None,
                   help="comma-separated ascending checkpoints (default: xmax)")
    p.set_defaults(fn=cmd_sums)

    p = sub.add_parser("verify", help="duality / decomposition / census suites")
    common(p, need_xmax=False)
    p.add_argument("--xmax", type=int, default=2000, help="verification bound")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("analytic", help="Dickman grid, Gamma-bound margins, "
                                        "smooth-ideal comparisons")
    p.add_argument("--field", default=None)
    p.add_argument("--xmax", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_analytic)

    p = sub.add_parser("primes", help="prime census per conjugacy class")
    common(p)
    p.set_defaults(fn=cmd_primes)

    p = sub.add_parser("count-ideals", help="exact ideal count and residue ratio")
    p.add_argument("--field", required=True)
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_count_ideals)

    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("CHEB_SEED_LOG", "").lower()
    if level in ("debug", "info"):
        logging.basicConfig(stream=sys.stderr,
                            level=getattr(logging, level.upper()),
                            format="%(name)s %(levelname)s %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnclassifiablePrimeError as exc:
        print(f"classification error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except IndexDivisorError as exc:
        print(f"decomposition error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NormOverflowError as exc:
        print(f"bound too large: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

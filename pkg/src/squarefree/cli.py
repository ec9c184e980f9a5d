"""Command-line frontend: every module as a subcommand with JSON/CSV output.

Exit status: 0 on success, 1 on a domain error (including usage errors),
2 on a precision error.  Phases are always parsed as exact L/DSQ rationals.
Output for a fixed command line and version is byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import IO, Sequence

import numpy as np

from . import averages, correlations, density, kronecker, sieve, spectral, verify
from .correlations import DENSITY, LagTuple
from .errors import DomainError, PrecisionError
from .euler import FIXED_CUTOFF, TruncationPolicy
from .spectral import parse_phase

ENV_TOLERANCE = "SQF_TRUNC_TOL"


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; remap to the domain
    error status so 2 stays reserved for precision failures."""

    def error(self, message: str):  # noqa: A002 - argparse API
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _policy_from(args: argparse.Namespace) -> TruncationPolicy:
    tolerance = getattr(args, "tol", None)
    cutoff = getattr(args, "cutoff", None)
    if tolerance is None:
        env = os.environ.get(ENV_TOLERANCE)
        if env is not None:
            try:
                tolerance = float(env)
            except ValueError as exc:
                raise DomainError(f"bad {ENV_TOLERANCE} value {env!r}") from exc
    if cutoff is not None:
        return TruncationPolicy(mode=FIXED_CUTOFF, cutoff=cutoff, tolerance=tolerance)
    if tolerance is not None:
        return TruncationPolicy.with_tolerance(tolerance)
    return TruncationPolicy()


def _parse_lags(text: str) -> LagTuple:
    text = text.strip()
    if not text:
        return LagTuple(())
    try:
        return LagTuple(tuple(int(part) for part in text.split(",")))
    except ValueError as exc:
        raise DomainError(f"bad lag list {text!r}: {exc}") from exc


def _parse_primes(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad prime list {text!r}: {exc}") from exc


def _open_out(args: argparse.Namespace) -> IO[str]:
    path = getattr(args, "out", None)
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def _close_out(stream: IO[str]) -> None:
    if stream is not sys.stdout:
        stream.close()


def _emit_json(doc: dict, args: argparse.Namespace) -> None:
    stream = _open_out(args)
    try:
        json.dump(doc, stream, sort_keys=True, indent=2)
        stream.write("\n")
    finally:
        _close_out(stream)


def _emit_rows(header: Sequence[str], rows, args: argparse.Namespace) -> None:
    stream = _open_out(args)
    try:
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(str(x) for x in row) + "\n")
    finally:
        _close_out(stream)


def _corr_doc(lags: LagTuple, cv: correlations.CorrelationValue) -> dict:
    return {
        "lags": list(lags.lags),
        "method": cv.method,
        "value": cv.value,
        "tail_bound": cv.tail_bound,
        "n": cv.n,
    }


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_sieve(args) -> None:
    if args.format == "csv":
        stream = _open_out(args)
        try:
            sieve.export_csv(args.start, args.length, stream)
        finally:
            _close_out(stream)
        return
    block = sieve.sieve_squarefree(args.start, args.length)
    if args.format == "raw":
        path = getattr(args, "out", None)
        if path in (None, "-"):
            sys.stdout.buffer.write(block.to_bytes())
        else:
            with open(path, "wb") as fh:
                fh.write(block.to_bytes())
        return
    _emit_json(
        {
            "start": block.start,
            "length": block.length,
            "count": block.popcount(),
            "frequency": block.popcount() / block.length,
        },
        args,
    )


def _cmd_corr(args) -> None:
    policy = _policy_from(args)
    if args.action == "empirical":
        lags = _parse_lags(args.lags)
        _emit_json(_corr_doc(lags, correlations.empirical_correlation(lags, args.limit)), args)
    elif args.action == "exact":
        lags = _parse_lags(args.lags)
        _emit_json(_corr_doc(lags, correlations.mirsky_correlation(lags, policy)), args)
    elif args.action == "sumform":
        cv = correlations.c2_sum_form(args.k, policy)
        _emit_json(_corr_doc(LagTuple((args.k,) if args.k else ()), cv), args)
    elif args.action == "sigma":
        value = correlations.sigma_d(args.d, policy)
        _emit_json({"d": args.d, "sigma": value}, args)
    elif args.action == "levelset":
        mask = sieve.mu2_indicator(1, args.dmax)
        rows = []
        total = 0.0
        for d in range(1, args.dmax + 1):
            if not mask[d - 1]:
                continue
            dens = correlations.level_set_density(d)
            total += dens
            rows.append(
                {
                    "d": d,
                    "coefficient_over_pi2": _frac(correlations.level_set_coefficient(d)),
                    "density": dens,
                }
            )
        _emit_json({"dmax": args.dmax, "levels": rows, "total_mass": total}, args)
    elif args.action == "hall":
        lags = _parse_lags(args.lags)
        value = correlations.hall_series_partial(lags, args.smax)
        _emit_json(
            {"lags": list(lags.lags), "method": "hall", "value": value,
             "s_max": args.smax, "tail_bound": None, "n": None},
            args,
        )
    elif args.action == "levelset-figure":
        values = correlations.c2_values(args.kmax, policy)
        classes = sieve.square_radical_range(1, args.kmax)
        rows = (
            (k, repr(float(values[k - 1])), int(classes[k - 1]))
            for k in range(1, args.kmax + 1)
        )
        _emit_rows(("k", "c2", "d_class"), rows, args)
    else:  # pragma: no cover
        raise DomainError(f"unknown corr action {args.action!r}")


def _cmd_avg(args) -> None:
    policy = _policy_from(args)
    if args.action == "progression":
        query = averages.ProgressionQuery.of(args.d, args.t)
        doc = {
            "d": args.d,
            "t": args.t,
            "gcd": query.g,
            "limit_value": averages.progression_average_limit(query),
        }
        if args.limit:
            doc["cesaro"] = averages.cesaro_progression_average(query, args.limit, policy)
            doc["terms"] = args.limit
        _emit_json(doc, args)
    elif args.action == "y2":
        lam = parse_phase(args.phase)
        doc = {"phase": str(lam), "closed_form": averages.y2(lam)}
        if args.limit:
            got = averages.cesaro_y2(lam, args.limit, policy)
            doc.update({"cesaro_real": got.real, "cesaro_imag": got.imag, "n": args.limit})
        _emit_json(doc, args)
    elif args.action == "y3":
        lam1, lam2 = parse_phase(args.phase1), parse_phase(args.phase2)
        doc = {
            "phase1": str(lam1),
            "phase2": str(lam2),
            "product": str(spectral.lambda_mul(lam1, lam2)),
            "closed_form": averages.y3(lam1, lam2),
        }
        if args.n1 and args.n2:
            got = averages.cesaro_y3(lam1, lam2, args.n1, args.n2, policy)
            doc.update({"cesaro_real": got.real, "cesaro_imag": got.imag,
                        "n1": args.n1, "n2": args.n2})
        _emit_json(doc, args)
    elif args.action == "count":
        _emit_json(
            {
                "d": args.d,
                "closed_form": averages.lambda_count(args.d),
                "brute_force": averages.lambda_count_bruteforce(args.d),
            },
            args,
        )
    else:  # pragma: no cover
        raise DomainError(f"unknown avg action {args.action!r}")


def _cmd_spectral(args) -> None:
    policy = _policy_from(args)
    if args.action == "atoms":
        atoms = spectral.spectral_atoms(args.dmax, policy)
        doc = {
            "dmax": args.dmax,
            "atoms": [{"l": a.l, "dsq": a.d * a.d, "weight": a.weight} for a in atoms],
            "total_mass": sum(a.weight for a in atoms),
        }
        _emit_json(doc, args)
    elif args.action == "inner":
        lam = parse_phase(args.phase)
        got = spectral.inner_product_x_theta(args.s, lam, args.limit, policy)
        target = lam.complex_value(args.s) * spectral.eigen_norm_sq(lam)
        _emit_json(
            {
                "s": args.s,
                "phase": str(lam),
                "n": args.limit,
                "real": got.real,
                "imag": got.imag,
                "limit_real": target.real,
                "limit_imag": target.imag,
            },
            args,
        )
    elif args.action == "parseval":
        value = spectral.parseval_partial(args.dmax)
        _emit_json(
            {"dmax": args.dmax, "partial": value, "limit": DENSITY, "gap": DENSITY - value},
            args,
        )
    elif args.action == "tail":
        _emit_json({"D": args.D, "tail": spectral.approx_error_tail(args.D)}, args)
    elif args.action == "sign":
        lam1, lam2 = parse_phase(args.phase1), parse_phase(args.phase2)
        _emit_json(
            {
                "phase1": str(lam1),
                "phase2": str(lam2),
                "product": str(spectral.lambda_mul(lam1, lam2)),
                "epsilon": spectral.product_sign(lam1, lam2),
            },
            args,
        )
    else:  # pragma: no cover
        raise DomainError(f"unknown spectral action {args.action!r}")


def _cmd_group(args) -> None:
    if args.action == "orbit":
        element = kronecker.zero_element(args.primes)
        rows = []
        for step in range(args.steps + 1):
            shifted = kronecker.translate(element, step)
            rows.append((step, *shifted.coords))
        header = ("step", *(f"g{p * p}" for p in element.primes))
        _emit_rows(header, rows, args)
    elif args.action == "verify":
        lam = parse_phase(args.phase)
        chi = kronecker.CharacterSpec.of(lam)
        largest = max((p for p, _ in chi.exponents), default=2)
        basis_size = max(8, len(sieve.primes_upto(largest)))
        base = kronecker.zero_element(basis_size)
        residual = kronecker.verify_eigen_relation(chi, base, args.steps)
        _emit_json(
            {"phase": str(lam), "steps": args.steps, "max_residual": _frac(residual)},
            args,
        )
    elif args.action == "match":
        report = kronecker.spectrum_match_report(args.dmax)
        _emit_json(
            {
                "dmax": report.d_max,
                "levels": [
                    {"d": d, "group_count": a, "character_count": b, "equal": eq}
                    for d, a, b, eq in report.levels
                ],
                "total": report.total,
                "all_equal": report.all_equal,
            },
            args,
        )
    else:  # pragma: no cover
        raise DomainError(f"unknown group action {args.action!r}")


def _cmd_density(args) -> None:
    if args.action == "count":
        primes = _parse_primes(args.exclude)
        report = density.restricted_count(primes, args.limit)
        doc = {
            "exclude": list(report.s.primes),
            "n": report.n,
            "count": report.count,
            "empirical": _frac(report.empirical),
            "empirical_float": report.count / report.n,
            "limit": report.limit,
            "constant": _frac(report.constant),
            "margin": report.margin,
        }
        if args.check_bound:
            doc["bound_holds"] = report.bound_holds
            if report.bound_checked and not report.bound_holds:
                raise DomainError(
                    f"explicit bound violated for S={report.s.primes}, N={report.n}"
                )
        _emit_json(doc, args)
    elif args.action == "series":
        subject = (args.p,) if args.p else _parse_primes(args.exclude)
        report = density.partial_series_checks(subject, args.limit)
        _emit_json(
            {
                "primes": list(report.s.primes),
                "limit": report.limit,
                "w_partial": report.w_partial,
                "w_target": report.w_target,
                "w_ok": report.w_ok,
                "mobius_partial": report.mobius_partial,
                "mobius_target": report.mobius_target,
                "mobius_ok": report.mobius_ok,
                "tail_bound": report.tail_bound,
            },
            args,
        )
    elif args.action == "convolve-check":
        primes = _parse_primes(args.exclude)
        limit = args.limit
        mu = density.mobius_sequence(limit)
        w = density.w_sequence(primes, limit)
        conv = density.dirichlet_convolve(mu * w, w, limit)
        exact = bool(np.array_equal(conv, density.delta_one(limit)))
        _emit_json(
            {"exclude": list(primes), "limit": limit, "identity_holds": exact},
            args,
        )
        if not exact:
            raise DomainError("(mu w) * w differs from the unit sequence")
    else:  # pragma: no cover
        raise DomainError(f"unknown density action {args.action!r}")


def _cmd_verify(args) -> None:
    results = verify.run_profile(args.profile)
    stream = _open_out(args)
    failed = 0
    try:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            failed += 0 if r.ok else 1
            stream.write(f"[{status}] {r.name} ({r.seconds:.2f}s) {r.detail}\n")
        stream.write(
            f"{len(results) - failed}/{len(results)} checks passed ({args.profile} profile)\n"
        )
    finally:
        _close_out(stream)
    if failed:
        raise DomainError(f"{failed} verification check(s) failed")


# ---------------------------------------------------------------------------
# parser assembly

def _add_common(parser: argparse.ArgumentParser, fmt: tuple[str, ...] = ("json",)) -> None:
    parser.add_argument("--format", choices=fmt, default=fmt[0], help="output format")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker hint; results are identical for any value")


def _add_policy(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None,
                        help="target relative tolerance for product tails")
    parser.add_argument("--cutoff", type=int, default=None,
                        help="fixed prime cutoff (plain truncation mode)")


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="sqf", description=__doc__)
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", parents=[], help="square-free / Mobius sieving")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    _add_common(p, ("json", "csv", "raw"))
    p.set_defaults(handler=_cmd_sieve)

    corr = sub.add_parser("corr", help="correlation functions")
    corr_sub = corr.add_subparsers(dest="action", required=True)
    for name in ("empirical", "exact", "hall"):
        c = corr_sub.add_parser(name)
        c.add_argument("--lags", required=True, help="comma list, e.g. 0,1,3")
        if name == "empirical":
            c.add_argument("--limit", type=int, required=True)
        if name == "hall":
            c.add_argument("--smax", type=int, required=True)
        _add_policy(c)
        _add_common(c)
        c.set_defaults(handler=_cmd_corr)
    c = corr_sub.add_parser("sumform")
    c.add_argument("--k", type=int, required=True)
    _add_policy(c)
    _add_common(c)
    c.set_defaults(handler=_cmd_corr)
    c = corr_sub.add_parser("sigma")
    c.add_argument("--d", type=int, required=True)
    _add_policy(c)
    _add_common(c)
    c.set_defaults(handler=_cmd_corr)
    c = corr_sub.add_parser("levelset")
    c.add_argument("--dmax", type=int, required=True)
    _add_policy(c)
    _add_common(c)
    c.set_defaults(handler=_cmd_corr)
    c = corr_sub.add_parser("levelset-figure")
    c.add_argument("--kmax", type=int, required=True)
    _add_policy(c)
    _add_common(c, ("csv",))
    c.set_defaults(handler=_cmd_corr)

    avg = sub.add_parser("avg", help="progression averages and exponential sums")
    avg_sub = avg.add_subparsers(dest="action", required=True)
    a = avg_sub.add_parser("progression")
    a.add_argument("--d", type=int, required=True)
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--limit", type=int, default=0, help="Cesaro term count (0: closed form only)")
    _add_policy(a)
    _add_common(a)
    a.set_defaults(handler=_cmd_avg)
    a = avg_sub.add_parser("y2")
    a.add_argument("--phase", required=True, help="exact phase L/DSQ")
    a.add_argument("--limit", type=int, default=0)
    _add_policy(a)
    _add_common(a)
    a.set_defaults(handler=_cmd_avg)
    a = avg_sub.add_parser("y3")
    a.add_argument("--phase1", required=True)
    a.add_argument("--phase2", required=True)
    a.add_argument("--n1", type=int, default=0)
    a.add_argument("--n2", type=int, default=0)
    _add_policy(a)
    _add_common(a)
    a.set_defaults(handler=_cmd_avg)
    a = avg_sub.add_parser("count")
    a.add_argument("--d", type=int, required=True)
    _add_common(a)
    a.set_defaults(handler=_cmd_avg)

    spec = sub.add_parser("spectral", help="spectrum group and measure atoms")
    spec_sub = spec.add_subparsers(dest="action", required=True)
    s = spec_sub.add_parser("atoms")
    s.add_argument("--dmax", type=int, required=True)
    _add_policy(s)
    _add_common(s)
    s.set_defaults(handler=_cmd_spectral)
    s = spec_sub.add_parser("inner")
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--phase", required=True)
    s.add_argument("--limit", type=int, required=True)
    _add_policy(s)
    _add_common(s)
    s.set_defaults(handler=_cmd_spectral)
    s = spec_sub.add_parser("parseval")
    s.add_argument("--dmax", type=int, required=True)
    _add_common(s)
    s.set_defaults(handler=_cmd_spectral)
    s = spec_sub.add_parser("tail")
    s.add_argument("--D", type=int, required=True)
    _add_common(s)
    s.set_defaults(handler=_cmd_spectral)
    s = spec_sub.add_parser("sign")
    s.add_argument("--phase1", required=True)
    s.add_argument("--phase2", required=True)
    _add_common(s)
    s.set_defaults(handler=_cmd_spectral)

    grp = sub.add_parser("group", help="translation on the product group")
    grp_sub = grp.add_subparsers(dest="action", required=True)
    g = grp_sub.add_parser("orbit")
    g.add_argument("--primes", type=int, default=25, help="basis size (first m primes)")
    g.add_argument("--steps", type=int, required=True)
    _add_common(g, ("csv",))
    g.set_defaults(handler=_cmd_group)
    g = grp_sub.add_parser("verify")
    g.add_argument("--phase", required=True)
    g.add_argument("--steps", type=int, required=True)
    _add_common(g)
    g.set_defaults(handler=_cmd_group)
    g = grp_sub.add_parser("match")
    g.add_argument("--dmax", type=int, required=True)
    _add_common(g)
    g.set_defaults(handler=_cmd_group)

    den = sub.add_parser("density", help="densities avoiding a prime set")
    den_sub = den.add_subparsers(dest="action", required=True)
    d = den_sub.add_parser("count")
    d.add_argument("--exclude", default="", help="comma list of primes to avoid")
    d.add_argument("--limit", type=int, required=True)
    d.add_argument("--check-bound", action="store_true")
    _add_common(d)
    d.set_defaults(handler=_cmd_density)
    d = den_sub.add_parser("series")
    d.add_argument("--p", type=int, default=0, help="single prime shorthand")
    d.add_argument("--exclude", default="", help="comma list of primes")
    d.add_argument("--limit", type=int, required=True)
    _add_common(d)
    d.set_defaults(handler=_cmd_density)
    d = den_sub.add_parser("convolve-check")
    d.add_argument("--exclude", default="", help="comma list of primes")
    d.add_argument("--limit", type=int, required=True)
    _add_common(d)
    d.set_defaults(handler=_cmd_density)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--profile", choices=("quick", "full"), default="quick")
    _add_common(v, ("text",))
    v.set_defaults(handler=_cmd_verify)

    return root


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # `density --exclude ...` is accepted as shorthand for `density count ...`
    if argv and argv[0] == "density" and len(argv) > 1 and argv[1].startswith("-"):
        argv.insert(1, "count")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("sqf: error: --threads must be >= 1", file=sys.stderr)
        return 1
    try:
        args.handler(args)
    except PrecisionError as exc:
        print(f"sqf: precision error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"sqf: domain error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command prints one JSON object (or a CSV table for series) on stdout.
Exit codes: 0 success, 1 verification failure, 2 argument error,
3 resource cap exceeded.

    chernbott series ak --k 3 --n 3 --method rank
    chernbott series invariant --n 4
    chernbott verify presentation --k 2 --n 4
    chernbott count forests --n 5 --brute-force
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from typing import Any, Sequence

from . import __version__
from .combinatorics import (eulerian_bruteforce, forest_count,
                            forest_count_bruteforce, verify_conjecture_polynomial,
                            verify_conjecture_total)
from .errors import ArgumentError, InvariantError, ResourceError
from .exterior import eulerian_identity_check, invariant_forms_hilbert
from .groebner import cohomology_poincare, hilbert_series_quotient, ideal_basis
from .linalg import CACHE_ENV, hilbert_series_rank
from .presentations import (verify_derivative_criterion, verify_presentation,
                            verify_subset_independence)

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_RESOURCE = 0, 1, 2, 3

SAFE_INT = 2**53


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _json_safe(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= SAFE_INT else value
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _series_payload(series: Sequence[int]) -> dict[str, Any]:
    return {"series": list(series), "total": sum(series)}


def _subset(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ArgumentError(f"bad subset {text!r}; expected comma-separated integers") from None


def _n_range(text: str) -> range:
    try:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise ArgumentError(f"bad range {text!r}; expected A..B") from None


def _gate(n: int, args, desk: int = 5, hard: int | None = None) -> None:
    if hard is not None and n > hard:
        raise ResourceError(f"n={n} is out of desk scale for this computation (max {hard})")
    if n > desk and not args.long_run:
        raise ResourceError(f"n={n} needs --long-run (desk limit {desk})")


# -- command handlers: return (payload, passed, details) -----------------------

def cmd_series_ak(args):
    k, n = args.k, args.n
    subset = _subset(args.subset)
    if args.method == "rank":
        _gate(n, args, desk=5)
        info = hilbert_series_rank(k, n, subset, seed=args.seed, exact=args.exact,
                                   threads=args.threads, allow_large=args.long_run,
                                   cache_dir=args.cache_dir, details=True)
        return _series_payload(info.series), True, {
            "primes": info.primes, "exact_fallback": info.exact_fallback}
    _gate(n, args, desk=5, hard=6)
    if subset is not None and len(subset) != k:
        raise ArgumentError(f"subset {subset} does not have k={k} elements")
    if k > n or k < 1:
        raise ArgumentError(f"need 1 <= k <= n, got k={k}, n={n}")
    G = ideal_basis(k, n)
    return _series_payload(hilbert_series_quotient(G)), True, {"basis_size": len(G)}


def cmd_series_invariant(args):
    series = invariant_forms_hilbert(args.n, allow_large=args.long_run)
    return _series_payload(series), True, {}


def cmd_series_cohomology(args):
    if args.n < 1:
        raise ArgumentError("n must be >= 1")
    return _series_payload(cohomology_poincare(args.n)), True, {}


def _result(res):
    payload = res.to_dict()
    details = payload.pop("details")
    payload.pop("elapsed")
    payload.pop("parameters")
    return payload, res.passed, details


def cmd_verify_presentation(args):
    _gate(args.n, args, desk=5, hard=6)
    return _result(verify_presentation(args.k, args.n, seed=args.seed,
                                       long_run=args.long_run, cache_dir=args.cache_dir))


def cmd_verify_subsets(args):
    _gate(args.n, args, desk=5)
    return _result(verify_subset_independence(args.k, args.n, seed=args.seed,
                                              long_run=args.long_run))


def cmd_verify_lemma29(args):
    return _result(verify_derivative_criterion(args.k, args.n, args.samples, args.seed,
                                               long_run=args.long_run))


def cmd_verify_conjecture14(args):
    rank_kwargs = {"seed": args.seed, "threads": args.threads, "cache_dir": args.cache_dir}
    if args.k is not None:
        if args.n_range is None:
            raise ArgumentError("--k requires --n-range A..B")
        ns = _n_range(args.n_range)
        _gate(max(ns), args, desk=6, hard=7)
        report = verify_conjecture_polynomial(args.k, ns, **rank_kwargs)
        rec = report.polynomial[0]
        payload = {"k": rec.k, "n": rec.ns, "dims": rec.dims,
                   "differences": rec.differences, "is_monic_degree_k": rec.is_monic_degree_k}
        return payload, report.passed, {}
    if args.max_n is None:
        raise ArgumentError("give --max-n N or --k K --n-range A..B")
    report = verify_conjecture_total(args.max_n, long_run=args.long_run, **rank_kwargs)
    payload = {"records": [{"n": r.n, "total_dim": r.total_dim, "forest_count": r.forest_count,
                            "series": r.series, "match": r.match} for r in report.totals]}
    return payload, report.passed, {}


def cmd_count_forests(args):
    count = forest_count_bruteforce(args.n) if args.brute_force else forest_count(args.n)
    return {"count": str(count)}, True, {"method": "brute-force" if args.brute_force else "recurrence"}


def cmd_count_eulerian(args):
    return {"count": str(eulerian_bruteforce(args.n))}, True, {}


def cmd_check_prop24(args):
    rep = eulerian_identity_check(args.n, allow_large=args.long_run)
    payload = {"Z": rep.Z, "symmetric_count": rep.symmetric_count, "implied_eul": rep.implied_eul}
    passed = True
    if args.n <= 5:
        brute = eulerian_bruteforce(args.n)
        payload["eulerian_bruteforce"] = brute
        passed = brute == rep.Z
    return payload, passed, {}


# -- parser -----------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json",
                     default=argparse.SUPPRESS, help="JSON output (default)")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv",
                     default=argparse.SUPPRESS, help="CSV output (series commands only)")
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help=f"matrix cache directory (also ${CACHE_ENV})")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for degree-parallel rank jobs (default: all cores)")
    common.add_argument("--long-run", action="store_true", default=argparse.SUPPRESS,
                        help="unlock n = 6, 7 computations")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for prime selection and random samples")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="chernbott", parents=[common],
                     description="Exact computations with Chern-Bott curvature forms on SL_n/B.")
    parser.add_argument("--version", action="version", version=__version__)
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler, command_name=f"{sub._name} {name}")
        return p

    series = groups.add_parser("series", help="Hilbert series")
    s = series.add_subparsers(dest="what", required=True, parser_class=_Parser)
    s._name = "series"
    p = leaf(s, "ak", cmd_series_ak, "series of the algebra generated by k curvature forms")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--subset", help="comma-separated forms, e.g. 1,3")
    p.add_argument("--method", choices=["rank", "groebner"], default="rank")
    p.add_argument("--exact", action="store_true", help="exact rank instead of modular")
    p = leaf(s, "invariant", cmd_series_invariant, "series of the invariant-forms algebra")
    p.add_argument("--n", type=int, required=True)
    p = leaf(s, "cohomology", cmd_series_cohomology, "Poincare series of the flag variety")
    p.add_argument("--n", type=int, required=True)

    verify = groups.add_parser("verify", help="verification suites")
    v = verify.add_subparsers(dest="what", required=True, parser_class=_Parser)
    v._name = "verify"
    p = leaf(v, "presentation", cmd_verify_presentation, "rank series vs quotient series")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = leaf(v, "subsets", cmd_verify_subsets, "independence of the chosen k forms")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = leaf(v, "lemma29", cmd_verify_lemma29, "derivative membership criterion")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p = leaf(v, "conjecture14", cmd_verify_conjecture14, "forest and polynomial-growth conjecture")
    p.add_argument("--max-n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n-range", help="A..B")

    count = groups.add_parser("count", help="combinatorial counts")
    c = count.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c._name = "count"
    p = leaf(c, "forests", cmd_count_forests, "labeled forests on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--brute-force", action="store_true")
    p = leaf(c, "eulerian", cmd_count_eulerian, "labeled Eulerian digraphs")
    p.add_argument("--n", type=int, required=True)

    check = groups.add_parser("check", help="identities")
    ch = check.add_subparsers(dest="what", required=True, parser_class=_Parser)
    ch._name = "check"
    p = leaf(ch, "prop24", cmd_check_prop24, "invariant-form count vs Eulerian digraphs")
    p.add_argument("--n", type=int, required=True)
    return parser


def _available_parallelism() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


_DEFAULTS = {"format": "json", "cache_dir": None, "threads": _available_parallelism(),
             "long_run": False, "seed": 0}


def _parameters(args) -> dict[str, Any]:
    skip = {"handler", "command_name", "group", "what", "format", "cache_dir", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit_csv(payload: dict[str, Any], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["degree", "dimension"])
    for d, v in enumerate(payload["series"]):
        writer.writerow([d, v])


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    saved = sys.stderr
    sys.stderr = err
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    finally:
        sys.stderr = saved
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.cache_dir is None:
        args.cache_dir = os.environ.get(CACHE_ENV)
    if args.threads < 1:
        print("chernbott: error: --threads must be >= 1", file=err)
        return EXIT_ARGS

    t0 = time.perf_counter()
    try:
        payload, passed, details = args.handler(args)
    except (ArgumentError, ValueError) as exc:
        print(f"chernbott: error: {exc}", file=err)
        return EXIT_ARGS
    except ResourceError as exc:
        print(f"chernbott: resource cap: {exc}", file=err)
        return EXIT_RESOURCE
    except (InvariantError, ArithmeticError) as exc:
        print(f"chernbott: check failed: {exc}", file=err)
        return EXIT_FAIL
    elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)

    if args.format == "csv":
        if "series" not in payload:
            print("chernbott: error: --csv is only available for series commands", file=err)
            return EXIT_ARGS
        _emit_csv(payload, out)
    else:
        record = {
            "command": args.command_name,
            "parameters": _parameters(args),
            "result": payload,
            "details": details,
            "seed": args.seed,
            "version": __version__,
            "elapsed_ms": elapsed_ms,
        }
        out.write(json.dumps(_json_safe(record), sort_keys=True) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

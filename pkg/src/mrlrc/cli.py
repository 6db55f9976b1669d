"""``mrlrc`` command line.

Exit codes: 0 success, 1 MR check failed (verify only), 2 enumeration cap
exceeded (verify) or bad usage, 3 any other planning, construction or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, selftest, serialize, verify
from .construct import ROUTE_ALIASES, ROUTES, construct
from .exceptions import CapExceededError, MRLRCError

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_ERROR = 0, 1, 2, 3


def _shape_flags(p: argparse.ArgumentParser) -> None:
    # -h is the global-parity count here, so help lives on --help only
    p.add_argument("--help", action="help", help="show this help message and exit")
    p.add_argument("-n", type=int, required=True, help="code length")
    p.add_argument("-r", type=int, required=True, help="locality (group size)")
    p.add_argument("-h", dest="h", type=int, required=True, help="number of heavy parities")
    p.add_argument("-a", type=int, required=True, help="local erasures per group")


def _parse_symbols(text: str) -> list:
    """Comma-separated integers; '?', '_' or '' mark erasures."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(None if tok in ("", "?", "_") else int(tok))
    return out


def _fmt(word) -> str:
    return ",".join("?" if x is None else str(x) for x in word)


def cmd_construct(args) -> int:
    code = construct(args.n, args.r, args.h, args.a, route=args.route, q=args.q, m=args.m,
                     form=args.form)
    p = code.params
    print(code.describe())
    print(f"l = {p.q}^{code.deg_Q}")
    print(f"log2 l = {code.log2_ell:.6f}")
    if args.out:
        serialize.save(code, args.out)
        print(f"artifact written to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = serialize.load(args.artifact, force=args.force)
    check = verify.check_mr_parity if code.form == "parity" else verify.check_mr_generator
    try:
        report = check(code, mode=args.mode, cap=args.cap, samples=args.samples, seed=args.seed,
                       jobs=args.jobs)
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    print(report.summary())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_encode(args) -> int:
    code = serialize.load(args.artifact, force=args.force)
    if args.message is not None:
        msg = _parse_symbols(args.message)
        if any(x is None for x in msg):
            raise MRLRCError("message symbols cannot be erased")
    else:
        rng = np.random.default_rng(args.seed)
        msg = [int(rng.integers(0, min(code.ell, 2**62))) for _ in range(code.k)]
    print(_fmt(verify.encode(code, msg)))
    return EXIT_OK


def cmd_decode(args) -> int:
    code = serialize.load(args.artifact, force=args.force)
    word = _parse_symbols(args.word)
    if len(word) != code.n:
        raise MRLRCError(f"word has {len(word)} symbols, the code has length {code.n}")
    p = code.params
    erased = set(j for j, x in enumerate(word) if x is None)
    if args.erase:
        erased |= set(verify.ErasurePattern.from_pairs(args.erase, p.r, p.g).positions)
    damaged = [None if j in erased else x for j, x in enumerate(word)]
    print(_fmt(verify.decode_erasures(code, damaged)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    opts = bounds.BoundOptions(constant=args.constant, epsilon=args.epsilon,
                               include_routes=not args.no_routes)
    entries = bounds.bound_table(args.n, args.r, args.h, args.a, opts)
    print(bounds.to_csv(entries) if args.csv else bounds.format_table(entries), end="" if args.csv else "\n")
    if args.claims:
        for rep in bounds.check_all_claims(count=args.points, seed=args.seed, options=opts):
            print(rep.summary())
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_all(args.only)
    for res in results:
        print(res.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mrlrc", description="Maximally recoverable LRC toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    routes = ", ".join(ROUTES) + "; short ids: " + ", ".join(ROUTE_ALIASES)
    p = sub.add_parser("construct", add_help=False, help="build a code and write its artifact")
    _shape_flags(p)
    p.add_argument("--route", default="manual", help=f"construction route ({routes})")
    p.add_argument("--q", type=int, help="base field size (manual route)")
    p.add_argument("--m", type=int, help="degree of the local polynomials (manual route)")
    p.add_argument("--form", choices=("parity", "generator"), help="matrix form (default follows the route)")
    p.add_argument("-o", "--out", help="artifact path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check maximal recoverability of an artifact")
    p.add_argument("artifact")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--cap", type=int, default=None,
                   help=f"enumeration cap (default {verify.DEFAULT_CAP}, env {verify.CAP_ENV})")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--force", action="store_true", help="load even if the digest does not match")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="encode a message")
    p.add_argument("artifact")
    p.add_argument("--message", help="k comma-separated symbols (default: random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="fill in erased symbols")
    p.add_argument("artifact")
    p.add_argument("--word", required=True, help="n comma-separated symbols, '?' for erased")
    p.add_argument("--erase", nargs="*", default=[], metavar="GROUP:INDEX",
                   help="additional erased positions")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", add_help=False, help="field-size table")
    _shape_flags(p)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--constant", type=float, default=1.0, help="big-O constant for prior bounds")
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--no-routes", action="store_true", help="omit the exact route rows")
    p.add_argument("--claims", action="store_true", help="also run the comparison claims")
    p.add_argument("--points", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MRLRCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

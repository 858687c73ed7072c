"""Command line entry point: ``verify <check> [options]``."""
from __future__ import annotations

import argparse
import ast
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .checks import CATALOG, CheckRequest, emit_report, run_check
from .scalars import FieldError

THREADS_ENV = "LIENIL_THREADS"


def _threads() -> int:
    v = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(v)
    except ValueError:
        raise SystemExit(f"{THREADS_ENV} must be an integer, got {v!r}")
    return max(1, n)


def _value(text):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def _parser():
    ap = argparse.ArgumentParser(prog="verify", description="Bounded-degree checks of identities "
                                 "in relatively free algebras with a Lie nilpotency identity.")
    ap.add_argument("check", nargs="?", help="check name (see --list)")
    ap.add_argument("--n", type=int)
    ap.add_argument("--m", type=int)
    ap.add_argument("--char", type=int, help="0 for Q, otherwise a prime >= 5")
    ap.add_argument("--max-deg", type=int, dest="max_deg")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--all", action="store_true", help="run every check with its defaults")
    ap.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                    help="extra check parameter, value parsed as a Python literal")
    ap.add_argument("--list", action="store_true", help="list check names and exit")
    return ap


def _run(req):
    return run_check(req)


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    if args.list:
        print("\n".join(CATALOG))
        return 0
    params = {k: getattr(args, k) for k in ("n", "m", "char", "max_deg") if getattr(args, k) is not None}
    for item in args.param:
        if "=" not in item:
            ap.error(f"--param expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = _value(v.strip())
    if args.all:
        if args.check:
            ap.error("give a check name or --all, not both")
        reqs = [CheckRequest(name, dict(params)) for name in CATALOG]
    elif args.check:
        if args.check not in CATALOG:
            ap.error(f"unknown check {args.check!r}; use --list")
        reqs = [CheckRequest(args.check, params)]
    else:
        ap.error("a check name or --all is required")
    try:
        nt = _threads()
        if nt > 1 and len(reqs) > 1:
            with ProcessPoolExecutor(max_workers=nt) as ex:
                results = list(ex.map(_run, reqs))
        else:
            results = [_run(r) for r in reqs]
    except (ValueError, FieldError) as e:
        print(f"verify: {e}", file=sys.stderr)
        return 2
    print(emit_report(results, args.format))
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

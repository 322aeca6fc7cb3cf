"""oracle-gen command line: generate fixtures, crosscheck them against
the primary tool.  Exit codes mirror the primary: 0 pass, 1 fail, 2
usage/input error.
"""

import argparse
import json
import sys

from .cas import CasError
from .crosscheck import crosscheck_fixture
from .generate import GenerationJob, generate


def build_parser():
    parser = argparse.ArgumentParser(prog="oracle-gen")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("generate", help="compute one fixture")
    p.add_argument("--conductor", type=int, required=True)
    p.add_argument("--subgroup", default="",
                   help="comma-separated generators of H")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t0", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--backend", choices=("table", "gp"), default="table")
    p.add_argument("--gp-binary", default="gp")
    p.add_argument("--partial-zeta", action="store_true",
                   help="include the classical partial-zeta table")

    p = sub.add_parser("crosscheck", help="fixture vs analytic h^-")
    p.add_argument("--fixture", required=True)
    p.add_argument("--primary", default="equistark")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "generate":
        gens = tuple(int(x) for x in args.subgroup.replace(" ", "").split(",") if x)
        job = GenerationJob(conductor=args.conductor, subgroup_gens=gens,
                            p=args.p, t0=args.t0, out_path=args.out,
                            backend=args.backend, gp_binary=args.gp_binary,
                            partial_zeta=args.partial_zeta,
                            command=" ".join(argv if argv is not None else sys.argv[1:]))
        try:
            out = generate(job)
        except (CasError, ValueError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2 if isinstance(exc, ValueError) else 1
        print(out)
        return 0
    if args.command == "crosscheck":
        try:
            status, detail = crosscheck_fixture(args.fixture, args.primary)
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        print(json.dumps({"status": status, "detail": detail}, sort_keys=True))
        if status == "skip":
            print("warning: %s" % detail.get("warning", ""), file=sys.stderr)
        return 0 if status in ("pass", "skip") else 1
    parser.print_usage()
    return 2


if __name__ == "__main__":
    sys.exit(main())

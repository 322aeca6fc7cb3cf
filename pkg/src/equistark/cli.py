"""Command-line entry point: computations and verification suites over
extensions and fixtures, with human-readable and machine-readable
(canonical JSON) reports.

Exit codes: 0 all checks pass (skips allowed), 1 any failure, 2 usage or
input errors.  Verdicts stream as they complete but are sorted
canonically before emission, so --jobs never changes the report.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import fixtures as fixtures_mod
from .extension import extension_from_conductor
from .lvalues import analytic_minus_h
from .selfcheck import run_selftest
from .stickelberger import (PlaceSet, check_integrality, containment_check,
                            etnc_sets, sku_ideal, theorem_b_hypothesis, theta,
                            theta_factorization_check, torsionfree)
from .verify import (cn_trick_check, dk_verify, ray_sequence_check,
                     strong_stark_characters)

REPORT_SCHEMA_VERSION = "1.0"


@dataclass
class Verdict:
    name: str
    target: str
    status: str  # pass | fail | skip
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    def sort_key(self):
        return (self.name, self.target)

    def to_json(self):
        return {"name": self.name, "target": self.target, "status": self.status,
                "witness": {k: str(v) for k, v in sorted(self.witness.items())},
                "seconds": round(self.seconds, 6)}


class UsageError(Exception):
    pass


def _parse_subgroup(text):
    if not text or text.strip() in ("", "trivial"):
        return []
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _parse_places(text):
    """'inf,2,5' -> PlaceSet; 'inf' alone is the archimedean set."""
    infinite = False
    finite = []
    for tok in (text or "").replace(" ", "").split(","):
        if not tok:
            continue
        if tok in ("inf", "infty", "oo"):
            infinite = True
        else:
            finite.append(int(tok))
    return PlaceSet.make(infinite=infinite, finite=finite)


def _format_rational(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator) if q.denominator != 1 \
        else str(q.numerator)


def format_group_ring(ext, x):
    """Print with sigma_a labels, terms ordered by residue label."""
    if not x.coeffs:
        return "0"
    items = sorted(((ext.label_of(g), c) for g, c in x.coeffs.items()))
    bits = []
    for a, c in items:
        term = _format_rational(abs(c))
        if a != 1:
            term += "*σ_%d" % a
        if not bits:
            bits.append(term if c > 0 else "-" + term)
        else:
            bits.append(("+ " if c > 0 else "- ") + term)
    return " ".join(bits)


def _timed_verdict(name, target, fn):
    start = time.time()
    try:
        status, witness = fn()
    except Exception as exc:  # verification errors become failures with witness
        status, witness = "fail", {"error": "%s: %s" % (type(exc).__name__, exc)}
    return Verdict(name, target, status, witness, time.time() - start)


def _run_parallel(tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [_timed_verdict(*t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_timed_verdict, *t) for t in tasks]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# commands


def cmd_theta(args):
    ext = extension_from_conductor(args.conductor, _parse_subgroup(args.subgroup))
    S = _parse_places(args.S if args.S is not None else "inf")
    T = _parse_places(args.T or "")
    th = theta(ext, S, T)
    if args.json:
        coeffs = {str(ext.label_of(g)): _format_rational(c) for g, c in th.coeffs.items()}
        print(fixtures_mod.canonical_json({"schema_version": REPORT_SCHEMA_VERSION,
                                           "theta": coeffs}))
    else:
        print(format_group_ring(ext, th))
    return []


def cmd_hminus(args):
    ext = extension_from_conductor(args.conductor, _parse_subgroup(args.subgroup))
    value = analytic_minus_h(ext)
    if args.json:
        print(fixtures_mod.canonical_json({"schema_version": REPORT_SCHEMA_VERSION,
                                           "h_minus_analytic": _format_rational(value)}))
    else:
        print(_format_rational(value))
    return []


def cmd_integrality(args):
    ext = extension_from_conductor(args.conductor, _parse_subgroup(args.subgroup))
    S = _parse_places(args.S if args.S is not None else "inf")
    T = _parse_places(args.T or "")
    target = "f=%d,p=%d" % (args.conductor, args.p)

    def run():
        verdict = check_integrality(ext, S, T, args.p)
        witness = {"integral_at_p": verdict.integral_at_p,
                   "theta": format_group_ring(ext, verdict.theta_value)}
        if not verdict.hypotheses_hold:
            witness["violated"] = "; ".join(verdict.failed_hypotheses)
            return "skip", witness
        return ("pass" if verdict.integral_at_p else "fail"), witness

    return [_timed_verdict("integrality", target, run)]


def cmd_sku(args):
    ext = extension_from_conductor(args.conductor, _parse_subgroup(args.subgroup))
    t0 = PlaceSet.make(finite=[args.t0])
    target = "f=%d,t0=%d" % (args.conductor, args.t0)

    def run():
        lattice = sku_ideal(ext, t0)
        witness = {"rank": lattice.rank, "den": lattice.den,
                   "integral": lattice.elements_integral()}
        if not args.json:
            for row in lattice.basis:
                print(row)
        return ("pass" if lattice.elements_integral() else "fail"), witness

    return [_timed_verdict("sku-integrality", target, run)]


def cmd_verify_etnc(args):
    ext = extension_from_conductor(args.conductor, _parse_subgroup(args.subgroup))
    p = args.p
    target = "f=%d,p=%d" % (args.conductor, p)
    if p < 3:
        raise UsageError("p must be an odd prime")
    S1, T, T0 = etnc_sets(ext, p)
    if args.t0:
        T0 = PlaceSet.make(finite=[args.t0])
        T = T0.union(PlaceSet.make(finite=[l for l in ext.ramified_primes() if l != p]))
        if not torsionfree(ext, T0):
            raise UsageError("supplied t0 does not make E^{T0} torsion-free")

    if not theorem_b_hypothesis(ext, p):
        return [Verdict("etnc-hypothesis", target, "skip",
                        {"violated": "p-adic place wildly ramified with j not in G_v"})]

    def t_int():
        verdict = check_integrality(ext, S1, T, p)
        if not verdict.hypotheses_hold:
            return "skip", {"violated": "; ".join(verdict.failed_hypotheses)}
        return ("pass" if verdict.integral_at_p else "fail"), {}

    def t_sku():
        lattice = sku_ideal(ext, T0)
        return ("pass" if lattice.elements_integral() else "fail"), {"rank": lattice.rank}

    def t_fact():
        ok = theta_factorization_check(ext, S1, T, T0, p)
        return ("pass" if ok else "fail"), {}

    def t_contain():
        ok = containment_check(ext, p, T0 if args.t0 else None)
        return ("pass" if ok else "fail"), {}

    tasks = [("theta-integrality", target, t_int),
             ("sku-integrality", target, t_sku),
             ("theta-factorization", target, t_fact),
             ("etnc-containment", target, t_contain)]
    return _run_parallel(tasks, args.jobs)


def _load_fixture(path):
    try:
        return fixtures_mod.load(path)
    except (OSError, json.JSONDecodeError, fixtures_mod.FixtureError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify_dk(args):
    fixture = _load_fixture(args.fixture)
    if args.p and args.p != fixture.p:
        raise UsageError("fixture is for p = %d, not %d" % (fixture.p, args.p))
    target = "f=%d,p=%d,t0=%d" % (fixture.conductor, fixture.p, fixture.t0)

    def make(fn):
        def run():
            ok, witness = fn(fixture)
            return ("pass" if ok else "fail"), witness
        return run

    tasks = [("dk-fitting-equality", target, make(dk_verify)),
             ("cn-trick", target, make(cn_trick_check)),
             ("ray-sequence", target, make(ray_sequence_check))]
    return _run_parallel(tasks, args.jobs)


def cmd_verify_strong_stark(args):
    fixture = _load_fixture(args.fixture)
    base = "f=%d,p=%d" % (fixture.conductor, fixture.p)
    verdicts = []
    start = time.time()
    for chi, ok, left, right in strong_stark_characters(fixture):
        label = "chi[%s]" % ",".join(map(str, chi.exponents))
        verdicts.append(Verdict(
            "strong-stark", "%s,%s" % (base, label),
            "pass" if ok else "fail",
            {"left": sorted(left.items()), "right": sorted(right.items())},
            0.0))
    if verdicts:
        verdicts[0].seconds = time.time() - start
    return verdicts


def cmd_selftest(args):
    return [Verdict("selftest-" + name, "library", "pass" if ok else "fail",
                    witness, seconds)
            for name, ok, witness, seconds in run_selftest()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equistark",
        description="Exact Stickelberger / Sinnott-Kurihara / Fitting-ideal "
                    "verification for abelian CM extensions of Q.")
    sub = parser.add_subparsers(dest="command")

    def common(p, mode="extension"):
        p.add_argument("--json", action="store_true", help="canonical JSON report")
        p.add_argument("--jobs", type=int,
                       default=int(os.environ.get("EQUISTARK_JOBS", "1")),
                       help="parallel workers (default $EQUISTARK_JOBS or 1)")
        if mode == "fixture":
            p.add_argument("--fixture", required=True)
            p.add_argument("--p", type=int, default=None)
        elif mode == "extension":
            p.add_argument("--conductor", type=int, required=True)
            p.add_argument("--subgroup", default="",
                           help="comma-separated generators of H (or 'trivial')")

    p = sub.add_parser("theta", help="Stickelberger element")
    common(p)
    p.add_argument("--S", default="inf", help="places, e.g. 'inf,2'")
    p.add_argument("--T", default="", help="smoothing places, e.g. '5'")

    p = sub.add_parser("integrality", help="p-integrality criterion")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--S", default="inf")
    p.add_argument("--T", default="")

    p = sub.add_parser("sku", help="Sinnott-Kurihara ideal")
    common(p)
    p.add_argument("--t0", type=int, required=True)

    p = sub.add_parser("verify-etnc", help="containment pipeline")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t0", type=int, default=None)

    p = sub.add_parser("verify-dk", help="Fitting = SKu on a fixture")
    common(p, mode="fixture")

    p = sub.add_parser("verify-strong-stark", help="chi-component valuations")
    common(p, mode="fixture")

    p = sub.add_parser("hminus", help="analytic minus class number product")
    common(p)

    p = sub.add_parser("selftest", help="run the property suites")
    common(p, mode="bare")
    return parser


COMMANDS = {
    "theta": cmd_theta,
    "integrality": cmd_integrality,
    "sku": cmd_sku,
    "verify-etnc": cmd_verify_etnc,
    "verify-dk": cmd_verify_dk,
    "verify-strong-stark": cmd_verify_strong_stark,
    "hminus": cmd_hminus,
    "selftest": cmd_selftest,
}


def emit(verdicts, as_json):
    verdicts = sorted(verdicts, key=Verdict.sort_key)
    if not verdicts:
        return verdicts
    if as_json:
        doc = {"schema_version": REPORT_SCHEMA_VERSION,
               "verdicts": [v.to_json() for v in verdicts]}
        print(fixtures_mod.canonical_json(doc))
    else:
        for v in verdicts:
            print("[%s] %s %s (%.3fs)%s" % (
                v.status.upper(), v.name, v.target, v.seconds,
                "" if not v.witness else "  " + str(v.witness)))
    return verdicts


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not args.command:
        parser.print_usage()
        return 2
    try:
        verdicts = COMMANDS[args.command](args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    verdicts = emit(verdicts, args.json)
    return 1 if any(v.status == "fail" for v in verdicts) else 0


if __name__ == "__main__":
    sys.exit(main())

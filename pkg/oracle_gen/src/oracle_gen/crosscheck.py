"""Crosscheck a fixture against the primary tool's analytic minus class
number: the p-part of w_L * prod_{chi odd}(-B_1(chi)/2) must equal the
fixture's |A(p)|.  The primary is consumed strictly through its CLI.
"""

import json
import subprocess
from fractions import Fraction


def _p_valuation(q, p):
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def crosscheck_fixture(fixture_path, primary_cli="equistark"):
    """Returns (status, detail) with status in pass/fail/skip."""
    with open(fixture_path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    f = int(doc["conductor"])
    gens = ",".join(str(a) for a in doc["subgroup_gens"])
    p = int(doc["p"])
    card_a = int(doc["modules"]["A"]["cardinality"])
    cmd = [primary_cli, "hminus", "--conductor", str(f),
           "--subgroup", gens or "trivial", "--json"]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    except FileNotFoundError:
        return "skip", {"warning": "primary CLI %r unavailable" % primary_cli}
    if proc.returncode:
        return "fail", {"error": proc.stderr.strip()[:300]}
    payload = json.loads(proc.stdout)
    analytic = Fraction(payload["h_minus_analytic"])
    v = _p_valuation(analytic, p)
    expected = p ** max(v, 0)
    ok = expected == card_a and v >= 0
    return ("pass" if ok else "fail"), {
        "analytic_h_minus": str(analytic),
        "analytic_p_part": str(expected),
        "fixture_card_A": str(card_a),
    }

"""Built-in property suites for the CLI selftest command.

Small, deterministic (seeded) versions of the library's invariant
checks; the pytest suite runs larger instances of the same properties.
"""

import random
import time
from fractions import Fraction

from .abelian import FiniteAbelianGroup, dual_characters
from .cyclo import CycloNumber
from .extension import extension_from_conductor
from .fitting import (ModulePresentation, direct_sum_check, dual_fitting_check,
                      index_equals_card_check)
from .groupring import (GroupRingElt, MinusContext, ZLattice,
                        assemble_from_char_values, char_eval, member_brute_force)
from .stickelberger import (PlaceSet, factor_at_v_check, theta,
                            theta_classical_oracle)


def _timed(fn):
    start = time.time()
    ok, witness = fn()
    return ok, witness, time.time() - start


def check_orthogonality():
    for factors in ([2], [6], [2, 4], [3, 9], [22]):
        G = FiniteAbelianGroup(factors)
        chars = dual_characters(G)
        if len(chars) != G.order:
            return False, {"group": str(G), "reason": "wrong dual size"}
        for chi in chars:
            total = CycloNumber.zero(G.exponent)
            for g in G.elements():
                total = total + chi.value(g)
            expected = G.order if chi.is_trivial() else 0
            if total != expected:
                return False, {"group": str(G), "chi": str(chi.exponents)}
    return True, {"groups": 5}


def check_assembly_roundtrip(cases=12, seed=7):
    rng = random.Random(seed)
    G = FiniteAbelianGroup([6])
    chars = dual_characters(G)
    for _ in range(cases):
        base = GroupRingElt(G, {g: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                                for g in G.elements()})
        values = {chi: char_eval(base, chi, G.exponent) for chi in chars}
        rebuilt = assemble_from_char_values(values, G)
        if rebuilt != base:
            return False, {"base": repr(base)}
    return True, {"cases": cases}


def check_member_bruteforce(cases=16, seed=11):
    rng = random.Random(seed)
    G = FiniteAbelianGroup([2])
    mc = MinusContext(G, (1,))
    for _ in range(cases):
        gen = [Fraction(rng.randint(1, 30))]
        lat = ZLattice.from_generators(mc, [gen])
        x = [Fraction(rng.randint(-20, 20))]
        for p in (3, 5):
            fast = lat.member_at_p(x, p)
            slow = member_brute_force(x, lat, p)
            if fast != slow:
                return False, {"gen": str(gen), "x": str(x), "p": p}
    return True, {"cases": cases}


def _random_square_presentation(rng, mc, n=2, spread=3):
    G = mc.group
    while True:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                elt = GroupRingElt(G, {g: rng.randint(-spread, spread)
                                       for g in G.elements()})
                row.append(elt)
            rows.append(row)
        pres = ModulePresentation(mc, rows, ngens=n, check_finite=False)
        if pres.has_finite_cokernel():
            return pres


def check_fitting_laws(cases=8, seed=23):
    rng = random.Random(seed)
    for factors, j in (([2], (1,)), ([6], (3,))):
        G = FiniteAbelianGroup(factors)
        mc = MinusContext(G, j)
        for _ in range(cases):
            a = _random_square_presentation(rng, mc)
            b = _random_square_presentation(rng, mc)
            for p in (3, 5):
                if not index_equals_card_check(a, p):
                    return False, {"law": "index=card", "p": p}
                if not dual_fitting_check(a, p):
                    return False, {"law": "dual", "p": p}
                if not direct_sum_check(a, b, p):
                    return False, {"law": "direct-sum", "p": p}
    return True, {"cases": cases}


def check_factor_at_v(cases=40, seed=31):
    rng = random.Random(seed)
    done = 0
    while done < cases:
        factors = rng.choice(([4], [6], [2, 4], [12], [2, 2]))
        G = FiniteAbelianGroup(factors)
        elements = G.elements()
        i_gen = rng.choice(elements)
        i_v = G.subgroup([i_gen])
        g_v = G.subgroup([i_gen, rng.choice(elements)])
        phi = rng.choice(sorted(g_v.elements))
        p = rng.choice((3, 5, 7))
        ppart = 1
        m = i_v.order
        while m % p == 0:
            ppart *= p
            m //= p
        nv = 1 + ppart * rng.randint(1, 40)
        if nv < 2:
            continue
        if not factor_at_v_check(G, g_v, i_v, phi, nv, p):
            return False, {"group": str(G), "nv": nv, "p": p}
        done += 1
    return True, {"cases": cases}


def check_theta_oracle():
    for f in (3, 4, 5, 7, 8, 9, 12):
        ext = extension_from_conductor(f, [])
        S = PlaceSet(True, tuple(ext.ramified_primes()))
        if theta(ext, S, PlaceSet.make()) != theta_classical_oracle(ext):
            return False, {"conductor": f}
    return True, {"conductors": 7}


SUITES = (
    ("orthogonality", check_orthogonality),
    ("assembly-roundtrip", check_assembly_roundtrip),
    ("member-bruteforce", check_member_bruteforce),
    ("fitting-laws", check_fitting_laws),
    ("factor-at-v", check_factor_at_v),
    ("theta-oracle", check_theta_oracle),
)


def run_selftest():
    """Run every property suite; returns [(name, ok, witness, seconds)]."""
    out = []
    for name, fn in SUITES:
        ok, witness, seconds = _timed(fn)
        out.append((name, ok, witness, seconds))
    return out

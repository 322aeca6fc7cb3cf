"""Fixture-level verification: the Fitting = SKu equality, the class
number trick, the ray-sequence cardinality identity, and the per-character
strong-Stark valuation equality.  Each check returns (ok, witness) with
enough data to diagnose a failure.
"""

from .fitting import fitting_ideal
from .groupring import MinusContext, ZLattice
from .intlinalg import p_part
from .stickelberger import (odd_characters, s_infty, sku_ideal, theta)
from .strongstark import chi_fitting_valuations, lvalue_valuations


def dk_verify(fixture):
    """Fitt_{Z_p[G]^-}(A^{T0}(p) dual) = SKu^{T0}(p) on the fixture."""
    ext = fixture.extension()
    p = fixture.p
    mc = MinusContext(ext.galois_group, ext.j)
    pres = fixture.presentation("A_T0", mc)
    fitt = fitting_ideal(pres.dual())
    sku = sku_ideal(ext, fixture.t0_places(), mc)
    ok = fitt.equal_at_p(sku, p)
    witness = {
        "fitting_index_p_part": str(fitt.p_part_index(p)),
        "sku_index_p_part": str(sku.p_part_index(p)),
        "declared_card": str(fixture.modules["A_T0"].cardinality),
    }
    if ok:
        # Fitting-index chain: index of SKu at p must equal |A^{T0}(p)|
        ok = fitt.p_part_index(p) == fixture.modules["A_T0"].cardinality \
            and sku.p_part_index(p) == fixture.modules["A_T0"].cardinality
    return ok, witness


def cn_trick_check(fixture):
    """|A^{T0}(p)| = [Z_p[G]^- : (theta_{S_infty}^{T0})]."""
    ext = fixture.extension()
    p = fixture.p
    mc = MinusContext(ext.galois_group, ext.j)
    th = theta(ext, s_infty(), fixture.t0_places())
    lattice = ZLattice.from_generators(mc, [mc.project(th)])
    rhs = lattice.p_part_index(p)
    lhs = fixture.modules["A_T0"].cardinality
    return lhs == rhs, {"card_A_T0": str(lhs), "theta_index_p_part": str(rhs)}


def ray_sequence_check(fixture):
    """|mu_L(p)| |A^{T0}(p)| = |(O/M_{T0})^x(p)^-| |A(p)| (exactness)."""
    p = fixture.p
    mu = p_part(fixture.w_roots_of_unity, p)
    lhs = mu * fixture.modules["A_T0"].cardinality
    rhs = fixture.modules["residue_minus"].cardinality * fixture.modules["A"].cardinality
    return lhs == rhs, {
        "mu_p": str(mu),
        "card_A_T0": str(fixture.modules["A_T0"].cardinality),
        "card_residue_minus": str(fixture.modules["residue_minus"].cardinality),
        "card_A": str(fixture.modules["A"].cardinality),
    }


def strong_stark_characters(fixture):
    """Per-odd-character strong-Stark verdicts: (chi, ok, left, right)."""
    ext = fixture.extension()
    p = fixture.p
    if ext.galois_group.order % p == 0:
        raise ValueError("strong Stark needs p coprime to |G|")
    mc = MinusContext(ext.galois_group, ext.j)
    pres = fixture.presentation("A_T0", mc)
    out = []
    for chi in odd_characters(ext):
        left = chi_fitting_valuations(pres, chi, p)
        right = lvalue_valuations(ext, chi, fixture.t0_places(), p)
        out.append((chi, left == right, left, right))
    return out

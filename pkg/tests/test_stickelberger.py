"""Stickelberger elements, integrality, SKu, factorization, local factors."""

import random
from fractions import Fraction

import pytest
from equistark.abelian import dual_characters, make_group
from equistark.cyclo import padic_valuations
from equistark.extension import extension_from_conductor
from equistark.groupring import (FullRingAmbient, GroupRingElt, MinusContext,
                                 ZLattice, char_eval)
from equistark.lvalues import DirichletChar, l0_ST
from equistark.stickelberger import (PlaceSet, check_integrality, choose_t0,
                                     containment_check, etnc_sets,
                                     factor_at_v_check, odd_characters, s_infty,
                                     sku_factor_ideal, sku_ideal,
                                     theorem_b_hypothesis, theta,
                                     theta_classical_oracle,
                                     theta_factorization_check, torsionfree)


def places(*finite, inf=True):
    return PlaceSet(inf, tuple(sorted(finite)))


def test_theta_examples():
    ext4 = extension_from_conductor(4, [])
    th = theta(ext4, places(2), PlaceSet.make())
    assert th == GroupRingElt(ext4.galois_group,
                              {(0,): Fraction(1, 4), (1,): Fraction(-1, 4)})
    assert th == theta_classical_oracle(ext4)

    ext3 = extension_from_conductor(3, [])
    th3 = theta(ext3, places(3), PlaceSet.make())
    sigma2 = ext3.sigma[2]
    assert th3 == GroupRingElt(ext3.galois_group,
                               {ext3.galois_group.identity(): Fraction(1, 6),
                                sigma2: Fraction(-1, 6)})

    # T-smoothing: theta(Qi, {inf,2}, {5}) = -1 + sigma_3, integral
    thT = theta(ext4, places(2), PlaceSet.make(finite=[5]))
    assert thT == GroupRingElt(ext4.galois_group, {(0,): -1, ext4.sigma[3]: 1})
    assert thT.is_integral()


def test_theta_duality_invariant():
    # char_eval(sharp(theta), chi) = L_S^T(0, chi) for all chi
    for f, sfin, tfin in ((4, (2,), (5,)), (23, (23,), (5,)), (9, (3,), (7,))):
        ext = extension_from_conductor(f, [])
        S, T = places(*sfin), PlaceSet.make(finite=tfin)
        th_sharp = theta(ext, S, T).sharp()
        for chi in dual_characters(ext.galois_group):
            dchi = DirichletChar.from_extension(ext, chi)
            expected = l0_ST(dchi, ext, S, T)
            assert char_eval(th_sharp, chi, max(chi.order, 1)) == expected


def test_theta_requires_archimedean_s():
    ext = extension_from_conductor(4, [])
    with pytest.raises(ValueError):
        theta(ext, PlaceSet(False, (2,)), PlaceSet.make())
    with pytest.raises(ValueError):
        theta(ext, places(2, 5), PlaceSet.make(finite=[5]))


def test_integrality_examples():
    ext4 = extension_from_conductor(4, [])
    v = check_integrality(ext4, places(2), PlaceSet.make(finite=[5]), 3)
    assert v.hypotheses_hold and v.integral_at_p

    # p = 2, T empty: hypothesis (iv) fails (w_L = 4), theta has denominator 4
    v = check_integrality(ext4, places(2), PlaceSet.make(), 2)
    assert not v.hypotheses_hold
    assert any("(iv)" in h for h in v.failed_hypotheses)
    assert not v.integral_at_p

    ext3 = extension_from_conductor(3, [])
    v = check_integrality(ext3, places(3), PlaceSet.make(finite=[7]), 5)
    assert v.hypotheses_hold and v.integral_at_p


def test_torsionfree_examples():
    ext4 = extension_from_conductor(4, [])    # w = 4
    assert torsionfree(ext4, PlaceSet.make(finite=[5]))
    assert torsionfree(ext4, PlaceSet.make(finite=[13]))
    ext3 = extension_from_conductor(3, [])    # w = 6
    assert not torsionfree(ext3, PlaceSet.make(finite=[3]))
    assert not torsionfree(ext3, PlaceSet.make(finite=[2]))
    assert torsionfree(ext3, PlaceSet.make(finite=[5]))
    assert not torsionfree(ext3, PlaceSet.make())  # empty T, w > 1
    # two places of different residue characteristic always suffice
    assert torsionfree(ext3, PlaceSet.make(finite=[2, 5]))


def test_choose_t0():
    assert choose_t0(extension_from_conductor(4, []), 3).finite == (5,)
    assert choose_t0(extension_from_conductor(23, []), 3).finite == (5,)
    assert choose_t0(extension_from_conductor(23, []), 5).finite == (3,)
    assert choose_t0(extension_from_conductor(9, []), 3).finite == (5,)


def test_sku_qi_hand_hnf():
    # SKu(Q(i), T0={5}) = (-1+s)^sharp (1+s, 1-(1+s)/2): HNF {{1,3},{0,4}}
    ext = extension_from_conductor(4, [])
    sku = sku_ideal(ext, PlaceSet.make(finite=[5]))
    assert sku.den == 1
    assert sku.basis == [[1, 3], [0, 4]]
    mc = MinusContext(ext.galois_group, ext.j)
    assert sku_ideal(ext, PlaceSet.make(finite=[5]), mc).basis == [[2]]


def test_sku_f23_norm_consistency():
    # frozen from the independent CN computation: the index p-part at 3 is
    # 9 = |A^{T0}(3)| (h^-(23) = 3 times the residue factor 3)
    ext = extension_from_conductor(23, [])
    mc = MinusContext(ext.galois_group, ext.j)
    sku = sku_ideal(ext, PlaceSet.make(finite=[5]), mc)
    assert sku.p_part_index(3) == 9
    full = sku_ideal(ext, PlaceSet.make(finite=[5]))
    assert full.elements_integral()
    assert full.rank == 12  # odd characters + trivial


def test_sku_rejects_bad_t0():
    ext = extension_from_conductor(4, [])
    with pytest.raises(ValueError):
        sku_ideal(ext, PlaceSet.make(finite=[2]))   # ramified
    ext3 = extension_from_conductor(3, [])
    with pytest.raises(ValueError):
        sku_ideal(ext3, PlaceSet.make(finite=[2]))  # torsion


def test_sku_factor_lift_independent():
    # the two-generator ideal does not depend on the Frobenius lift
    ext = extension_from_conductor(12, [])
    G = ext.galois_group
    amb = FullRingAmbient(G)
    from equistark.groupring import norm_element
    for ell in (2, 3):
        ld = ext.local_data(ell)
        base = sku_factor_ideal(ext, ell, amb)
        n_i = norm_element(ld.inertia, G)
        for h in ld.inertia.elements:
            lift = GroupRingElt.of_element(G, G.op(ld.frobenius, h))
            second = GroupRingElt.one(G) - lift * n_i * Fraction(1, ld.inertia.order)
            other = ZLattice.from_generators(amb, [n_i, second])
            assert other.basis == base.basis and other.den == base.den


def test_theta_factorization_examples():
    # unramified-outside-one-prime instance
    ext4 = extension_from_conductor(4, [])
    S1, T, T0 = etnc_sets(ext4, 3)
    assert theta_factorization_check(ext4, S1, T, T0, 3)
    # wild case f = 9, p = 3 (j in G_v)
    ext9 = extension_from_conductor(9, [])
    S1, T, T0 = etnc_sets(ext9, 3)
    assert S1.finite == (3,)  # 3 wildly ramified
    assert theta_factorization_check(ext9, S1, T, T0, 3)
    # degenerate: S_ram inside S_p with tame ramification (f=5, p=5):
    # the right product collapses to the factor-free form
    ext5 = extension_from_conductor(5, [])
    S1, T, T0 = etnc_sets(ext5, 5)
    assert S1.finite == () and T.finite == T0.finite
    assert theta_factorization_check(ext5, S1, T, T0, 5)


def test_factor_at_v_examples():
    # trivial inertia: membership trivially holds
    G = make_group([6])
    i_triv = G.subgroup([])
    g_v = G.subgroup([(1,)])
    assert factor_at_v_check(G, g_v, i_triv, (1,), 7, 3)
    # f = 23, v = 23, p = 3: |I| = 22, N = 23
    ext = extension_from_conductor(23, [])
    ld = ext.local_data(23)
    assert factor_at_v_check(ext.galois_group, ld.decomposition, ld.inertia,
                             ld.frobenius, 23, 3)


def test_factor_at_v_rejects_inadmissible():
    # v_p(|I_v|) > v_p(N(v)-1) must be rejected
    G = make_group([3])
    i_v = G.subgroup([(1,)])  # order 3
    with pytest.raises(ValueError):
        factor_at_v_check(G, i_v, i_v, (0,), 5, 3)  # 3 | |I|, 3 not | 4


def test_factor_at_v_randomized():
    rng = random.Random(11)
    done = 0
    while done < 60:
        G = make_group(rng.choice(([4], [6], [12], [2, 4], [2, 2], [22])))
        elements = G.elements()
        i_v = G.subgroup([rng.choice(elements)])
        g_v = G.subgroup(list(i_v.generators) + [rng.choice(elements)])
        phi = rng.choice(sorted(g_v.elements))
        p = rng.choice((3, 5, 7))
        ppart = 1
        m = i_v.order
        while m % p == 0:
            ppart *= p
            m //= p
        nv = 1 + ppart * rng.randint(1, 50)
        if nv < 2:
            continue
        assert factor_at_v_check(G, g_v, i_v, phi, nv, p)
        done += 1


def test_integrality_theorem_over_corpus():
    # every corpus member satisfying the hypotheses is p-integral
    corpus = []
    for f in (3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 23):
        ext = extension_from_conductor(f, [])
        for p in (3, 5, 7):
            S1, T, T0 = etnc_sets(ext, p)
            corpus.append((ext, S1, T, p))
    holds = 0
    for ext, S, T, p in corpus:
        verdict = check_integrality(ext, S, T, p)
        if verdict.hypotheses_hold:
            holds += 1
            assert verdict.integral_at_p
    assert holds >= 20


def test_containment_theorem_b():
    for f, p in ((4, 3), (9, 3), (23, 3), (23, 5), (23, 11), (12, 5), (20, 3)):
        ext = extension_from_conductor(f, [])
        assert theorem_b_hypothesis(ext, p)
        assert containment_check(ext, p), (f, p)


def test_theorem_b_hypothesis_can_fail():
    # f = 72, H = <17>: 3 is wildly ramified and j is not in G_3
    ext = extension_from_conductor(72, [17])
    ld = ext.local_data(3)
    assert ld.is_wild() and not ld.decomposition.contains(ext.j)
    assert not theorem_b_hypothesis(ext, 3)


def test_strong_stark_lvalue_valuations_f23():
    # independent oracle for the acceptance numbers: at p = 3 the only odd
    # character with nonzero valuation is the quadratic one, with value 2
    ext = extension_from_conductor(23, [])
    T0 = PlaceSet.make(finite=[5])
    quad_vals = None
    for chi in odd_characters(ext):
        dchi = DirichletChar.from_extension(ext, chi.contragredient())
        val = l0_ST(dchi, ext, s_infty(), T0)
        vals = dict(padic_valuations(val, 3))
        if chi.order == 2:
            quad_vals = vals
        else:
            assert all(v == 0 for v in vals.values())
    assert quad_vals == {1: 2}

"""Group-ring arithmetic, idempotent assembly, minus quotients, lattices."""

import random
from fractions import Fraction

import pytest
from equistark.abelian import dual_characters, make_group
from equistark.cyclo import CycloNumber
from equistark.groupring import (FullRingAmbient, GroupRingElt, MinusContext,
                                 ZLattice, assemble_from_char_values, char_eval,
                                 member_brute_force, norm_element)
from equistark.intlinalg import snf_diagonal


def test_assemble_examples():
    G = make_group([2])
    chars = dual_characters(G)
    triv = next(c for c in chars if c.is_trivial())
    odd = next(c for c in chars if not c.is_trivial())
    # all values 1 -> identity
    one = assemble_from_char_values({c: CycloNumber.one() for c in chars}, G)
    assert one == GroupRingElt.one(G)
    # (triv -> 0, odd -> 1/2) -> 1/4 - 1/4 sigma
    x = assemble_from_char_values(
        {triv: CycloNumber.zero(), odd: CycloNumber.rational(Fraction(1, 2))}, G)
    assert x == GroupRingElt(G, {(0,): Fraction(1, 4), (1,): Fraction(-1, 4)})
    # trivial group
    T = make_group([])
    c = assemble_from_char_values(
        {dual_characters(T)[0]: CycloNumber.rational(7)}, T)
    assert c == GroupRingElt(T, {(): 7})


def test_assemble_rejects_non_equivariant():
    G = make_group([4])
    chars = dual_characters(G)
    values = {}
    for chi in chars:
        if chi.order == 4 and chi.exponents == (1,):
            values[chi] = CycloNumber.root(4)  # i
        elif chi.order == 4:
            values[chi] = CycloNumber.root(4)  # should be -i: not equivariant
        else:
            values[chi] = CycloNumber.one()
    with pytest.raises(ValueError, match="non-equivariant"):
        assemble_from_char_values(values, G)


def test_assemble_roundtrip_random():
    # assemble o char_eval = identity on random rational elements
    rng = random.Random(71)
    for factors in ([2], [6], [2, 4], [24], [3, 3]):
        G = make_group(factors)
        if G.order > 24:
            continue
        chars = dual_characters(G)
        for _ in range(10):
            base = GroupRingElt(G, {g: Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                                    for g in G.elements()})
            values = {chi: char_eval(base, chi, G.exponent) for chi in chars}
            assert assemble_from_char_values(values, G) == base


def test_sharp_examples_and_involution():
    G = make_group([2])
    x = GroupRingElt(G, {(0,): 1, (1,): 2})
    assert x.sharp() == x  # sigma^-1 = sigma
    rng = random.Random(73)
    for factors in ([6], [2, 4], [22]):
        H = make_group(factors)
        for _ in range(10):
            a = GroupRingElt(H, {g: rng.randint(-5, 5) for g in H.elements()})
            b = GroupRingElt(H, {g: rng.randint(-5, 5) for g in H.elements()})
            assert a.sharp().sharp() == a
            assert (a * b).sharp() == a.sharp() * b.sharp()


def test_norm_element_examples():
    G4 = make_group([4])
    sub = G4.subgroup([(2,)])
    assert norm_element(sub, G4) == GroupRingElt(G4, {(0,): 1, (2,): 1})
    n_full = norm_element(G4.full_subgroup(), G4)
    for chi in dual_characters(G4):
        val = char_eval(n_full, chi)
        assert val == (4 if chi.is_trivial() else 0)


def test_lattice_whole_ring_membership():
    G = make_group([6])
    amb = FullRingAmbient(G)
    unit = ZLattice.principal(amb, GroupRingElt.one(G))
    rng = random.Random(79)
    for _ in range(10):
        x = [rng.randint(-9, 9) for _ in range(amb.rank)]
        assert unit.member(x)


def test_lattice_minus_c2_examples():
    # minus quotient of C2 is Z; ideal (3)
    G = make_group([2])
    mc = MinusContext(G, (1,))
    lat = ZLattice.from_generators(mc, [[Fraction(3)]])
    assert lat.member([6])
    assert not lat.member([2])
    assert lat.member_at_p([2], 5)      # 2 = (2/3) * 3
    assert not lat.member_at_p([2], 3)


def test_lattice_index_example():
    G = make_group([2])
    amb = FullRingAmbient(G)
    lat2 = ZLattice.principal(amb, GroupRingElt(G, {(0,): 2}))
    assert lat2.index_in_ambient() == 4  # scaling by 2 in rank 2
    assert lat2.p_part_index(2) == 4


def test_member_at_p_matches_brute_force():
    rng = random.Random(83)
    G = make_group([2])
    mc = MinusContext(G, (1,))
    for _ in range(30):
        gens = [[Fraction(rng.randint(1, 12))]]
        lat = ZLattice.from_generators(mc, gens)
        x = [Fraction(rng.randint(-15, 15), rng.choice((1, 1, 2)))]
        for p in (3, 5, 7):
            assert lat.member_at_p(x, p) == member_brute_force(x, lat, p)
    # rank-2 case over full C2
    amb = FullRingAmbient(G)
    for _ in range(20):
        gen = GroupRingElt(G, {(0,): rng.randint(-4, 4), (1,): rng.randint(-4, 4)})
        if not gen.coeffs:
            continue
        lat = ZLattice.principal(amb, gen)
        if not lat.is_full_rank():
            continue
        x = [rng.randint(-6, 6), rng.randint(-6, 6)]
        for p in (3, 5):
            assert lat.member_at_p(x, p) == member_brute_force(x, lat, p)


def test_index_in_matches_snf_oracle():
    rng = random.Random(89)
    G = make_group([6])
    mc = MinusContext(G, (3,))
    for _ in range(20):
        big = ZLattice.from_generators(
            mc, [[rng.randint(-3, 3) for _ in range(mc.rank)] for _ in range(3)])
        if not big.is_full_rank():
            continue
        mult = GroupRingElt(G, {g: rng.randint(-2, 2) for g in G.elements()})
        small = big.product(ZLattice.principal(mc, mc.project(mult)))
        if not small.is_full_rank():
            continue
        index = small.index_in(big)
        # oracle: express small basis in big's coordinates, SNF divisors
        coords = []
        for row in small.fraction_rows():
            sol = big._solve(row)
            coords.append([int(c) for c in sol])
        divisors = snf_diagonal(coords)
        prod = 1
        for d in divisors:
            prod *= d
        assert index == prod == big.index_in_ambient() ** -1 * small.index_in_ambient()


def test_ideal_closure_under_group_action():
    rng = random.Random(97)
    G = make_group([2, 4])
    amb = FullRingAmbient(G)
    gen = GroupRingElt(G, {g: rng.randint(-3, 3) for g in G.elements()})
    lat = ZLattice.principal(amb, gen)
    for g in G.elements():
        shifted = amb.mult_vec(amb.vector_of(GroupRingElt.of_element(G, g)),
                               amb.vector_of(gen))
        assert lat.member(shifted)


def test_minus_context_projection_relations():
    G = make_group([22])
    mc = MinusContext(G, (11,))
    assert mc.rank == 11
    one_plus_j = GroupRingElt(G, {(0,): 1, (11,): 1})
    rng = random.Random(101)
    for _ in range(10):
        x = GroupRingElt(G, {g: rng.randint(-5, 5) for g in G.elements()})
        assert not any(mc.project(one_plus_j * x))


def test_product_index_multiplicative_at_full_rank():
    G = make_group([6])
    mc = MinusContext(G, (3,))
    a = ZLattice.from_generators(mc, [mc.project(GroupRingElt(G, {(0,): 2, (1,): 1}))])
    b = ZLattice.from_generators(mc, [mc.project(GroupRingElt(G, {(0,): 3, (2,): 1}))])
    if a.is_full_rank() and b.is_full_rank():
        ab = a.product(b)
        assert ab.index_in_ambient() == a.index_in_ambient() * b.index_in_ambient()

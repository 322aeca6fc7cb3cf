"""Stickelberger elements with (S,T) decorations, the p-integrality
criterion, the Sinnott-Kurihara ideal, the theta factorization identity,
the local two-generator membership, and the unit torsion-freeness
criterion.

Conventions (the main foot-guns, pinned once):
  chi(theta_S^T) = L_S^T(0, chi_check)  for every character chi;
  the T-smoothing factor in the group ring is
      x_v = 1 - N(v) * phi_v^{-1} * e_{I_v},  e_{I_v} = |I_v|^{-1} N_{I_v},
  which satisfies chi(x_v) = 1 - chi_check(phi_v) N(v) with the ramified
  convention chi(phi_v) = 0.
"""

from dataclasses import dataclass
from fractions import Fraction

from .abelian import dual_characters
from .groupring import (FullRingAmbient, GroupRingElt, MinusContext, ZLattice,
                        assemble_from_char_values, norm_element)
from .lvalues import DirichletChar, DirichletEngine, PartialZetaProvider, l0_ST


@dataclass(frozen=True)
class PlaceSet:
    """A set of places of Q: the archimedean flag plus finite primes."""

    infinite: bool
    finite: tuple

    @classmethod
    def make(cls, infinite=False, finite=()):
        primes = tuple(sorted(set(int(p) for p in finite)))
        for p in primes:
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError("%d is not a prime" % p)
        return cls(infinite, primes)

    @classmethod
    def infinity(cls):
        return cls(True, ())

    def union(self, other):
        return PlaceSet(self.infinite or other.infinite,
                        tuple(sorted(set(self.finite) | set(other.finite))))

    def disjoint_from(self, other):
        return not (set(self.finite) & set(other.finite)) and \
            not (self.infinite and other.infinite)

    def __repr__(self):
        bits = (["inf"] if self.infinite else []) + [str(p) for p in self.finite]
        return "{%s}" % ",".join(bits)


def s_infty():
    return PlaceSet.infinity()


def s_ram(ext):
    return PlaceSet.make(finite=ext.ramified_primes())


def odd_characters(ext):
    return [chi for chi in dual_characters(ext.galois_group) if chi.is_odd(ext.j)]


def smoothing_factor(ext, ell):
    """The group-ring T-factor x_v = 1 - N(v) phi^{-1} e_{I_v} at v = ell."""
    ld = ext.local_data(ell)
    G = ext.galois_group
    e_inertia = norm_element(ld.inertia, G) * Fraction(1, ld.inertia.order)
    phi_inv = GroupRingElt.of_element(G, G.inv(ld.frobenius))
    return GroupRingElt.one(G) - (phi_inv * e_inertia) * ld.nv


def theta(ext, S, T, provider=None):
    """The Stickelberger element theta_{L/Q,S}^T in Q[G].

    With the built-in Dirichlet engine the element is assembled from
    character values chi |-> L_S^T(0, chi_check); with a partial-zeta
    provider it is sum_sigma zeta_S(0, sigma) sigma^{-1} with the
    T-factors multiplied in the group ring.
    """
    if not S.infinite:
        raise ValueError("S must contain the archimedean places")
    if T.infinite or (set(S.finite) & set(T.finite)):
        raise ValueError("T must be finite and disjoint from S")
    G = ext.galois_group
    if provider is None or isinstance(provider, DirichletEngine):
        values = {}
        for chi in dual_characters(G):
            dchi = DirichletChar.from_extension(ext, chi.contragredient())
            values[chi] = l0_ST(dchi, ext, S, T)
        return assemble_from_char_values(values, G)
    if isinstance(provider, PartialZetaProvider):
        if provider.S != S:
            raise ValueError("partial zeta table was computed for S = %r, not %r"
                             % (provider.S, S))
        out = GroupRingElt.zero(G)
        for g in G.elements():
            out = out + GroupRingElt.of_element(G, G.inv(g), provider.zeta_value(g))
        for ell in T.finite:
            out = out * smoothing_factor(ext, ell)
        return out
    raise TypeError("unknown L-value provider: %r" % (provider,))


def torsionfree(ext, T):
    """Whether E_{L,S}^T is torsion-free: no nontrivial root of unity in L
    is congruent to 1 at every place of T(L).

    Exact criterion over Q: reduction is injective on prime-to-ell roots
    of unity while any zeta of q-power order is = 1 at every place above
    q; so the group is torsion-free iff for every prime q dividing w_L
    some v in T has residue characteristic different from q.
    """
    w = ext.w_roots_of_unity
    if not T.finite:
        return w == 1
    for q in _prime_divisors(w):
        if not any(ell != q for ell in T.finite):
            return False
    return True


@dataclass
class IntegralityVerdict:
    hypotheses_hold: bool
    failed_hypotheses: list
    integral_at_p: bool
    theta_value: GroupRingElt

    def consistent(self):
        return self.integral_at_p or not self.hypotheses_hold


def check_integrality(ext, S, T, p):
    """Instantiate the p-integrality criterion for theta_S^T.

    Hypotheses: (i) S u T contains every non-p-adic ramified place,
    (ii) S contains every wildly ramified p-adic place, (iii) S contains
    the archimedean places, (iv) E_{L,S}^{T0} is torsion-free for the
    unramified part T0 of T.  When they hold, every coefficient
    denominator of theta must be coprime to p; a violation is a
    build-stopping bug, surfaced via `consistent()`.
    """
    failed = []
    ram = ext.ramified_primes()
    in_s_or_t = set(S.finite) | set(T.finite)
    if any(ell != p and ell not in in_s_or_t for ell in ram):
        failed.append("(i) S u T misses a non-p-adic ramified place")
    if p in ram and ext.local_data(p).is_wild() and p not in S.finite:
        failed.append("(ii) S misses a wildly ramified p-adic place")
    if not S.infinite:
        failed.append("(iii) S misses the archimedean places")
    T0 = PlaceSet.make(finite=[ell for ell in T.finite
                               if not ext.local_data(ell).ramified])
    if not torsionfree(ext, T0):
        failed.append("(iv) E^{T0} has torsion")
    th = theta(ext, S, T)
    integral = th.denominators_coprime_to(p)
    verdict = IntegralityVerdict(not failed, failed, integral, th)
    assert verdict.consistent(), \
        "integrality criterion violated: hypotheses hold but theta is not p-integral"
    return verdict


def choose_t0(ext, p):
    """Deterministic T0 = {least prime l0 not dividing f * w_L * p}."""
    bad = ext.conductor * ext.w_roots_of_unity * p
    ell = 2
    while True:
        if bad % ell and _is_prime(ell):
            return PlaceSet.make(finite=[ell])
        ell += 1


def sku_factor_ideal(ext, ell, ambient=None):
    """The two-generator factor (N_{I_v}, 1 - phi_w |I_v|^{-1} N_{I_v})."""
    ld = ext.local_data(ell)
    G = ext.galois_group
    ambient = ambient or FullRingAmbient(G)
    n_inertia = norm_element(ld.inertia, G)
    phi = GroupRingElt.of_element(G, ld.frobenius)
    second = GroupRingElt.one(G) - phi * n_inertia * Fraction(1, ld.inertia.order)
    if isinstance(ambient, MinusContext):
        gens = [ambient.project(n_inertia), ambient.project(second)]
    else:
        gens = [n_inertia, second]
    return ZLattice.from_generators(ambient, gens)


def sku_ideal(ext, T0, ambient=None):
    """The Sinnott-Kurihara ideal (theta_{S_infty}^{T0})^sharp *
    prod_{v ramified finite} (N_{I_v}, 1 - phi_w |I_v|^{-1} N_{I_v}).

    Returns the lattice in the requested ambient (full ring by default;
    pass a MinusContext for the minus-quotient image).  Integrality in
    Z[G] is asserted on the full-ring lattice: a failure would mean a
    convention bug and stops the build.
    """
    if not torsionfree(ext, T0):
        raise ValueError("T0 = %r does not make E^{T0} torsion-free" % (T0,))
    if any(ext.local_data(ell).ramified for ell in T0.finite):
        raise ValueError("T0 must be unramified")
    G = ext.galois_group
    full = FullRingAmbient(G)
    th_sharp = theta(ext, s_infty(), T0).sharp()
    lattice = ZLattice.principal(full, th_sharp)
    for ell in ext.ramified_primes():
        lattice = lattice.product(sku_factor_ideal(ext, ell, full))
    assert lattice.elements_integral(), \
        "Sinnott-Kurihara ideal is not contained in Z[G]: convention bug"
    if isinstance(ambient, MinusContext):
        return lattice.minus_image(ambient)
    return lattice


def etnc_sets(ext, p):
    """S1, T, T0 exactly as in the abelian proof pipeline: S1 = S_infty
    plus wildly ramified p-adic places; T = T0 plus the non-p-adic
    ramified places; T0 from choose_t0."""
    T0 = choose_t0(ext, p)
    wild_p = [p] if p in ext.ramified_primes() and ext.local_data(p).is_wild() else []
    S1 = PlaceSet(True, tuple(wild_p))
    T = T0.union(PlaceSet.make(finite=[ell for ell in ext.ramified_primes() if ell != p]))
    return S1, T, T0


def theorem_b_hypothesis(ext, p):
    """Every p-adic place tame, or j in the decomposition group."""
    if p not in ext.ramified_primes():
        return True
    ld = ext.local_data(p)
    return (not ld.is_wild()) or ld.decomposition.contains(ext.j)


def containment_check(ext, p, T0=None):
    """member_at_p((theta_{S1}^T)^sharp, SKu^{T0}, p): Theorem B's core.

    T0 defaults to the deterministic choice; a caller-supplied T0 must
    be a single unramified place keeping E^{T0} torsion-free.
    """
    S1, T, default_t0 = etnc_sets(ext, p)
    if T0 is None:
        T0 = default_t0
    else:
        T = T0.union(PlaceSet.make(
            finite=[ell for ell in ext.ramified_primes() if ell != p]))
    th = theta(ext, S1, T).sharp()
    sku = sku_ideal(ext, T0)
    return sku.member_at_p(sku.ambient.vector_of(th), p)


def theta_factorization_check(ext, S1, T, T0, p):
    """Exact identity in Q[G]:
    (theta_{S1}^T)^sharp = (theta_{S_infty}^{T0})^sharp
        * prod_{v in S_ram \\ S_p} (1 - phi_w N(v) |I_v|^{-1} N_{I_v})
        * prod_{v in S_ram n S_1} (1 - phi_w |I_v|^{-1} N_{I_v}),
    both sides computed independently from L-values and Euler algebra.

    The second product runs over the wildly ramified p-adic places (the
    finite part of S1) only: at a tamely ramified p-adic place neither
    side carries a factor, and the corresponding Sinnott-Kurihara factor
    ideal is the unit ideal after localization at p.
    """
    G = ext.galois_group
    lhs = theta(ext, S1, T).sharp()
    rhs = theta(ext, s_infty(), T0).sharp()
    for ell in ext.ramified_primes():
        ld = ext.local_data(ell)
        e_inertia = norm_element(ld.inertia, G) * Fraction(1, ld.inertia.order)
        phi = GroupRingElt.of_element(G, ld.frobenius)
        if ell != p:
            rhs = rhs * (GroupRingElt.one(G) - phi * e_inertia * ld.nv)
        elif ell in S1.finite:
            rhs = rhs * (GroupRingElt.one(G) - phi * e_inertia)
    return lhs == rhs


def factor_at_v_check(group, g_v, i_v, phi, nv, p):
    """eqn (factor-at-v): verify the exact group-ring identity
    1 - phi N(v) |I|^{-1} N_I = (1 - phi |I|^{-1} N_I) - phi ((N(v)-1)/|I|) N_I
    and then membership of the left side in (N_I, 1 - phi |I|^{-1} N_I)
    at p.  Requires the local-CFT divisibility v_p(|I|) <= v_p(N(v)-1).
    """
    from .intlinalg import prime_valuation
    if prime_valuation(max(i_v.order, 1), p) > prime_valuation(nv - 1, p):
        raise ValueError("non-admissible local datum: |I_v| does not divide "
                         "N(v)-1 up to a p-adic unit")
    G = group
    n_i = norm_element(i_v, G)
    e_i = n_i * Fraction(1, i_v.order)
    phi_elt = GroupRingElt.of_element(G, phi)
    lhs = GroupRingElt.one(G) - phi_elt * e_i * nv
    rhs = (GroupRingElt.one(G) - phi_elt * e_i) - phi_elt * n_i * Fraction(nv - 1, i_v.order)
    if lhs != rhs:
        return False
    ambient = FullRingAmbient(G)
    ideal = ZLattice.from_generators(
        ambient, [n_i, GroupRingElt.one(G) - phi_elt * e_i])
    return ideal.member_at_p(ambient.vector_of(lhs), p)


def theta_classical_oracle(ext):
    """Independent partial-zeta formula sum_{(a,f)=1} (1/2 - a/f) sigma_a^{-1}
    (equals theta_{S_infty u ram} with no smoothing)."""
    G = ext.galois_group
    f = ext.conductor
    out = GroupRingElt.zero(G)
    for a, g in ext.sigma.items():
        out = out + GroupRingElt.of_element(G, G.inv(g), Fraction(1, 2) - Fraction(a, f))
    return out


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True

"""Exact Dirichlet L-values at s = 0.

Values are computed through generalized Bernoulli numbers
B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a for primitive chi, with
L(0, chi) = -B_{1,chi} for nontrivial chi and zeta(0) = -1/2.  The
S-truncation and T-smoothing factors are handled here explicitly; this
module never silently dualizes a character (callers pass the
contragredient where the Stickelberger convention demands it).
"""

from fractions import Fraction
from math import gcd, lcm

from .abelian import unit_group
from .cyclo import CycloNumber


class DirichletChar:
    """Dirichlet character: modulus f plus a character of (Z/f)^*.

    chi(a) = 0 when gcd(a, f) > 1; otherwise a root of unity stored as
    an exponent of zeta_E for a fixed E (any multiple of the order).
    """

    def __init__(self, modulus, zeta_order, exponents):
        self.modulus = modulus
        self.zeta_order = zeta_order
        self.exponents = dict(exponents)
        if modulus == 1:
            self.exponents = {0: 0}
        ords = [1]
        for t in self.exponents.values():
            if t % zeta_order:
                ords.append(zeta_order // gcd(zeta_order, t))
        self.order = lcm(*ords)
        self._conductor = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_unit_character(cls, modulus, chi):
        group, ulog, _ = unit_group(modulus)
        assert chi.group == group
        E = max(group.exponent, 1)
        exps = {a: chi.zeta_exponent(g) for a, g in ulog.items()}
        return cls(modulus, E, exps)

    @classmethod
    def from_extension(cls, ext, chi):
        """Inflate a character of Gal(L/Q) to a Dirichlet character mod f."""
        assert chi.group == ext.galois_group
        E = max(ext.galois_group.exponent, 1)
        exps = {a: chi.zeta_exponent(g) for a, g in ext.sigma.items()}
        return cls(ext.conductor, E, exps)

    @classmethod
    def trivial(cls):
        return cls(1, 1, {0: 0})

    # -- values -----------------------------------------------------------
    def value(self, a, order=None):
        m = order or max(self.order, 1)
        if self.modulus == 1:
            return CycloNumber.one(m)
        a %= self.modulus
        if gcd(a, self.modulus) != 1:
            return CycloNumber.zero(m)
        t = self.exponents[a]
        if (t * m) % self.zeta_order:
            raise ValueError("value does not lie in Q(zeta_%d)" % m)
        return CycloNumber.root(m, t * m // self.zeta_order)

    def is_trivial(self):
        return self.order == 1

    def is_odd(self):
        if self.modulus == 1:
            return False
        t = self.exponents[self.modulus - 1]
        return t != 0  # chi(-1) = +-1, nonzero exponent means -1

    def is_even(self):
        return not self.is_odd()

    @property
    def conductor(self):
        if self._conductor is None:
            f = self.modulus
            best = f
            for d in _divisors(f):
                if d >= best:
                    continue
                ok = all(self.exponents[a] == 0
                         for a in self.exponents if a % d == 1 % max(d, 1))
                if ok:
                    best = d
            self._conductor = best
        return self._conductor

    def is_primitive(self):
        return self.conductor == self.modulus

    def primitivize(self):
        """The primitive character of conductor f_chi inducing chi."""
        fc = self.conductor
        if fc == self.modulus:
            return self
        if fc == 1:
            return DirichletChar.trivial()
        exps = {}
        for b in range(1, fc):
            if gcd(b, fc) != 1:
                continue
            a = b
            while gcd(a, self.modulus) != 1:
                a += fc
            exps[b] = self.exponents[a % self.modulus]
        return DirichletChar(fc, self.zeta_order, exps)

    def contragredient(self):
        exps = {a: (-t) % self.zeta_order for a, t in self.exponents.items()}
        return DirichletChar(self.modulus, self.zeta_order, exps)

    def _canonical(self):
        m = max(self.order, 1)
        return (self.modulus, m,
                tuple(sorted((a, t * m // self.zeta_order) for a, t in self.exponents.items())))

    def __eq__(self, other):
        return isinstance(other, DirichletChar) and self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        return "DirichletChar(mod %d, order %d)" % (self.modulus, self.order)


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def b1(chi):
    """Generalized Bernoulli number B_{1,chi} for primitive nontrivial chi."""
    if chi.is_trivial():
        raise ValueError("B_1 of the trivial character is handled by l0 directly")
    if not chi.is_primitive():
        raise ValueError("b1 requires a primitive character")
    f = chi.modulus
    m = chi.order
    # chi(a) is a root of unity: accumulate exponentwise in Z[x]/(x^m - 1)
    acc = [0] * m
    for a in range(1, f):
        if gcd(a, f) == 1:
            t = chi.exponents[a]
            acc[(t * m // chi.zeta_order) % m] += a
    return CycloNumber(m, acc) * Fraction(1, f)


def l0(chi):
    """L(0, chi): -B_1 of the primitivization; zeta(0) = -1/2 if trivial."""
    prim = chi.primitivize()
    if prim.is_trivial():
        return CycloNumber.rational(Fraction(-1, 2))
    val = -b1(prim)
    if chi.is_even():
        assert val.is_zero(), "even nontrivial character with L(0) != 0"
    return val


def l0_ST(chi, ext, S, T):
    """L_S^T(0, chi) for S containing the archimedean place, S, T disjoint.

    l0(chi) * prod_{v in S_f} (1 - chi_prim(v)) * prod_{v in T} (1 - chi_prim(v) N(v)),
    with chi_prim(v) = 0 exactly when v divides the conductor of chi.

    Over Q the extension datum is redundant (N(v) = v and the Frobenius
    value is chi_prim(v)); `ext` stays in the signature as the hook a
    non-rational base field's place bookkeeping would need.
    """
    if not S.infinite:
        raise ValueError("S must contain the archimedean place")
    if set(S.finite) & set(T.finite):
        raise ValueError("S and T must be disjoint")
    if T.infinite:
        raise ValueError("T must consist of finite places")
    prim = chi.primitivize()
    m = max(chi.order, 1)
    val = l0(chi)
    for ell in S.finite:
        val = val * (CycloNumber.one(m) - prim.value(ell, m))
    for ell in T.finite:
        val = val * (CycloNumber.one(m) - prim.value(ell, m) * ell)
    return val


# ---------------------------------------------------------------------------
# providers


class DirichletEngine:
    """Built-in L-value provider for K = Q."""

    kind = "dirichlet"


class PartialZetaProvider:
    """Fixture-supplied table of partial zeta values zeta_S(0, sigma).

    The table is attached to a specific truncation set S; every sigma in
    G must be covered and values must be rational.
    """

    kind = "partial-zeta"

    def __init__(self, ext, S, table):
        self.ext = ext
        self.S = S
        clean = {}
        for g, v in table.items():
            clean[ext.galois_group.reduce(g)] = Fraction(v)
        missing = [g for g in ext.galois_group.elements() if g not in clean]
        if missing:
            raise ValueError("partial zeta table misses %d group elements" % len(missing))
        self.table = clean

    def zeta_value(self, g):
        return self.table[self.ext.galois_group.reduce(g)]


def classical_partial_zeta_table(ext):
    """zeta_S(0, sigma_a) = 1/2 - a/f for S = S_infty plus the ramified
    primes; the independent oracle route for full cyclotomic fields."""
    f = ext.conductor
    table = {}
    for a, g in ext.sigma.items():
        table.setdefault(g, Fraction(0))
        table[g] += Fraction(1, 2) - Fraction(a, f)
    return table


def analytic_minus_h(ext):
    """w_L * prod_{chi odd} (-B_1(chi)/2), the analytic minus class number
    (up to the unit index Q in {1,2}, irrelevant at odd primes)."""
    from .stickelberger import odd_characters  # local import to avoid a cycle
    prod = CycloNumber.one()
    for chi in odd_characters(ext):
        dchi = DirichletChar.from_extension(ext, chi).primitivize()
        prod = prod * (-b1(dchi)) * Fraction(1, 2)
    value = prod.as_fraction() * ext.w_roots_of_unity
    assert value > 0
    return value

"""Finite abelian groups in invariant-factor form, subgroups, quotients,
characters, and the explicit structure of (Z/f)^*.

Group elements are exponent tuples, reduced componentwise; enumeration
order is lexicographic on exponent vectors (this is the canonical
ordering used for group-ring coordinates and fixture serialization).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, lcm, prod

from sympy import primitive_root

from .cyclo import CycloNumber
from .intlinalg import snf_diagonal, snf_with_transform


class FiniteAbelianGroup:
    """Product of cyclic groups Z/d_1 x ... x Z/d_k with d_1 | ... | d_k."""

    def __init__(self, invariant_factors):
        factors = tuple(int(d) for d in invariant_factors)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("not a divisibility chain: %r" % (factors,))
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must be >= 2: %r" % (factors,))
        self.invariant_factors = factors

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self):
        return len(self.invariant_factors)

    def identity(self):
        return (0,) * self.rank

    def reduce(self, vec):
        return tuple(v % d for v, d in zip(vec, self.invariant_factors))

    def op(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def inv(self, a):
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors))

    def power(self, a, n):
        return tuple((x * n) % d for x, d in zip(a, self.invariant_factors))

    def element_order(self, a):
        return lcm(1, *(d // gcd(d, x) for x, d in zip(a, self.invariant_factors)))

    def elements(self):
        """All elements in canonical (lexicographic) order."""
        return list(product(*(range(d) for d in self.invariant_factors)))

    def subgroup(self, generators):
        return Subgroup(self, generators)

    def full_subgroup(self):
        gens = []
        for i, _ in enumerate(self.invariant_factors):
            vec = [0] * self.rank
            vec[i] = 1
            gens.append(tuple(vec))
        return Subgroup(self, gens)

    def quotient(self, subgroup):
        """Quotient group in invariant-factor form plus the projection map.

        Returns (Q, project) with project a function on parent elements.
        """
        k = self.rank
        rows = [[self.invariant_factors[i] if j == i else 0 for j in range(k)]
                for i in range(k)]
        rows += [list(g) for g in subgroup.generators]
        if k == 0:
            return FiniteAbelianGroup([]), lambda e: ()
        diag, _, V = snf_with_transform(rows)
        keep = [i for i, d in enumerate(diag) if d > 1]
        quotient = FiniteAbelianGroup([diag[i] for i in keep])

        def project(elem):
            image = [sum(elem[r] * V[r][c] for r in range(k)) for c in range(k)]
            return tuple(image[i] % diag[i] for i in keep)

        return quotient, project

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and \
            self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        if not self.invariant_factors:
            return "C1"
        return " x ".join("C%d" % d for d in self.invariant_factors)


def make_group(factors):
    """Build a FiniteAbelianGroup from arbitrary cyclic orders.

    Input entries need not form a divisibility chain; they are
    renormalized to invariant factors by elementary divisor reduction.
    """
    factors = [int(d) for d in factors]
    if any(d < 1 for d in factors):
        raise ValueError("cyclic orders must be positive")
    factors = [d for d in factors if d > 1]
    if not factors:
        return FiniteAbelianGroup([])
    chain_ok = all(b % a == 0 for a, b in zip(factors, factors[1:]))
    if chain_ok:
        return FiniteAbelianGroup(factors)
    n = len(factors)
    diag = [[factors[i] if j == i else 0 for j in range(n)] for i in range(n)]
    divisors = [d for d in snf_diagonal(diag) if d > 1]
    return FiniteAbelianGroup(divisors)


class Subgroup:
    """Subgroup of a FiniteAbelianGroup, given by generators.

    Carries its element set (closures are desk-scale here), its own
    invariant factors, and its index in the parent.
    """

    def __init__(self, parent, generators):
        self.parent = parent
        self.generators = tuple(parent.reduce(g) for g in generators)
        elems = {parent.identity()}
        frontier = [parent.identity()]
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    cand = parent.op(e, g)
                    if cand not in elems:
                        elems.add(cand)
                        nxt.append(cand)
            frontier = nxt
        self.elements = frozenset(elems)
        assert parent.order % len(elems) == 0  # Lagrange
        if self.generators and len(elems) > 1:
            self.invariant_factors = _subgroup_invariants(parent, self.generators, len(elems))
        else:
            self.invariant_factors = ()
        self.order = len(elems)
        self.index = parent.order // self.order

    def contains(self, elem):
        return self.parent.reduce(elem) in self.elements

    def __repr__(self):
        return "Subgroup(%r, order=%d)" % (self.parent, self.order)


def _subgroup_invariants(parent, generators, sub_order):
    """Invariant factors of the subgroup generated by `generators`."""
    s = len(generators)
    k = parent.rank
    # kernel of Z^s -> G: {x : sum_i x_i g_i == 0 in G}
    # i.e. exists y with x*M = y*D, M the generator matrix, D = diag(d).
    # Kernel = projection to x-coords of the integer kernel of [M; -D].
    mat = [[generators[i][j] for j in range(k)] for i in range(s)]
    for j in range(k):
        row = [0] * k
        row[j] = parent.invariant_factors[j]
        mat.append(row)
    from .intlinalg import kernel_basis
    kern = kernel_basis(mat)  # rows (x | y) of length s + k with x*M = y*D
    xpart = [row[:s] for row in kern]
    if not xpart:
        return ()
    diag = snf_diagonal(xpart)
    # subgroup = Z^s / ker; ker has full rank s since subgroup finite
    divisors = [d for d in diag if d > 1]
    assert prod(divisors) == sub_order
    return tuple(divisors)


@dataclass(frozen=True)
class Character:
    """Character of a FiniteAbelianGroup.

    chi(g) = zeta_E^(sum_i c_i g_i E/d_i) with E = exp(G); exponent data
    c_i mod d_i.  Values are produced lazily as CycloNumber of order E
    (or any requested multiple of ord(chi)).
    """

    group: FiniteAbelianGroup
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", self.group.reduce(self.exponents))

    @property
    def order(self):
        return lcm(1, *(d // gcd(d, c) for c, d in
                        zip(self.exponents, self.group.invariant_factors)))

    def zeta_exponent(self, elem):
        """t with chi(elem) = zeta_E^t, E = exp(G)."""
        E = self.group.exponent
        t = 0
        for c, x, d in zip(self.exponents, self.group.reduce(elem),
                           self.group.invariant_factors):
            t += c * x * (E // d)
        return t % E

    def value(self, elem, order=None):
        """chi(elem) as a CycloNumber of the given order (default exp(G))."""
        E = self.group.exponent
        t = self.zeta_exponent(elem)
        if order is None:
            order = E
        # zeta_E^t as element of Q(zeta_order): requires ord(chi(elem)) | order
        e_red = E // gcd(E, t) if t else 1
        if order % e_red:
            raise ValueError("value of order %d not in Q(zeta_%d)" % (e_red, order))
        return CycloNumber.root(order, t * order // E)

    def is_trivial(self):
        return all(c == 0 for c in self.exponents)

    def is_odd(self, j):
        """chi(j) = -1 for the designated involution j."""
        E = self.group.exponent
        return self.zeta_exponent(j) == E // 2 and E % 2 == 0

    def trivial_on(self, elements):
        return all(self.zeta_exponent(e) == 0 for e in elements)

    def contragredient(self):
        return Character(self.group, tuple(-c for c in self.exponents))

    def galois_twist(self, k):
        """chi^k, i.e. g |-> chi(g)^k."""
        return Character(self.group, tuple(k * c for c in self.exponents))

    def times(self, other):
        assert self.group == other.group
        return Character(self.group, tuple(a + b for a, b in
                                           zip(self.exponents, other.exponents)))


def dual_characters(group):
    """All |G| characters, in the canonical enumeration order."""
    return [Character(group, exps) for exps in
            product(*(range(d) for d in group.invariant_factors))]


# ---------------------------------------------------------------------------
# the unit group (Z/f)^*


def _local_unit_generators(q):
    """Generators (with orders) of (Z/q)^* for a prime power q."""
    # factor q
    p = None
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    e = 0
    qq = q
    while qq % p == 0:
        qq //= p
        e += 1
    assert qq == 1
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(q - 1, 2), (3, 2 ** (e - 2))]
    g = int(primitive_root(q))
    return [(g, (p - 1) * p ** (e - 1))]


def _crt_pair(r1, m1, r2, m2):
    from .intlinalg import xgcd
    g, x, _ = xgcd(m1, m2)
    assert g == 1
    return (r1 + (r2 - r1) * x % m2 * m1) % (m1 * m2)


@lru_cache(maxsize=None)
def unit_group(f):
    """The group (Z/f)^* in invariant-factor form with its dlog table.

    Returns (group, log, exp_table) where log maps a residue coprime to
    f to a group element and exp_table maps elements back to the
    smallest positive residue representing them.
    """
    if f < 1:
        raise ValueError("modulus must be positive")
    # prime power decomposition
    pieces = []
    n = f
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            pieces.append(q)
        d += 1
    if n > 1:
        pieces.append(n)
    gens = []  # (global residue, order)
    for q in pieces:
        for g, order in _local_unit_generators(q):
            glob = g % q
            rest = f // q
            if rest > 1:
                glob = _crt_pair(g, q, 1, rest)
            gens.append((glob, order))
    if not gens:
        group = FiniteAbelianGroup([])
        return group, {1 % f if f > 1 else 0: ()}, {(): 1 % f}
    # normalize the raw product of cyclic groups to invariant factors
    orders = [o for _, o in gens]
    n_raw = len(orders)
    diag = [[orders[i] if j == i else 0 for j in range(n_raw)] for i in range(n_raw)]
    sdiag, _, V = snf_with_transform(diag)
    keep = [i for i, d0 in enumerate(sdiag) if d0 > 1]
    group = FiniteAbelianGroup([sdiag[i] for i in keep])

    def to_invariant(raw_vec):
        image = [sum(raw_vec[r] * V[r][c] for r in range(n_raw)) for c in range(n_raw)]
        return tuple(image[i] % sdiag[i] for i in keep)

    log = {}
    exp_table = {}
    for raw in product(*(range(o) for o in orders)):
        residue = 1
        for (g, _), e in zip(gens, raw):
            residue = residue * pow(g, e, f) % f
        elem = to_invariant(raw)
        log[residue] = elem
        if elem not in exp_table or residue < exp_table[elem]:
            exp_table[elem] = residue
    assert len(log) == group.order
    return group, log, exp_table

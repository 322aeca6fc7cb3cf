"""Group-ring arithmetic over abelian G, the minus quotient, and
full-rank integral lattice (ideal) algebra in Hermite normal form.

Coordinates: the full ring uses the canonical enumeration of G
(lexicographic exponent vectors); the minus quotient Z[G]/(1+j) uses
the lex-smaller element of each pair {g, gj} as basis, with
pi(g j) = -pi(g).  Localization at p is decided through denominator
coprimality of exact solutions, never through approximation.
"""

from fractions import Fraction
from math import gcd, lcm

from .cyclo import CycloNumber
from .intlinalg import hnf_rows, prime_valuation, solve_in_basis


class GroupRingElt:
    """Element of Q[G]: finite map from group elements to rationals."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        clean = {}
        for g, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[group.reduce(g)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def one(cls, group):
        return cls(group, {group.identity(): 1})

    @classmethod
    def of_element(cls, group, g, c=1):
        return cls(group, {g: c})

    def coefficient(self, g):
        return self.coeffs.get(self.group.reduce(g), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, GroupRingElt):
            other = GroupRingElt(self.group, {self.group.identity(): other})
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, Fraction(0)) + c
        return GroupRingElt(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElt(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupRingElt):
            other = GroupRingElt(self.group, {self.group.identity(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GroupRingElt):
            return GroupRingElt(self.group, {g: c * Fraction(other)
                                             for g, c in self.coeffs.items()})
        out = {}
        for g, c in self.coeffs.items():
            for h, d in other.coeffs.items():
                k = self.group.op(g, h)
                out[k] = out.get(k, Fraction(0)) + c * d
        return GroupRingElt(self.group, out)

    __rmul__ = __mul__

    def sharp(self):
        """The involution induced by g |-> g^-1."""
        return GroupRingElt(self.group, {self.group.inv(g): c
                                         for g, c in self.coeffs.items()})

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs.values())

    def denominators_coprime_to(self, p):
        return all(c.denominator % p for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, GroupRingElt):
            if not other:
                return not self.coeffs
            other = GroupRingElt(self.group, {self.group.identity(): other})
        return self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for g in sorted(self.coeffs):
            bits.append("%s*[%s]" % (self.coeffs[g], ",".join(map(str, g))))
        return " + ".join(bits)


def norm_element(subgroup, group=None):
    """N_H = sum of the elements of a subgroup (as element of Q[G])."""
    group = group or subgroup.parent
    return GroupRingElt(group, {g: 1 for g in subgroup.elements})


def char_eval(x, chi, order=None):
    """Ring-homomorphic evaluation sum_g c_g chi(g) in Q(zeta_ord(chi))."""
    m = order or max(chi.order, 1)
    E = chi.group.exponent
    acc = [Fraction(0)] * m
    for g, c in x.coeffs.items():
        t = chi.zeta_exponent(g)
        acc[(t * m // E) % m] += c
    return CycloNumber(m, acc)


def assemble_from_char_values(values, group):
    """The unique x in Q[G] with chi(x) = values[chi] for all characters.

    `values` maps every Character of `group` to a CycloNumber whose
    order divides exp(G).  The family must be Galois-equivariant
    (values[chi^k] = conj_k(values[chi])); otherwise the coefficients
    would be irrational and a ValueError with a diagnostic is raised.
    """
    E = group.exponent
    embedded = {}
    for chi, val in values.items():
        if not isinstance(val, CycloNumber):
            val = CycloNumber.rational(val)
        if E % val.order:
            raise ValueError("value of chi has order %d not dividing exp(G) = %d"
                             % (val.order, E))
        embedded[chi.exponents] = val.embed(E)
    chars = list(values)
    if len(chars) != group.order:
        raise ValueError("need values for all %d characters, got %d"
                         % (group.order, len(chars)))
    for k in range(1, E + 1):
        if gcd(k, E) != 1:
            continue
        for chi in chars:
            lhs = embedded[chi.galois_twist(k).exponents]
            rhs = embedded[chi.exponents].conj(k)
            if lhs != rhs:
                raise ValueError(
                    "non-equivariant family: value(chi^%d) != conj_%d(value(chi)) "
                    "at chi = %r" % (k, k, chi.exponents))
    n = group.order
    out = {}
    # accumulate in Z[x]/(x^E - 1): multiplying by a root of unity is a
    # rotation there; reduce modulo the cyclotomic polynomial once per
    # coefficient
    for g in group.elements():
        acc = [Fraction(0)] * E
        ginv = group.inv(g)
        for chi in chars:
            t = chi.zeta_exponent(ginv)
            for i, c in enumerate(embedded[chi.exponents].coeffs):
                if c:
                    acc[(i + t) % E] += c
        total = CycloNumber(E, acc)
        if not total.is_rational():
            raise ValueError("coefficient at %r is irrational: %r" % (g, total))
        c = total.as_fraction() / n
        if c:
            out[g] = c
    return GroupRingElt(group, out)


# ---------------------------------------------------------------------------
# ambients


class FullRingAmbient:
    """Coordinate system for Q[G] over the canonical enumeration of G."""

    def __init__(self, group):
        self.group = group
        self.basis_elements = group.elements()
        self.index = {g: i for i, g in enumerate(self.basis_elements)}
        self.rank = len(self.basis_elements)
        self._mult_table = [[self.index[group.op(a, b)] for b in self.basis_elements]
                            for a in self.basis_elements]

    def vector_of(self, x):
        vec = [Fraction(0)] * self.rank
        for g, c in x.coeffs.items():
            vec[self.index[g]] = c
        return vec

    def element_of(self, vec):
        return GroupRingElt(self.group, {g: c for g, c in zip(self.basis_elements, vec) if c})

    def mult_vec(self, u, v):
        out = [0] * self.rank
        for i, ui in enumerate(u):
            if ui:
                row = self._mult_table[i]
                for j, vj in enumerate(v):
                    if vj:
                        out[row[j]] += ui * vj
        return out

    def group_orbit_vectors(self, vec):
        """g*vec for every g in G (spans the Z[G]-module generated by vec)."""
        out = []
        for i in range(self.rank):
            unit = [0] * self.rank
            unit[i] = 1
            out.append(self.mult_vec(unit, vec))
        return out

    def one_vector(self):
        vec = [Fraction(0)] * self.rank
        vec[self.index[self.group.identity()]] = Fraction(1)
        return vec

    def __repr__(self):
        return "Z[%r]" % (self.group,)


class MinusContext:
    """The minus quotient Z[G]/(1+j) as a free Z-module of rank |G|/2.

    Basis: the lex-smaller element of each pair {g, gj}; pi(gj) = -pi(g).
    Represented as a genuine quotient with an explicit section (never via
    the idempotent (1-j)/2), keeping everything p-integral for odd p.
    """

    def __init__(self, group, j):
        if group.reduce(j) == group.identity() or group.op(j, j) != group.identity():
            raise ValueError("j must be an involution")
        self.group = group
        self.j = group.reduce(j)
        self.full = FullRingAmbient(group)
        reps = []
        partner = {}
        for g in self.full.basis_elements:
            gj = group.op(g, self.j)
            if gj in partner or g in partner:
                continue
            reps.append(g)
            partner[g] = gj
            partner[gj] = g
        self.reps = reps
        self.rep_index = {g: i for i, g in enumerate(reps)}
        self.rank = len(reps)
        assert 2 * self.rank == group.order

    def project_vector(self, full_vec):
        out = [0] * self.rank
        for g, c in zip(self.full.basis_elements, full_vec):
            if not c:
                continue
            if g in self.rep_index:
                out[self.rep_index[g]] += c
            else:
                out[self.rep_index[self.group.op(g, self.j)]] -= c
        return out

    def project(self, x):
        return self.project_vector(self.full.vector_of(x))

    # quotient coordinates of a full-ring element (ZLattice duck-typing)
    vector_of = project

    def section_vector(self, vec):
        out = [Fraction(0)] * self.full.rank
        for rep, c in zip(self.reps, vec):
            out[self.full.index[rep]] = c
        return out

    def mult_vec(self, u, v):
        return self.project_vector(self.full.mult_vec(self.section_vector(u),
                                                      self.section_vector(v)))

    def group_orbit_vectors(self, vec):
        sec = self.section_vector(vec)
        return [self.project_vector(w) for w in self.full.group_orbit_vectors(sec)]

    def one_vector(self):
        return self.project_vector(self.full.one_vector())

    def char_eval_vector(self, vec, chi, order=None):
        """Evaluate an odd character on a minus vector (via the section)."""
        return char_eval(self.full.element_of(self.section_vector(vec)), chi, order)

    def __repr__(self):
        return "Z[%r]^-" % (self.group,)


# ---------------------------------------------------------------------------
# lattices


class ZLattice:
    """A finitely generated Z-submodule of the ambient Q-algebra.

    basis: canonical HNF rows (integers); den: positive denominator; the
    lattice is (1/den) * rowspan_Z(basis).  Ideal lattices are full rank
    in their ambient; the full-ring image of rank-deficient ideals (for
    instance principal ideals of elements vanishing at some characters)
    is supported for membership queries.
    """

    def __init__(self, ambient, basis, den=1):
        g = den
        for row in basis:
            for c in row:
                g = gcd(g, c)
        if g > 1:
            basis = [[c // g for c in row] for row in basis]
            den //= g
        self.ambient = ambient
        self.basis = [list(r) for r in basis]
        self.den = den

    @classmethod
    def from_generators(cls, ambient, generators, close=True):
        """Lattice spanned by the generators; with close=True, the
        Z[G]-ideal they generate (closure under the group action)."""
        rows = []
        for gen in generators:
            if isinstance(gen, GroupRingElt):
                vec = ambient.vector_of(gen)
            else:
                vec = list(gen)
            vec = [Fraction(c) for c in vec]
            if close:
                rows.extend(ambient.group_orbit_vectors(vec))
            else:
                rows.append(vec)
        den = 1
        for row in rows:
            for c in row:
                den = lcm(den, c.denominator)
        int_rows = [[int(c * den) for c in row] for row in rows]
        return cls(ambient, hnf_rows(int_rows, ambient.rank), den)

    @classmethod
    def principal(cls, ambient, element):
        return cls.from_generators(ambient, [element])

    @property
    def rank(self):
        return len(self.basis)

    def is_full_rank(self):
        return self.rank == self.ambient.rank

    def fraction_rows(self):
        return [[Fraction(c, self.den) for c in row] for row in self.basis]

    def _solve(self, vec):
        """Coordinates of vec in the basis over Q, or None."""
        target = [Fraction(c) * self.den for c in vec]
        return solve_in_basis(self.basis, target)

    def member(self, vec):
        if isinstance(vec, GroupRingElt):
            vec = self.ambient.vector_of(vec)
        sol = self._solve(vec)
        return sol is not None and all(c.denominator == 1 for c in sol)

    def member_at_p(self, vec, p):
        """x in I localized at p: the exact solution exists and all its
        denominators are coprime to p."""
        if isinstance(vec, GroupRingElt):
            vec = self.ambient.vector_of(vec)
        sol = self._solve(vec)
        return sol is not None and all(c.denominator % p for c in sol)

    def product(self, other):
        assert self.ambient is other.ambient or self.ambient.rank == other.ambient.rank
        rows = []
        for a in self.basis:
            for b in other.basis:
                rows.append(self.ambient.mult_vec(a, b))
        den = self.den * other.den
        return ZLattice(self.ambient, hnf_rows(rows, self.ambient.rank), den)

    def index_in_ambient(self):
        """[standard lattice : self] as a positive rational."""
        if not self.is_full_rank():
            raise ValueError("index undefined: lattice not full rank")
        det = 1
        for row, j in zip(self.basis, _pivot_cols(self.basis)):
            det *= row[j]
        return Fraction(det, self.den ** self.ambient.rank)

    def p_part_index(self, p):
        """p-part of the index in the ambient standard lattice."""
        v = prime_valuation(self.index_in_ambient(), p)
        return p ** v if v >= 0 else Fraction(1, p ** (-v))

    def index_in(self, other):
        """[other : self] for self contained in other (both full rank)."""
        mat = []
        for row in self.fraction_rows():
            sol = other._solve(row)
            if sol is None:
                raise ValueError("lattice is not contained in the other's span")
            mat.append(sol)
        det = _fraction_det(mat)
        if det == 0:
            raise ValueError("rank-deficient comparison")
        return abs(det)

    def contains_at_p(self, other, p):
        return all(self.member_at_p(row, p) for row in other.fraction_rows())

    def equal_at_p(self, other, p):
        return self.contains_at_p(other, p) and other.contains_at_p(self, p)

    def minus_image(self, minus_ctx):
        """Image of a full-ring lattice in the minus quotient."""
        rows = [minus_ctx.project_vector(row) for row in self.basis]
        return ZLattice(minus_ctx, hnf_rows(rows, minus_ctx.rank), self.den)

    def elements_integral(self):
        """True iff the lattice is contained in the standard lattice."""
        return self.den == 1

    def __eq__(self, other):
        return isinstance(other, ZLattice) and self.basis == other.basis \
            and self.den == other.den and self.ambient.rank == other.ambient.rank

    def __repr__(self):
        return "ZLattice(rank %d/%d, den %d)" % (self.rank, self.ambient.rank, self.den)


def _pivot_cols(basis):
    cols = []
    for row in basis:
        j = 0
        while row[j] == 0:
            j += 1
        cols.append(j)
    return cols


def _fraction_det(mat):
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] * inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return det


def member_brute_force(vec, lattice, p, bound=1000):
    """Oracle: exists m <= bound coprime to p with m*x in the lattice."""
    for m in range(1, bound + 1):
        if m % p == 0:
            continue
        scaled = [Fraction(c) * m for c in vec]
        if lattice.member(scaled):
            return True
    return False

"""Finite modules over Z[G] and the minus quotient via presentation
matrices; Fitting ideals, duals, cardinalities, and the direct-sum /
surjection / dual / index laws.

A presentation is an m x n matrix of group-ring entries (rows are
relations, columns generators); the module is the cokernel of the
induced map R^m -> R^n.  Minors are computed by memoized Laplace
expansion: row elimination is unsound over group rings with zero
divisors, and desk-scale presentations stay small.
"""

from itertools import combinations

from .groupring import GroupRingElt, MinusContext, ZLattice
from .intlinalg import p_part, snf_diagonal


class ModulePresentation:
    """Finitely presented module over the ambient group ring.

    entries: rows of coordinate vectors (integers) in the ambient; for a
    MinusContext ambient the relation j = -1 is built into the quotient.
    """

    def __init__(self, ambient, rows, ngens=None, check_finite=True):
        self.ambient = ambient
        self.rows = []
        for row in rows:
            clean = []
            for entry in row:
                if isinstance(entry, GroupRingElt):
                    vec = ambient.vector_of(entry) if not isinstance(ambient, MinusContext) \
                        else ambient.project(entry)
                else:
                    vec = list(entry)
                if any(c != int(c) for c in vec):
                    raise ValueError("presentation entries must be integral")
                clean.append([int(c) for c in vec])
            self.rows.append(clean)
        self.ngens = ngens if ngens is not None else (len(self.rows[0]) if self.rows else 0)
        for row in self.rows:
            assert len(row) == self.ngens
        if check_finite and not self.has_finite_cokernel():
            raise ValueError("presentation has infinite cokernel")

    @property
    def nrels(self):
        return len(self.rows)

    def is_square(self):
        return self.nrels == self.ngens

    def entry_mult_matrix(self, vec):
        """Z-matrix of multiplication by the entry on the ambient lattice."""
        r = self.ambient.rank
        out = []
        for s in range(r):
            unit = [0] * r
            unit[s] = 1
            out.append(self.ambient.mult_vec(unit, vec))
        return out

    def z_linearization(self):
        """Block integer matrix of R^m -> R^n over the ambient Z-basis."""
        r = self.ambient.rank
        m, n = self.nrels, self.ngens
        big = [[0] * (n * r) for _ in range(m * r)]
        for i in range(m):
            for j in range(n):
                block = self.entry_mult_matrix(self.rows[i][j])
                for s in range(r):
                    for t in range(r):
                        big[i * r + s][j * r + t] = block[s][t]
        return big

    def has_finite_cokernel(self):
        if self.nrels < self.ngens:
            return False
        diag = snf_diagonal(self.z_linearization())
        return len(diag) == self.ngens * self.ambient.rank and all(diag)

    def cardinality(self):
        """|M| via Smith normal form of the Z-linearization."""
        diag = snf_diagonal(self.z_linearization())
        if len(diag) < self.ngens * self.ambient.rank or not all(diag):
            raise ValueError("infinite module")
        out = 1
        for d in diag:
            out *= d
        return out

    def dual(self):
        """Pontryagin dual with contragredient action: sharp-transpose."""
        if not self.is_square():
            raise ValueError("dual presentation needs a square presentation")
        n = self.ngens
        rows = [[_sharp_vec(self.ambient, self.rows[i][j]) for i in range(n)]
                for j in range(n)]
        return ModulePresentation(self.ambient, rows, ngens=n, check_finite=False)

    def direct_sum(self, other):
        assert self.ambient is other.ambient
        zero = [0] * self.ambient.rank
        rows = []
        for row in self.rows:
            rows.append([list(e) for e in row] + [list(zero) for _ in range(other.ngens)])
        for row in other.rows:
            rows.append([list(zero) for _ in range(self.ngens)] + [list(e) for e in row])
        return ModulePresentation(self.ambient, rows,
                                  ngens=self.ngens + other.ngens, check_finite=False)

    def with_extra_relations(self, extra_rows):
        rows = [list(map(list, row)) for row in self.rows]
        for row in extra_rows:
            rows.append(row)
        return ModulePresentation(self.ambient, rows, ngens=self.ngens, check_finite=False)

    def minors(self):
        """All ngens x ngens minors, as ambient coordinate vectors."""
        n = self.ngens
        if n == 0:
            return [self.ambient.one_vector()]
        if self.nrels < n:
            return []
        out = []
        for rowset in combinations(range(self.nrels), n):
            out.append(self._det(rowset))
        return out

    def _det(self, rowset):
        ambient = self.ambient
        n = len(rowset)
        memo = {}

        def minor(rows, cols):
            if not rows:
                return ambient.one_vector()
            key = (rows, cols)
            if key in memo:
                return memo[key]
            r0 = rows[0]
            rest = rows[1:]
            acc = [0] * ambient.rank
            for pos, c in enumerate(cols):
                entry = self.rows[r0][c]
                if not any(entry):
                    continue
                sub = minor(rest, cols[:pos] + cols[pos + 1:])
                term = ambient.mult_vec(entry, sub)
                if pos % 2 == 0:
                    acc = [x + y for x, y in zip(acc, term)]
                else:
                    acc = [x - y for x, y in zip(acc, term)]
            memo[key] = acc
            return acc

        return minor(tuple(rowset), tuple(range(n)))


def _sharp_vec(ambient, vec):
    if isinstance(ambient, MinusContext):
        full = ambient.section_vector(vec)
        sharped = _sharp_full(ambient.full, full)
        return ambient.project_vector(sharped)
    return _sharp_full(ambient, vec)


def _sharp_full(full_amb, vec):
    out = [0] * full_amb.rank
    for g, c in zip(full_amb.basis_elements, vec):
        if c:
            out[full_amb.index[full_amb.group.inv(g)]] += c
    return out


def fitting_ideal(pres):
    """Initial Fitting ideal: the Z[G]-ideal of all maximal minors."""
    minors = pres.minors()
    if not minors:
        raise ValueError("fewer relations than generators: Fitting ideal is zero "
                         "(infinite cokernel)")
    return ZLattice.from_generators(pres.ambient, minors)


def cardinality(pres):
    return pres.cardinality()


def index_equals_card_check(pres, p):
    """Lemma: [minus ring : Fitt(M)] has the same p-part as |M|."""
    if not pres.is_square():
        raise ValueError("square presentation required")
    fitt = fitting_ideal(pres)
    return fitt.p_part_index(p) == p_part(pres.cardinality(), p)


def dual_fitting_check(pres, p):
    """Fitt(M^dual) = Fitt(M)^sharp, at p."""
    fitt = fitting_ideal(pres)
    fitt_dual = fitting_ideal(pres.dual())
    sharped = ZLattice.from_generators(
        pres.ambient, [_sharp_vec(pres.ambient, row) for row in fitt.basis])
    if fitt.den != 1:
        raise ValueError("integral presentations expected")
    return fitt_dual.equal_at_p(sharped, p)


def direct_sum_check(pres_a, pres_b, p):
    """Fitt(A + B) = Fitt(A) Fitt(B), at p."""
    fitt_sum = fitting_ideal(pres_a.direct_sum(pres_b))
    prod = fitting_ideal(pres_a).product(fitting_ideal(pres_b))
    return fitt_sum.equal_at_p(prod, p)


def surjection_check(pres, extra_rows, p):
    """Appending relations presents a quotient: Fitt grows, at p."""
    bigger = pres.with_extra_relations(extra_rows)
    fitt_small = fitting_ideal(pres)
    fitt_big = fitting_ideal(bigger)
    return fitt_big.contains_at_p(fitt_small, p)

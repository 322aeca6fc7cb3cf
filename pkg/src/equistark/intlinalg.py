"""Exact integer linear algebra: HNF, SNF, kernels, determinants.

Everything works on plain lists of python ints, rows as vectors.  These
kernels back the lattice (ideal) arithmetic and all cardinality counts,
so they are deliberately dependency-free and fully exact.
"""

from fractions import Fraction


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _renormalize(basis, pivcol):
    """Restore canonical form in place: positive pivots, entries above
    each pivot reduced into [0, pivot).  Pivot columns are swept left to
    right so later columns are fixed after earlier subtractions disturb
    them; this also keeps intermediate coefficients small."""
    for i in range(len(basis)):
        if basis[i][pivcol[i]] < 0:
            basis[i] = [-v for v in basis[i]]
    for i in range(len(basis)):
        p = basis[i][pivcol[i]]
        for k in range(i):
            q = basis[k][pivcol[i]] // p
            if q:
                basis[k] = [u - q * v for u, v in zip(basis[k], basis[i])]


def hnf_rows(rows, ncols):
    """Canonical row-style Hermite normal form of the span of `rows`.

    Returns linearly independent rows in echelon form: pivots positive,
    strictly increasing pivot columns, entries above each pivot reduced
    into [0, pivot).  The empty list is the zero lattice.  The basis is
    kept fully reduced after every update (Kannan-Bachem discipline), so
    intermediate coefficients stay bounded by the pivot sizes.
    """
    basis = []  # echelon rows, pivot columns strictly increasing
    pivcol = []
    for row in rows:
        vec = list(row)
        assert len(vec) == ncols
        i = 0
        j = 0
        dirty = False
        while j < ncols:
            if vec[j] == 0:
                j += 1
                continue
            while i < len(basis) and pivcol[i] < j:
                i += 1
            if i == len(basis) or pivcol[i] > j:
                basis.insert(i, vec)
                pivcol.insert(i, j)
                dirty = True
                break
            a, b = basis[i][j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [v - q * u for u, v in zip(basis[i], vec)]
            elif a % b == 0:
                # keep the smaller value as pivot: swap, then reduce
                basis[i], vec = vec, basis[i]
                q = a // b
                vec = [v - q * u for u, v in zip(basis[i], vec)]
                dirty = True
            else:
                g, x, y = xgcd(a, b)
                new = [x * u + y * v for u, v in zip(basis[i], vec)]
                vec = [(-(b // g)) * u + (a // g) * v for u, v in zip(basis[i], vec)]
                basis[i] = new
                dirty = True
        if dirty:
            _renormalize(basis, pivcol)
    return basis


def hnf_pivots(basis):
    """Pivot columns of an echelon basis as returned by hnf_rows."""
    cols = []
    for row in basis:
        j = 0
        while row[j] == 0:
            j += 1
        cols.append(j)
    return cols


def solve_in_basis(basis, target):
    """Solve sum_i y_i * basis[i] = target over Q for an echelon basis.

    Returns the unique list of Fractions, or None if inconsistent.
    `target` may contain ints or Fractions.
    """
    vec = [Fraction(t) for t in target]
    pivcols = hnf_pivots(basis)
    coeffs = []
    for row, j in zip(basis, pivcols):
        c = vec[j] / row[j]
        coeffs.append(c)
        if c:
            vec = [t - c * r for t, r in zip(vec, row)]
    if any(vec):
        return None
    return coeffs


def snf_diagonal(mat):
    """Elementary divisors d_1 | d_2 | ... of an integer matrix.

    Plain Smith reduction by row/column operations; returns the
    nonnegative diagonal (zeros last), including zero divisors for
    rank-deficient input.  Used as the independent cardinality oracle.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        # find a nonzero pivot with minimal absolute value
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        while True:
            p = a[top][top]
            done = True
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    a[i] = [u - q * v for u, v in zip(a[i], a[top])]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    for row in a:
                        row[j] -= q * row[top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if done:
                break
        # ensure pivot divides the rest of the block
        p = a[top][top]
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[top] = [u + v for u, v in zip(a[top], a[bad])]
            continue
        diag.append(abs(p))
        top += 1
    diag += [0] * (min(m, n) - len(diag))
    return diag


def snf_with_transform(mat):
    """Smith normal form with transforms: returns (diag, U, V) where
    U * mat * V has the divisor diagonal `diag` (as full matrices).

    U is m x m, V is n x n, both unimodular; rows/vectors multiply on
    the left (x * mat convention is NOT used here -- this is the plain
    matrix SNF; callers doing quotient bookkeeping use V).
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, q, k):  # row_i -= q * row_k
        a[i] = [u - q * v for u, v in zip(a[i], a[k])]
        U[i] = [u - q * v for u, v in zip(U[i], U[k])]

    def col_op(j, q, k):  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    top = 0
    while top < min(m, n):
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(top, best[0])
        col_swap(top, best[1])
        while True:
            p = a[top][top]
            dirty = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    row_op(i, q, top)
                    if a[i][top]:
                        row_swap(top, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    col_op(j, q, top)
                    if a[top][j]:
                        col_swap(top, j)
                        dirty = True
                        break
            if not dirty:
                break
        p = a[top][top]
        bad = None
        for i in range(top + 1, m):
            if any(a[i][j] % p for j in range(top + 1, n)):
                bad = i
                break
        if bad is not None:
            row_op(top, -1, bad)
            continue
        if p < 0:
            a[top] = [-v for v in a[top]]
            U[top] = [-v for v in U[top]]
        top += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V


def det_int(mat):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(mat):
    """Basis of {x : x * mat = 0} (left kernel) over Z, as a list of rows."""
    m = len(mat)
    if m == 0:
        return []
    n = len(mat[0])
    # reduce [mat | I] by the HNF machinery; kernel rows show up with
    # zero left part
    aug = [list(mat[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    basis = hnf_rows(aug, n + m)
    out = []
    for row in basis:
        if not any(row[:n]):
            out.append(row[n:])
    return out


def prime_valuation(n, p):
    """v_p(n) for a nonzero integer, or for a Fraction (may be negative)."""
    if isinstance(n, Fraction):
        return prime_valuation(n.numerator, p) - prime_valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n, p):
    """Largest power of p dividing the positive integer n."""
    return p ** prime_valuation(n, p)

"""Square presentation assembly over the minus group ring.

Relation-matrix entries are integer coefficient arrays indexed by the
fixture's element_order (smallest-residue coset labels).  Three shapes:

  unit            -- [[1]] for a trivial p-part;
  residue         -- [[phi_{l0} - l0]], the canonical presentation of
                     (O_L/M_{l0})^x (its p-part is what the fixture pins);
  quadratic stack -- diagonal of lambda(exp) for isotypic pieces acting
                     through an odd quadratic character chi, where
                       lambda = 1 + (p^exp - 1) * E,
                       E = symmetric lift of inv(|G|) * chi (mod p^(exp+1)).
                     E is congruent to the chi-idempotent, so lambda has
                     chi-component of exact valuation `exp` and unit
                     components at every other odd character.
"""

from .groupdata import legendre_character


def _zero_array(gd):
    return [0] * gd.order


def _identity_index(gd):
    return gd.labels.index(gd.coset_of[1])


def unit_presentation(gd):
    arr = _zero_array(gd)
    arr[_identity_index(gd)] = 1
    return {"generators": 1, "relations": [[arr]]}


def residue_presentation(gd, ell):
    arr = _zero_array(gd)
    arr[_identity_index(gd)] -= ell
    frob = gd.coset_of[ell % gd.conductor]
    arr[gd.labels.index(frob)] += 1
    return {"generators": 1, "relations": [[arr]]}


def _symmetric_mod(x, modulus):
    x %= modulus
    return x - modulus if 2 * x > modulus else x


def quad_lambda_array(gd, p, piece):
    if piece["kind"] != "legendre":
        raise ValueError("only quadratic (legendre) pieces are assemblable")
    chi = legendre_character(piece["modulus"])
    exp = int(piece["exp"])
    modulus = p ** (exp + 1)
    inv_order = pow(gd.order, -1, modulus)
    arr = _zero_array(gd)
    for i, label in enumerate(gd.labels):
        e_val = _symmetric_mod(inv_order * chi(label), modulus)
        arr[i] = (p ** exp - 1) * e_val
    arr[_identity_index(gd)] += 1
    return arr


def pieces_presentation(gd, p, pieces):
    """Block-diagonal presentation of a sum of quadratic isotypic pieces."""
    ordered = sorted(pieces, key=lambda q: (-int(q["exp"]), int(q["modulus"])))
    n = len(ordered)
    rows = []
    for i, piece in enumerate(ordered):
        row = [list(_zero_array(gd)) for _ in range(n)]
        row[i] = quad_lambda_array(gd, p, piece)
        rows.append(row)
    return {"generators": n, "relations": rows}


def pieces_cardinality(p, pieces):
    total = 1
    for piece in pieces:
        total *= p ** int(piece["exp"])
    return total


def classical_partial_zeta(gd):
    """zeta_{S_infty u ram}(0, sigma_a) = sum over the coset of (1/2 - a/f)."""
    from fractions import Fraction
    f = gd.conductor
    table = {label: Fraction(0) for label in gd.labels}
    for a in range(1, f):
        if a in gd.coset_of:
            table[gd.coset_of[a]] += Fraction(1, 2) - Fraction(a, f)
    values = []
    for label in gd.labels:
        v = table[label]
        values.append(str(v.numerator) if v.denominator == 1
                      else "%d/%d" % (v.numerator, v.denominator))
    return {"s_finite": prime_list(f), "values": values}


def prime_list(f):
    out = []
    d = 2
    while d * d <= f:
        if f % d == 0:
            out.append(d)
            while f % d == 0:
                f //= d
        d += 1
    if f > 1:
        out.append(f)
    return out

"""chi-components for p coprime to |G|: d_S counts, the residue module
at an unramified place, chi-component Fitting valuations through
Galois-ring embeddings, and the strong-Stark valuation identity
equating Fitting valuations with L-value valuations.

The fixed embedding iota is realized as a prime-orbit labeling: every
operation returns valuations for all orbits of <p> acting on the primes
of the character field, keyed by the smallest orbit representative; the
designated prime is the orbit of t = 1.
"""

from .cyclo import CycloNumber, DEFAULT_PRECISION, padic_valuations
from .fitting import ModulePresentation
from .groupring import GroupRingElt, MinusContext, char_eval
from .lvalues import DirichletChar, l0_ST
from .stickelberger import s_infty


def d_s(chi, ext, S):
    """Number of finite places v in S with chi trivial on G_v."""
    count = 0
    for ell in S.finite:
        ld = ext.local_data(ell)
        if chi.trivial_on(ld.decomposition.elements):
            count += 1
    return count


def residue_module(ext, v0, minus=False):
    """(O_L / M_{v0})^x as Z[G]/(phi_w - N(v0)), v0 unramified.

    With minus=True the presentation is taken over the minus quotient.
    Fitting ideal (phi_w - N(v0)); cardinality (N^f - 1)^g with
    f = |G_v| the residue degree and g = [G : G_v].
    """
    ld = ext.local_data(v0)
    if ld.ramified:
        raise ValueError("residue module needs an unramified place, %d ramifies" % v0)
    G = ext.galois_group
    entry = GroupRingElt.of_element(G, ld.frobenius) - ld.nv
    if minus:
        ambient = MinusContext(G, ext.j)
    else:
        from .groupring import FullRingAmbient
        ambient = FullRingAmbient(G)
    return ModulePresentation(ambient, [[entry]], ngens=1)


def chi_entry_value(ambient, vec, chi):
    """Apply chi to a presentation entry (odd chi factors through the
    minus quotient, so evaluation on the section is well-defined)."""
    if isinstance(ambient, MinusContext):
        elt = ambient.full.element_of(ambient.section_vector(vec))
    else:
        elt = ambient.element_of(vec)
    return char_eval(elt, chi)


def chi_fitting_valuations(pres, chi, p, start_precision=DEFAULT_PRECISION):
    """Valuations of the chi-component Fitting ideal, per prime orbit.

    Applies chi entrywise to the relation matrix, computes all maximal
    minors exactly in Q(zeta_ord(chi)), and returns, for each orbit
    representative t, the minimum p-adic valuation over the minors.
    Requires p coprime to |G| (so the character field is unramified).
    """
    group = chi.group
    if group.order % p == 0:
        raise ValueError("p = %d divides |G| = %d" % (p, group.order))
    if isinstance(pres.ambient, MinusContext) and not chi.is_odd(_ambient_j(pres.ambient)):
        raise ValueError("minus presentations pair with odd characters")
    m = max(chi.order, 1)
    n = pres.ngens
    matrix = [[chi_entry_value(pres.ambient, e, chi) for e in row] for row in pres.rows]
    minors = _cyclo_minors(matrix, n, m)
    nonzero = [x for x in minors if not x.is_zero()]
    if not nonzero:
        raise ValueError("chi-component Fitting ideal is zero")
    best = None
    for x in nonzero:
        vals = dict(padic_valuations(x, p, start_precision))
        if best is None:
            best = vals
        else:
            best = {t: min(v, vals[t]) for t, v in best.items()}
    return best


def chi_fitting_valuation(pres, chi, p, start_precision=DEFAULT_PRECISION):
    """Valuation at the designated prime (the orbit of t = 1)."""
    vals = chi_fitting_valuations(pres, chi, p, start_precision)
    return vals[min(vals)]


def _ambient_j(minus_ctx):
    return minus_ctx.j


def _cyclo_minors(matrix, n, order):
    from itertools import combinations
    m = len(matrix)
    if n == 0:
        return [CycloNumber.one(order)]
    if m < n:
        return []
    out = []
    for rowset in combinations(range(m), n):
        out.append(_cyclo_det([matrix[i] for i in rowset]))
    return out


def _cyclo_det(rows):
    n = len(rows)
    memo = {}

    def minor(ridx, cols):
        if not ridx:
            return CycloNumber.one(rows[0][0].order if rows else 1)
        key = (ridx, cols)
        if key in memo:
            return memo[key]
        r0 = ridx[0]
        acc = CycloNumber.zero(rows[r0][cols[0]].order)
        for pos, c in enumerate(cols):
            entry = rows[r0][c]
            if entry.is_zero():
                continue
            sub = minor(ridx[1:], cols[:pos] + cols[pos + 1:])
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return minor(tuple(range(n)), tuple(range(n)))


def lvalue_valuations(ext, chi, T0, p, start_precision=DEFAULT_PRECISION):
    """Per-orbit valuations of L_{S_infty}^{T0}(0, chi_check)."""
    dchi = DirichletChar.from_extension(ext, chi.contragredient())
    val = l0_ST(dchi, ext, s_infty(), T0)
    if val.is_zero():
        raise ValueError("L-value vanishes (even character?)")
    return dict(padic_valuations(val, p, start_precision))


def strong_stark_check(pres_a_t0, ext, chi, T0, p):
    """Fitt_{Z_p(chi)}((cl^{T0})^chi) = (L_{S_infty}^{T0}(0, chi_check)),
    compared as valuation vectors over every prime orbit of Q(chi).

    pres_a_t0 presents the minus part A^{T0}(p); for odd chi its
    chi-component agrees with the ray class group's.  Returns
    (ok, left valuations, right valuations).
    """
    if p % 2 == 0 or ext.galois_group.order % p == 0:
        raise ValueError("requires odd p coprime to |G|")
    if not chi.is_odd(ext.j):
        raise ValueError("strong-Stark components are odd")
    left = chi_fitting_valuations(pres_a_t0, chi, p)
    right = lvalue_valuations(ext, chi, T0, p)
    return left == right, left, right


def galois_orbit_of(chi, p):
    """The characters chi^(p^i): one prime orbit of the character field."""
    out = []
    cur = chi
    seen = set()
    while cur.exponents not in seen:
        seen.add(cur.exponents)
        out.append(cur)
        cur = cur.galois_twist(p)
    return out

"""Abelian CM extensions of Q realized by a conductor and a subgroup.

An extension is the fixed field L of H <= (Z/f)^* inside Q(zeta_f); all
Galois, inertia and Frobenius data are exactly computable from (f, H).
"""

import warnings
from dataclasses import dataclass
from math import gcd

from .abelian import Subgroup, unit_group


@dataclass(frozen=True)
class LocalData:
    """Local data of the extension at a rational prime."""

    prime: int
    inertia: Subgroup
    decomposition: Subgroup
    frobenius: tuple  # canonical lift to G (lex-min element of its coset)
    ramified: bool

    @property
    def nv(self):
        return self.prime

    @property
    def residue_degree(self):
        return self.decomposition.order // self.inertia.order

    def is_wild(self):
        return self.inertia.order % self.prime == 0

    def chi_unramified(self, chi):
        return chi.trivial_on(self.inertia.elements)


class ExtensionDatum:
    """An abelian CM extension L/Q with conductor f and H <= (Z/f)^*."""

    def __init__(self, conductor, subgroup_gens):
        f = int(conductor)
        if f < 3:
            raise ValueError("conductor must be >= 3")
        ugroup, ulog, _ = unit_group(f)
        gens = []
        for a in subgroup_gens:
            a = int(a) % f
            if gcd(a, f) != 1:
                raise ValueError("subgroup generator %d not coprime to %d" % (a, f))
            gens.append(ulog[a])
        H = ugroup.subgroup(gens)
        minus_one = ulog[f - 1]
        if H.contains(minus_one):
            raise ValueError("-1 lies in H: the fixed field is totally real, not CM")
        # conductor maximality: H must not contain ker((Z/f)^* -> (Z/f')^*)
        reduced = _maximal_conductor_reduction(f, H, ulog)
        if reduced is not None:
            new_f, new_gens = reduced
            warnings.warn("conductor %d is not maximal, reducing to %d" % (f, new_f))
            fresh = ExtensionDatum(new_f, new_gens)
            self.__dict__.update(fresh.__dict__)
            return
        self.conductor = f
        self.subgroup = H
        self._ugroup = ugroup
        self._ulog = ulog
        self.galois_group, self._project = ugroup.quotient(H)
        # sigma: residue -> Galois group element
        self.sigma = {a: self._project(v) for a, v in ulog.items()}
        self.j = self.sigma[f - 1]
        self.w_roots_of_unity = _count_roots_of_unity(f, H, ulog)
        self.is_cm = True
        assert self.j != self.galois_group.identity()
        assert self.galois_group.op(self.j, self.j) == self.galois_group.identity()
        # smallest residue labeling each Galois element (for sigma_a display)
        self.element_label = {}
        for a in sorted(self.sigma):
            g = self.sigma[a]
            if g not in self.element_label:
                self.element_label[g] = a
        self._local_cache = {}

    # -- local data -------------------------------------------------------
    def local_data(self, ell):
        if ell in self._local_cache:
            return self._local_cache[ell]
        f = self.conductor
        G = self.galois_group
        if f % ell:
            frob = self.sigma[ell % f]
            inertia = G.subgroup([])
            decomposition = G.subgroup([frob])
            data = LocalData(ell, inertia, decomposition, frob, False)
        else:
            e = 0
            fprime = f
            while fprime % ell == 0:
                fprime //= ell
                e += 1
            # inertia = image of ker((Z/f)^* -> (Z/f')^*)
            inertia_gens = [self.sigma[a] for a in self.sigma
                            if a % max(fprime, 1) == 1 % max(fprime, 1)]
            inertia = G.subgroup(inertia_gens)
            if fprime == 1:
                frob0 = G.identity()
            else:
                b = _crt(1, ell ** e, ell % fprime, fprime)
                frob0 = self.sigma[b]
            frob = min(G.op(frob0, h) for h in inertia.elements)
            decomposition = G.subgroup(list(inertia.generators) + [frob])
            data = LocalData(ell, inertia, decomposition, frob,
                             inertia.order > 1)
        self._local_cache[ell] = data
        return data

    def ramified_primes(self):
        out = []
        f = self.conductor
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

    def label_of(self, elem):
        return self.element_label[elem]

    def __repr__(self):
        return "ExtensionDatum(f=%d, H order %d, G=%r)" % (
            self.conductor, self.subgroup.order, self.galois_group)


def extension_from_conductor(conductor, subgroup_gens=()):
    """Public constructor mirroring the module operation."""
    return ExtensionDatum(conductor, subgroup_gens)


def _crt(r1, m1, r2, m2):
    from .intlinalg import xgcd
    g, x, _ = xgcd(m1, m2)
    assert g == 1
    return (r1 + (r2 - r1) * x % m2 * m1) % (m1 * m2)


def _maximal_conductor_reduction(f, H, ulog):
    """If H contains ker((Z/f)^* -> (Z/f')^*) for a proper divisor f',
    return (f', generators of the image of H); else None."""
    for ell in _prime_divisors(f):
        fprime = f // ell
        if fprime < 1:
            continue
        kernel_residues = [a for a in ulog if a % max(fprime, 1) == 1 % max(fprime, 1)]
        if all(H.contains(ulog[a]) for a in kernel_residues):
            image_gens = sorted({_label_mod(a, fprime) for a in _subgroup_residues(H, ulog)})
            return fprime, image_gens
    return None


def _label_mod(a, fprime):
    if fprime == 1:
        return 0
    return a % fprime


def _subgroup_residues(H, ulog):
    return [a for a, v in ulog.items() if H.contains(v)]


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


def _count_roots_of_unity(f, H, ulog):
    """w_L for the fixed field of H: the largest m with zeta_m in L."""
    gens = [a for a in sorted(ulog) if H.contains(ulog[a])]
    best = 2
    for d in _divisors(f):
        # zeta_d is fixed by sigma_a iff a = 1 mod d
        if all(a % d == 1 % d for a in gens):
            if d > best:
                best = d
            if d % 2 == 1 and 2 * d > best:
                best = 2 * d  # zeta_2d = -zeta_d^((d+1)/2) is then fixed too
    return best


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

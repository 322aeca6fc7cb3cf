"""Elementary residue arithmetic for abelian CM extensions of Q.

Everything here works with residue labels and modular arithmetic only:
coset decompositions of (Z/f)^* by a subgroup H, the complex-conjugation
coset, roots of unity in the fixed field, Frobenius labels, and the
order of the minus part of (O_L / l0)^x.  No class-group mathematics.
"""

from dataclasses import dataclass
from math import gcd


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_divisors(n):
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


def p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


@dataclass
class GroupData:
    conductor: int
    subgroup_gens: tuple
    subgroup: frozenset        # residues of H
    labels: list               # sorted smallest-residue labels of G = U/H
    coset_of: dict             # residue -> label
    j_label: int
    w_roots_of_unity: int

    @property
    def order(self):
        return len(self.labels)

    def label_mul(self, a, b):
        return self.coset_of[(a * b) % self.conductor]

    def label_pow(self, a, n):
        return self.coset_of[pow(a, n, self.conductor)]


def group_data(conductor, subgroup_gens):
    f = int(conductor)
    if f < 3:
        raise ValueError("conductor must be >= 3")
    units = [a for a in range(1, f) if gcd(a, f) == 1]
    subgroup = {1}
    frontier = [1]
    for g in subgroup_gens:
        g = int(g) % f
        if gcd(g, f) != 1:
            raise ValueError("subgroup generator %d not coprime to %d" % (g, f))
        if g not in subgroup:
            subgroup.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for g in list(subgroup):
                c = (a * g) % f
                if c not in subgroup:
                    subgroup.add(c)
                    nxt.append(c)
        frontier = nxt
    if (f - 1) in subgroup:
        raise ValueError("-1 lies in H: fixed field is not CM")
    # conductor maximality: H must not contain ker((Z/f)^* -> (Z/f')^*)
    for ell in prime_divisors(f):
        fprime = f // ell
        kernel = [a for a in units if a % max(fprime, 1) == 1 % max(fprime, 1)]
        if all(a in subgroup for a in kernel):
            raise ValueError("conductor %d is not maximal (reducible to %d)" % (f, fprime))
    coset_of = {}
    labels = []
    for a in units:
        if a in coset_of:
            continue
        coset = sorted((a * h) % f for h in subgroup)
        label = coset[0]
        labels.append(label)
        for c in coset:
            coset_of[c] = label
    labels.sort()
    w = _roots_of_unity(f, sorted(subgroup))
    return GroupData(f, tuple(int(g) for g in subgroup_gens), frozenset(subgroup),
                     labels, coset_of, coset_of[f - 1], w)


def _roots_of_unity(f, subgroup_residues):
    best = 2
    d = 1
    while d * d <= f:
        if f % d == 0:
            for div in (d, f // d):
                if all(a % div == 1 % max(div, 1) for a in subgroup_residues):
                    if div > best:
                        best = div
                    if div % 2 == 1 and 2 * div > best:
                        best = 2 * div
        d += 1
    return best


def choose_t0(gd, p):
    """Least prime l0 not dividing f * w_L * p (torsion-free by construction)."""
    bad = gd.conductor * gd.w_roots_of_unity * p
    ell = 2
    while True:
        if bad % ell and is_prime(ell):
            return ell
        ell += 1


def decomposition_data(gd, ell):
    """(residue degree d, number of primes g, j in <Frobenius>, least k with
    Frob^k = j or None) at an unramified prime ell."""
    if gd.conductor % ell == 0:
        raise ValueError("%d ramifies" % ell)
    identity = gd.coset_of[1]
    power_of = {}  # label of Frob^k -> least such k
    k = 0
    while True:
        cur = gd.coset_of[pow(ell, k, gd.conductor)]
        if k and cur == identity:
            break
        power_of.setdefault(cur, k)
        k += 1
    d = k  # multiplicative order of the Frobenius coset
    g = gd.order // d
    j_power = power_of.get(gd.j_label)
    return d, g, j_power is not None, j_power


def residue_minus_ppart(gd, p, ell):
    """p-part of |(O_L / M_{ell})^x minus| for unramified ell, odd p.

    The module is induced from F_{ell^d}^x along the decomposition
    subgroup D = <Frobenius>.  If j lies in D, say j = Frob^k, then j
    acts on each of the g blocks as x -> x^(ell^k) and the minus count
    per block is gcd(ell^k + 1, ell^d - 1); otherwise j pairs the blocks
    and the minus part is one full F_{ell^d}^x per pair.
    """
    d, g, j_in_d, k = decomposition_data(gd, ell)
    if j_in_d:
        per_block = gcd(pow(ell, k) + 1, pow(ell, d) - 1)
        total = p_part(per_block, p) ** g
    else:
        total = p_part(pow(ell, d) - 1, p) ** (g // 2)
    return total


def legendre_character(modulus):
    """The quadratic residue character mod an odd prime, as a label map."""
    def chi(a):
        r = pow(a % modulus, (modulus - 1) // 2, modulus)
        return 1 if r == 1 else -1
    return chi

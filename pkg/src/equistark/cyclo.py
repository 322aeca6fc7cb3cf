"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are rational coefficient vectors modulo the m-th cyclotomic
polynomial.  p-adic valuations at the primes above p (p coprime to m)
are computed through unramified Galois-ring embeddings obtained by
Hensel-lifting one irreducible factor of Phi_m mod p; the conjugate
embeddings zeta |-> omega^t, t running over coset representatives of
<p> in (Z/m)^*, enumerate the primes.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import Poly, Symbol, cyclotomic_poly, n_order, totient

from .intlinalg import prime_valuation

_X = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m):
    """Integer coefficients of Phi_m, ascending degree, monic."""
    poly = Poly(cyclotomic_poly(m, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _phi(m):
    return int(totient(m))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_mod_cyclo(coeffs, m):
    """Reduce a coefficient list modulo Phi_m (monic)."""
    mod = cyclotomic_coeffs(m)
    deg = len(mod) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            work[i] = Fraction(0)
            for j in range(deg):
                work[i - deg + j] -= c * mod[j]
    work = work[:deg]
    work += [Fraction(0)] * (deg - len(work))
    return work


class CycloNumber:
    """Element of Q(zeta_m), stored as rationals mod Phi_m."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        deg = _phi(order)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = _poly_mod_cyclo(coeffs, order)
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, m=1):
        return cls(m, [])

    @classmethod
    def one(cls, m=1):
        return cls(m, [1])

    @classmethod
    def rational(cls, q, m=1):
        return cls(m, [Fraction(q)])

    @classmethod
    def root(cls, m, k=1):
        """zeta_m^k."""
        k %= m
        return cls(m, [0] * k + [1])

    # -- structure ------------------------------------------------------
    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational number: %r" % (self,))
        return self.coeffs[0]

    def embed(self, order):
        """Image under zeta_m |-> zeta_M^(M/m) for m | M."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("no embedding Q(zeta_%d) -> Q(zeta_%d)" % (self.order, order))
        step = order // self.order
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[step * i] = c
        return CycloNumber(order, out)

    @staticmethod
    def _common(a, b):
        if not isinstance(b, CycloNumber):
            b = CycloNumber.rational(b)
        if a.order == b.order:
            return a, b
        m = lcm(a.order, b.order)
        return a.embed(m), b.embed(m)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        a, b = self._common(self, other)
        return CycloNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloNumber) else CycloNumber.rational(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(self, other)
        return CycloNumber(a.order, _poly_mod_cyclo(_poly_mul(a.coeffs, b.coeffs), a.order))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.order)
        mod = [Fraction(c) for c in cyclotomic_coeffs(self.order)]
        g, s, _ = _poly_xgcd(list(self.coeffs), mod)
        # g is a nonzero constant since Phi_m is irreducible over Q
        inv = [c / g[0] for c in s]
        return CycloNumber(self.order, inv)

    def __truediv__(self, other):
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other)
        a, b = self._common(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.rational(other) / self

    def conj(self, k):
        """Field automorphism zeta_m |-> zeta_m^k, gcd(k, m) = 1."""
        if gcd(k, self.order) != 1:
            raise ValueError("conjugation index %d not a unit mod %d" % (k, self.order))
        m = self.order
        out = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            if c:
                out[(k * i) % m] += c
        return CycloNumber(m, out)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNumber.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    terms.append("%s*z%d^%d" % (c, self.order, i))
        return " + ".join(terms) if terms else "0"


def _poly_xgcd(a, b):
    """Extended gcd over Q[x] for coefficient lists (ascending).

    Returns (g, s, t) with s*a + t*b = g; only g and s are used here so
    t is not tracked.
    """

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def sub(u, v):
        n = max(len(u), len(v))
        u = u + [Fraction(0)] * (n - len(u))
        v = v + [Fraction(0)] * (n - len(v))
        return trim([x - y for x, y in zip(u, v)])

    def divmod_poly(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            if c:
                q[i] = c
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        return trim(q), trim(num)

    r0, r1 = trim([Fraction(c) for c in a]), trim([Fraction(c) for c in b])
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, _poly_mul(q, s1) if s1 else [])
    return r0, s0, None


# ---------------------------------------------------------------------------
# Galois-ring embeddings and p-adic valuations


def _gfp_poly_divmod(num, den, p):
    num = [c % p for c in num]
    den = [c % p for c in den]
    while den and den[-1] == 0:
        den.pop()
    inv_lead = pow(den[-1], -1, p)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = (num[i + len(den) - 1] * inv_lead) % p
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] = (num[i + j] - c * d) % p
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _gfp_poly_xgcd(a, b, p):
    r0, r1 = [c % p for c in a], [c % p for c in b]
    s0, s1 = [1], [0]
    t0, t1 = [0], [1]

    def mul(u, v):
        out = [0] * (len(u) + len(v) - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    out[i + j] = (out[i + j] + ui * vj) % p
        return out

    def sub(u, v):
        out = [(x - y) % p for x, y in zip(u + [0] * (len(v) - len(u)), v + [0] * (len(u) - len(v)))]
        while out and out[-1] == 0:
            out.pop()
        return out

    while r1:
        q, r = _gfp_poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    return r0, s0, t0


def _lift_mod(coeffs, modulus):
    return [c % modulus for c in coeffs]


def _poly_mul_mod(a, b, modulus):
    out = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % modulus
    return out


def _poly_sub_mod(a, b, modulus):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % modulus for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_add_mod(a, b, modulus):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % modulus for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod_mod(num, den, modulus):
    """divmod by a monic polynomial, coefficients mod `modulus`."""
    num = list(num)
    assert den[-1] == 1
    if len(num) < len(den):
        return [0], num
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] % modulus
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] = (num[i + j] - c * d) % modulus
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def _hensel_lift_factor(full, h0, p, target_exp):
    """Lift the monic factor h0 of `full` from mod p to mod p^target_exp.

    Classical quadratic Hensel lifting for a coprime factorization
    full = g*h (mod p); returns h monic mod p^target_exp.
    """
    g0, rem = _gfp_poly_divmod(full, h0, p)
    assert not rem, "h0 does not divide Phi mod p"
    gcd_, s0, t0 = _gfp_poly_xgcd(g0, h0, p)
    assert len(gcd_) == 1, "factors not coprime mod p"
    inv = pow(gcd_[0], -1, p)
    s = [c * inv % p for c in s0]  # s*g + t*h = 1 (mod p)
    t = [c * inv % p for c in t0]
    g, h = list(g0), list(h0)
    cur = 1
    while cur < target_exp:
        nxt = min(2 * cur, target_exp)
        q = p ** nxt
        e = _poly_sub_mod(full, _poly_mul_mod(g, h, q), q)
        qq, r = _poly_divmod_mod(_poly_mul_mod(s, e, q), h, q)
        h_new = _poly_add_mod(h, r, q)
        g_new = _poly_add_mod(g, _poly_add_mod(_poly_mul_mod(t, e, q),
                                               _poly_mul_mod(qq, g, q), q), q)
        b = _poly_sub_mod(_poly_add_mod(_poly_mul_mod(s, g_new, q),
                                        _poly_mul_mod(t, h_new, q), q), [1], q)
        cc, d = _poly_divmod_mod(_poly_mul_mod(s, b, q), h_new, q)
        s = _poly_sub_mod(s, d, q)
        t = _poly_sub_mod(_poly_sub_mod(t, _poly_mul_mod(t, b, q), q),
                          _poly_mul_mod(cc, g_new, q), q)
        g, h = g_new, h_new
        cur = nxt
    h = _lift_mod(h + [0] * (len(h0) - len(h)), p ** target_exp)
    assert h[len(h0) - 1] == 1
    return h


class GaloisRingEmbedding:
    """Unramified arithmetic for Q(zeta_m) above p, modulo p^k.

    Holds one Hensel-lifted irreducible factor h of Phi_m mod p^k and a
    designated root omega = x of exact multiplicative order m; the
    conjugate embeddings zeta_m |-> omega^t for t in coset reps of <p>
    in (Z/m)^* enumerate the primes of Q(zeta_m) above p.
    """

    def __init__(self, p, m, k):
        if gcd(p, m) != 1:
            raise ValueError("p = %d must be coprime to m = %d" % (p, m))
        self.p = p
        self.m = m
        self.k = k
        self.pk = p ** k
        self.f = n_order(p, m) if m > 1 else 1
        phim = cyclotomic_coeffs(m)
        factors = Poly([c % p for c in reversed(phim)], _X, modulus=p).factor_list()[1]
        monic = []
        for fac, mult in factors:
            assert mult == 1
            coeffs = [int(c) % p for c in reversed(fac.all_coeffs())]
            monic.append(tuple(coeffs))
        monic.sort()
        h0 = list(monic[0])
        assert len(h0) - 1 == self.f, "factor degree %d != ord_m(p) = %d" % (len(h0) - 1, self.f)
        self.h = _hensel_lift_factor([c % self.pk for c in phim], h0, p, k)
        # powers of omega = x in Z[x]/(p^k, h)
        powers = [[1] + [0] * (self.f - 1)]
        for _ in range(1, m):
            nxt = _poly_mul_mod(powers[-1], [0, 1], self.pk)
            _, nxt = _poly_divmod_mod(nxt, self.h, self.pk)
            nxt += [0] * (self.f - len(nxt))
            powers.append(nxt)
        self.omega_powers = powers
        # exact order m: omega^m = 1 and omega^(m/q) != 1 mod p
        end = _poly_mul_mod(powers[m - 1], [0, 1], self.pk)
        _, end = _poly_divmod_mod(end, self.h, self.pk)
        end += [0] * (self.f - len(end))
        assert end == [1] + [0] * (self.f - 1), "omega^m != 1"
        for q in _prime_divisors(m):
            w = powers[m // q]
            w1 = [(w[0] - 1) % p] + [c % p for c in w[1:]]
            assert any(w1), "omega^(m/%d) == 1 mod p" % q
        self.orbit_reps = _orbit_reps(m, p)
        n_units = _phi(m) if m > 1 else 1
        assert len(self.orbit_reps) == n_units // self.f

    def embed_integral(self, int_coeffs, t):
        """Image of sum_i c_i zeta_m^i under zeta_m |-> omega^t."""
        acc = [0] * self.f
        for i, c in enumerate(int_coeffs):
            if c % self.pk:
                w = self.omega_powers[(t * i) % self.m]
                for j in range(self.f):
                    acc[j] = (acc[j] + c * w[j]) % self.pk
        return acc

    def image_valuation(self, image):
        """min v_p over coefficients, or None if image = 0 mod p^k."""
        best = None
        for c in image:
            c %= self.pk
            if c:
                v = prime_valuation(c, self.p)
                if best is None or v < best:
                    best = v
        return best


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


def _orbit_reps(m, p):
    """Smallest representatives of the orbits of <p> on (Z/m)^*, sorted."""
    if m == 1:
        return [0]
    units = [a for a in range(1, m) if gcd(a, m) == 1]
    seen = set()
    reps = []
    for a in units:
        if a in seen:
            continue
        reps.append(a)
        t = a
        while True:
            seen.add(t)
            t = (t * p) % m
            if t == a:
                break
    return reps


_EMBEDDING_CACHE = {}


def galois_ring(p, m, k):
    key = (p, m, k)
    if key not in _EMBEDDING_CACHE:
        _EMBEDDING_CACHE[key] = GaloisRingEmbedding(p, m, k)
    return _EMBEDDING_CACHE[key]


DEFAULT_PRECISION = 20


def padic_valuations(x, p, start_precision=DEFAULT_PRECISION):
    """Valuations of x at every prime of Q(zeta_m) above p.

    Returns [(orbit representative t, valuation)] sorted by t, one entry
    per prime; precision escalates by doubling until every image is
    determined.  Requires gcd(m, p) = 1 and x != 0.
    """
    if x.is_zero():
        raise ValueError("valuation of zero is undefined")
    m = x.order
    if gcd(m, p) != 1:
        raise ValueError("p = %d ramifies in Q(zeta_%d)" % (p, m))
    den = 1
    for c in x.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in x.coeffs]
    vden = prime_valuation(den, p)
    k = start_precision
    while True:
        ring = galois_ring(p, m, k)
        vals = []
        ok = True
        for t in ring.orbit_reps:
            v = ring.image_valuation(ring.embed_integral(ints, t))
            if v is None:
                ok = False
                break
            vals.append((t, v - vden))
        if ok:
            return vals
        k *= 2

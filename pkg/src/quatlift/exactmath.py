"""Exact arithmetic utilities shared across the package.

Provides square-free decomposition of rationals, p-adic valuations,
a cyclotomic-number class (integer/rational vectors reduced modulo a
cyclotomic polynomial, so that character sums can be tested for exact
equality with 0 and roots of unity), a generic dual-group construction
for small finite abelian groups, and Kronecker-substitution polynomial
multiplication for long integer q-series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import sympy


# ---------------------------------------------------------------------------
# integer / rational helpers
# ---------------------------------------------------------------------------

def factorint(n):
    """Prime factorization of |n| as a dict p -> e (n != 0)."""
    return {int(p): int(e) for p, e in sympy.factorint(abs(n)).items()}


def squarefree_part(n):
    """Largest squarefree s with n = s * f^2; preserves the sign of n."""
    if n == 0:
        raise ValueError("squarefree_part(0) undefined")
    s = 1 if n > 0 else -1
    for p, e in factorint(n).items():
        if e % 2:
            s *= p
    return s


def frac_sqrt(x):
    """Exact square root of a nonnegative rational, or raise ValueError."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"negative radicand {x}")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(rn, rd)


def ord_p(x, p):
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("ord_p(0) is infinite")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def primes_up_to(n):
    return [int(p) for p in sympy.primerange(2, n + 1)]


# ---------------------------------------------------------------------------
# polynomial helpers (dense coefficient lists, index = degree)
# ---------------------------------------------------------------------------

def poly_mul(a, b):
    """Product of two coefficient lists over any commutative ring."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def poly_rem(a, m):
    """Remainder of a modulo monic m, exact Fraction arithmetic."""
    a = [Fraction(c) for c in a]
    dm = len(m) - 1
    assert m[-1] == 1, "modulus must be monic"
    while len(a) >= len(m):
        c = a[-1]
        if c != 0:
            for k in range(dm + 1):
                a[len(a) - 1 - dm + k] -= c * m[k]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial (integer list)."""
    x = sympy.Symbol("x")
    cp = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
    return tuple(int(c) for c in reversed(cp.all_coeffs()))


class Cyclo:
    """Element of Q(zeta_n): a rational vector modulo the n-th cyclotomic polynomial.

    Internally stored as a coefficient tuple of length < deg(Phi_n),
    reduced, so equality and hashing are structural.  Designed for exact
    verification of character sums whose values are 0, roots of unity, or
    small integer combinations thereof.
    """

    __slots__ = ("order", "vec")

    def __init__(self, order, coeffs, reduce=True):
        self.order = order
        if reduce:
            coeffs = poly_rem(list(coeffs), cyclotomic_poly(order))
        else:
            coeffs = list(coeffs)
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        self.vec = tuple(Fraction(c) for c in coeffs)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order):
        return cls(order, (), reduce=False)

    @classmethod
    def from_rational(cls, order, x):
        return cls(order, (Fraction(x),))

    @classmethod
    def root(cls, order, k=1):
        """zeta_order^k."""
        k %= order
        v = [0] * (k + 1)
        v[k] = 1
        return cls(order, v)

    # -- ring operations ----------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.order == self.order:
                return self, other
            m = self.order * other.order // gcd(self.order, other.order)
            return self.promote(m), other.promote(m)
        return self, Cyclo.from_rational(self.order, other)

    def promote(self, m):
        """Re-express in Q(zeta_m) for self.order | m."""
        if m == self.order:
            return self
        assert m % self.order == 0
        k = m // self.order
        v = [0] * (k * max(len(self.vec), 1))
        for i, c in enumerate(self.vec):
            v[k * i] = c
        return Cyclo(m, v)

    def __add__(self, other):
        a, b = self._coerce(other)
        n = max(len(a.vec), len(b.vec))
        v = [(a.vec[i] if i < len(a.vec) else 0) + (b.vec[i] if i < len(b.vec) else 0)
             for i in range(n)]
        return Cyclo(a.order, v)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, [-c for c in self.vec], reduce=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else Cyclo.from_rational(self.order, -Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            return Cyclo(self.order, [Fraction(other) * c for c in self.vec], reduce=False)
        a, b = self._coerce(other)
        return Cyclo(a.order, poly_mul(list(a.vec), list(b.vec)))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Cyclo.from_rational(self.order, 1)
        base = self
        if k < 0:
            raise ValueError("negative powers unsupported; invert roots by exponent")
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates -----------------------------------------------------
    def is_zero(self):
        return not self.vec

    def __eq__(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo.from_rational(self.order, other)
        a, b = self._coerce(other)
        return a.vec == b.vec

    def __hash__(self):
        return hash((self.order, self.vec))

    def __repr__(self):
        return f"Cyclo({self.order}, {list(self.vec)})"

    def to_complex(self):
        import cmath
        return sum(complex(c) * cmath.exp(2j * cmath.pi * i / self.order)
                   for i, c in enumerate(self.vec))


class CycloReducer:
    """Fast exact zero-testing of integer combinations of M-th roots of unity.

    Precomputes x^k mod Phi_M for all k < M as integer vectors; a count
    vector (c_0, ..., c_{M-1}) representing sum c_k zeta^k reduces to its
    canonical coordinate vector by one integer matrix product.
    """

    def __init__(self, M):
        import numpy as np
        self.M = M
        phi = cyclotomic_poly(M)
        deg = len(phi) - 1
        rows = []
        cur = [0] * deg
        for k in range(M):
            if k < deg:
                cur = [0] * deg
                cur[k] = 1
            else:
                top = cur[deg - 1]
                cur = [0] + cur[:-1]
                if top:
                    for j in range(deg):
                        cur[j] -= top * phi[j]
            rows.append(list(cur))
        self.table = np.array(rows, dtype=np.int64)
        assert int(abs(self.table).max()) < 2**40

    def reduce_counts(self, counts):
        """Canonical coordinates (tuple of ints) of sum counts[k] * zeta^k."""
        import numpy as np
        c = np.asarray(counts, dtype=np.int64)
        return tuple(int(v) for v in c @ self.table)

    def root_coords(self, k):
        return tuple(int(v) for v in self.table[k % self.M])

    def zero(self):
        return tuple([0] * self.table.shape[1])


@lru_cache(maxsize=None)
def cyclo_reducer(M):
    return CycloReducer(M)


# ---------------------------------------------------------------------------
# finite abelian groups and their duals
# ---------------------------------------------------------------------------

class FiniteAbelianGroup:
    """A small finite abelian group given by elements, a multiplication map and identity.

    Elements must be hashable.  The dual is computed by extending
    characters along a chain of cyclic extensions; values are recorded as
    exponents k (meaning zeta_M^k) where M is the group exponent.
    """

    def __init__(self, elements, mul, identity):
        self.elements = list(elements)
        self.mul = mul
        self.identity = identity
        assert identity in set(self.elements)

    def __len__(self):
        return len(self.elements)

    def element_order(self, g):
        n = 1
        x = g
        while x != self.identity:
            x = self.mul(x, g)
            n += 1
        return n

    def exponent(self):
        m = 1
        for g in self.elements:
            o = self.element_order(g)
            m = m * o // gcd(m, o)
        return m

    def power(self, g, k):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def dual(self):
        """Return (M, chars) where chars is a list of dicts element -> exponent mod M."""
        M = self.exponent()
        mul = self.mul
        H = {self.identity}
        chars = [{self.identity: 0}]
        for x in self.elements:
            if x in H:
                continue
            # order of x in G/H
            d = 1
            xk = x
            while xk not in H:
                xk = mul(xk, x)
                d += 1
            assert M % d == 0
            new_chars = []
            powers = []
            xj = self.identity
            for _ in range(d - 1):
                xj = mul(xj, x)
                powers.append(xj)
            for ch in chars:
                k0 = ch[xk]
                assert k0 % d == 0, "character extension obstruction"
                base = (k0 // d) % M
                for t in range(d):
                    s = (base + t * (M // d)) % M
                    nch = dict(ch)
                    for j, xj in enumerate(powers, start=1):
                        val = (j * s) % M
                        for h, hv in ch.items():
                            nch[mul(h, xj)] = (hv + val) % M
                    new_chars.append(nch)
            chars = new_chars
            newH = set()
            for xj in powers:
                for h in H:
                    newH.add(mul(h, xj))
            H |= newH
        assert len(chars) == len(self.elements) == len(H)
        return M, chars


# ---------------------------------------------------------------------------
# fast integer q-series multiplication (Kronecker substitution)
# ---------------------------------------------------------------------------

def int_poly_mul(a, b, trunc=None):
    """Multiply two integer coefficient lists, optionally truncating the result.

    Packs each polynomial into one big integer and uses CPython's
    subquadratic big-integer multiplication; signs are handled by a
    positive/negative split.  Exact.
    """
    if not a or not b:
        return []
    n_out = len(a) + len(b) - 1
    if trunc is not None:
        n_out = min(n_out, trunc + 1)
        a = a[: trunc + 1]
        b = b[: trunc + 1]
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * n_out
    bound = ma * mb * min(len(a), len(b))
    K = bound.bit_length() + 2
    mask = (1 << K) - 1

    def pack(v, sign):
        acc = 0
        for i, c in enumerate(v):
            if sign > 0 and c > 0:
                acc |= c << (K * i)
            elif sign < 0 and c < 0:
                acc |= (-c) << (K * i)
        return acc

    ap, an = pack(a, +1), pack(a, -1)
    bp, bn = pack(b, +1), pack(b, -1)
    pos = ap * bp + an * bn
    neg = ap * bn + an * bp
    out = []
    for i in range(n_out):
        sh = K * i
        out.append(((pos >> sh) & mask) - ((neg >> sh) & mask))
    return out


def frac_poly_mul(a, b, trunc=None):
    """Multiply Fraction coefficient lists via integer scaling + Kronecker."""
    from math import lcm
    da = lcm(*(Fraction(c).denominator for c in a)) if a else 1
    db = lcm(*(Fraction(c).denominator for c in b)) if b else 1
    ia = [int(Fraction(c) * da) for c in a]
    ib = [int(Fraction(c) * db) for c in b]
    prod = int_poly_mul(ia, ib, trunc)
    scale = Fraction(1, da * db)
    return [c * scale for c in prod]

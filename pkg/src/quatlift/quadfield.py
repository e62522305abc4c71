"""Imaginary quadratic field data attached to a pure quaternion.

A pure quaternion xi with reduced norm n(xi) > 0 generates E = Q(sqrt(-n(xi))).
This module derives, with exact rational arithmetic throughout: the
fundamental discriminant, the auxiliary scalars a, b and the ratio
r = 2*sqrt(-n(xi))/sqrt(d) (a nonzero rational), the integral generator
theta with Z-basis {1, theta}, prime splitting data, class number and
unit count, and the two 2x2 matrix embeddings of E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import FiniteAbelianGroup, frac_sqrt, ord_p, squarefree_part


@dataclass(frozen=True)
class QuadField:
    """E = Q(xi) for a pure quaternion of norm norm_xi, with derived exact data.

    theta is the integral generator with minimal polynomial
    x^2 - theta_trace*x + theta_norm of discriminant disc; r satisfies
    r^2 * |disc| = 4 * norm_xi.
    """

    norm_xi: Fraction
    disc: int
    a: Fraction
    b: Fraction
    r: Fraction
    theta_trace: int
    theta_norm: int
    class_number: int
    unit_count: int

    @property
    def theta_minpoly(self):
        """(c0, c1, c2) with c2 x^2 + c1 x + c0 = x^2 - tr*x + nm."""
        return (self.theta_norm, -self.theta_trace, 1)

    def theta_complex(self):
        """Complex embedding of theta with positive imaginary part."""
        import cmath
        return (self.theta_trace + 1j * cmath.sqrt(abs(self.disc)).real) / 2

    def element(self, x, y=0):
        return FieldElement(self, Fraction(x), Fraction(y))

    def __repr__(self):
        return f"QuadField(disc={self.disc}, norm_xi={self.norm_xi})"


@dataclass(frozen=True)
class PrimeLocalData:
    """Local behaviour of a prime in E: splitting, e_p, r_p, mu_p = ord_p(r)."""

    p: int
    splitting: str  # "split" | "inert" | "ramified"
    e_p: int
    r_p: int
    mu_p: int
    eta_p_value: int


def field_from_xi(norm_xi) -> QuadField:
    """Build the field data for E = Q(sqrt(-norm_xi)), norm_xi a positive rational."""
    n = Fraction(norm_xi)
    if n <= 0:
        raise ValueError(f"norm of a pure quaternion must be positive, got {n}")
    # Q(sqrt(-n)) = Q(sqrt(m)) with m the squarefree part of -num*den
    m = squarefree_part(-n.numerator * n.denominator)
    disc = m if m % 4 == 1 or m % 4 == -3 else 4 * m
    r = frac_sqrt(4 * n / abs(disc))
    # principal branch sqrt(-n)*sqrt(disc) = -sqrt(n*|disc|), a rational
    if disc % 2:  # odd discriminant
        a = -r * abs(disc)
        tr, nm = -disc, (disc * disc - disc) // 4
    else:
        a = Fraction(-r * abs(disc), 2)
        tr, nm = -disc // 2, (disc * (disc - 4)) // 16
    b = -n - a * a / 4
    h = class_number(disc)
    w = 4 if disc == -4 else 6 if disc == -3 else 2
    fld = QuadField(n, disc, a, b, r, tr, nm, h, w)
    assert r * r * abs(disc) == 4 * n
    assert tr * tr - 4 * nm == disc
    return fld


def splitting_type(E: QuadField, p: int) -> PrimeLocalData:
    """Splitting of p in E plus the local constants e_p, r_p, mu_p."""
    d = E.disc
    if d % p == 0:
        split, e = "ramified", 0
    elif p == 2:
        split, e = ("split", 1) if d % 8 == 1 else ("inert", -1)
    else:
        ls = pow(d % p, (p - 1) // 2, p)
        split, e = ("split", 1) if ls == 1 else ("inert", -1)
    return PrimeLocalData(
        p=p,
        splitting=split,
        e_p=e,
        r_p=2 if split == "ramified" else 1,
        mu_p=ord_p(E.r, p),
        eta_p_value=e,
    )


# ---------------------------------------------------------------------------
# class numbers and class groups via binary quadratic forms
# ---------------------------------------------------------------------------

def reduced_forms(disc):
    """All reduced primitive positive forms (a, b, c) of the given discriminant."""
    assert disc < 0 and disc % 4 in (0, 1)
    from math import gcd, isqrt
    out = []
    amax = isqrt(abs(disc) // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (a == c or abs(b) == a) and b < 0:
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                out.append((a, b, c))
    return sorted(out)


def class_number(disc):
    return len(reduced_forms(disc))


def class_data(E: QuadField):
    """(h(E), w(E))."""
    return E.class_number, E.unit_count


def reduce_form(a, b, c):
    """Gauss reduction of a positive definite binary quadratic form."""
    while True:
        if not (-a < b <= a):
            t = (a - b) // (2 * a)
            c = c + t * (b + a * t)
            b = b + 2 * a * t
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b < 0 and a == c:
            b = -b
        return (a, b, c)


def _transform(form, x, y, u, v):
    """Action of the unimodular substitution (X,Y) -> (xX+uY, yX+vY) on a form."""
    a, b, c = form
    a2 = a * x * x + b * x * y + c * y * y
    b2 = 2 * a * x * u + b * (x * v + y * u) + 2 * c * y * v
    c2 = a * u * u + b * u * v + c * v * v
    return (a2, b2, c2)


def _equivalent_with_coprime_lead(form, N):
    """An SL2(Z)-equivalent form whose leading coefficient is coprime to N."""
    from math import gcd
    a, b, c = form
    for bound in range(1, 40):
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                val = a * x * x + b * x * y + c * y * y
                if val != 0 and gcd(val, N) == 1:
                    g, u0, v0 = _xgcd(x, y)
                    assert g == 1
                    # x*v - y*u = 1 with (u, v) = (-v0, u0)
                    return _transform(form, x, y, -v0, u0)
    raise ArithmeticError("no representation coprime to N found")


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def compose_forms(f1, f2):
    """Dirichlet composition of two primitive forms of equal discriminant, reduced.

    f2 is first moved to an equivalent form whose leading coefficient is
    coprime to 2*a1, after which the forms are united and composition is a
    CRT on the middle coefficients.
    """
    from math import gcd
    a1, b1, c1 = f1
    D = b1 * b1 - 4 * a1 * c1
    a2, b2, c2 = _equivalent_with_coprime_lead(f2, 2 * a1)
    assert D == b2 * b2 - 4 * a2 * c2
    # B = b1 mod 2a1, B = b2 mod 2a2; gcd(2a1, 2a2) = 2 and b1 = b2 = D mod 2
    g = gcd(2 * a1, 2 * a2)
    assert (b1 - b2) % g == 0
    l = 2 * a1 * a2
    _, u, _ = _xgcd(2 * a1 // g, 2 * a2 // g)
    B = (b1 + (b2 - b1) // g * u * 2 * a1) % l
    a3 = a1 * a2
    assert (B * B - D) % (4 * a3) == 0
    return reduce_form(a3, B, (B * B - D) // (4 * a3))


def class_group(disc) -> FiniteAbelianGroup:
    """The form class group of the discriminant as a FiniteAbelianGroup."""
    forms = reduced_forms(disc)
    principal = reduce_form(1, disc % 2, (((disc % 2) ** 2) - disc) // 4)
    return FiniteAbelianGroup(forms, compose_forms, principal)


# ---------------------------------------------------------------------------
# exact field elements x + y*theta and the matrix embeddings
# ---------------------------------------------------------------------------

class FieldElement:
    """x + y*theta with exact rational coordinates in the {1, theta} basis."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field, x, y=0):
        self.field = field
        self.x = Fraction(x)
        self.y = Fraction(y)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        return FieldElement(self.field, Fraction(other), 0)

    def __mul__(self, other):
        o = self._coerce(other)
        T, N = self.field.theta_trace, self.field.theta_norm
        # theta^2 = T*theta - N
        x = self.x * o.x - N * self.y * o.y
        y = self.x * o.y + self.y * o.x + T * self.y * o.y
        return FieldElement(self.field, x, y)

    __rmul__ = __mul__

    def conj(self):
        T = self.field.theta_trace
        return FieldElement(self.field, self.x + T * self.y, -self.y)

    def norm(self):
        T, N = self.field.theta_trace, self.field.theta_norm
        return self.x * self.x + T * self.x * self.y + N * self.y * self.y

    def trace(self):
        return 2 * self.x + self.field.theta_trace * self.y

    def inv(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverting 0 in E")
        c = self.conj()
        return FieldElement(self.field, c.x / n, c.y / n)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = FieldElement(self.field, 1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def to_complex(self):
        return complex(self.x) + complex(self.y) * self.field.theta_complex()

    def __repr__(self):
        return f"({self.x} + {self.y}*theta)"


def embed_iota(E: QuadField, x, y):
    """The embedding iota(x + y*theta) as a 2x2 matrix of Fractions.

    [[x, -r*N(theta)*y], [y/r, x + Tr(theta)*y]]; determinant is the norm form.
    """
    x, y = Fraction(x), Fraction(y)
    r, T, N = E.r, E.theta_trace, E.theta_norm
    return ((x, -r * N * y), (y / r, x + T * y))


def embed_iota_prime(E: QuadField, x, y):
    """The companion embedding iota' evaluated at x + y*theta.

    iota' is defined on coordinates along theta' = -conj(theta); the input is
    converted internally.  Satisfies
    diag(r,1) iota'(s) diag(1/r,1) = iota(conj(s)).
    """
    x, y = Fraction(x), Fraction(y)
    T, N = E.theta_trace, E.theta_norm
    # x + y*theta = (x + y*T) + y*theta'   with theta' = theta - T
    xp, yp = x + y * T, y
    # iota'(xp + yp*theta') = [[xp, N(theta')*yp], [-yp, xp + Tr(theta')*yp]]
    # with Tr(theta') = -T, N(theta') = N
    return ((xp, N * yp), (-yp, xp - T * yp))


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def mat_det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]

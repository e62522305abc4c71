"""Hecke characters of an imaginary quadratic field E.

Global characters here are unramified at every finite place with infinity
type u -> (u/|u|)^{-kappa}; their finite-place values at degree-one primes
are exact elements of E of norm one.  For class number one everything is
exact; for larger (cyclic) class groups values are constructed through a
class-group section and may be floating point.  Local finite-conductor
characters, used by the brute-force conductor lemmas, are enumerated from
the unit-quotient duals of the charsums module.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .charsums import SIZE_GUARD, SizeGuardError, UnitQuotient, unit_quotient
from .exactmath import Cyclo
from .quadfield import (
    FieldElement,
    QuadField,
    class_group,
    reduce_form,
    splitting_type,
)


class CharacterExistenceError(ValueError):
    pass


class RamifiedCharacterError(ValueError):
    pass


@dataclass
class HeckeCharacter:
    """A Hecke character of E, unramified at all finite places, weight -kappa."""

    field: QuadField
    kappa: int
    class_char_index: int = 0
    conductor_exponents: dict = dc_field(default_factory=dict)

    def i_p(self, p):
        return self.conductor_exponents.get(p, 0)

    @property
    def infinity_weight(self):
        return -self.kappa

    def A_chi(self):
        """The conductor norm A(chi) = prod p^{i_p}."""
        out = 1
        for p, e in self.conductor_exponents.items():
            out *= p**e
        return out


def unramified_character(E: QuadField, kappa, class_char_index=0) -> HeckeCharacter:
    """The everywhere-unramified character with infinity weight -kappa.

    Exists iff the unit group of E is killed by the infinity type, i.e.
    w(E) | kappa; for class number one it is unique.  A nonzero
    class_char_index twists by the corresponding class-group character.
    """
    if kappa % 2 or kappa <= 0:
        raise CharacterExistenceError(f"infinity weight must be a negative even integer, got kappa={kappa}")
    if kappa % E.unit_count:
        raise CharacterExistenceError(
            f"no unramified character of weight -{kappa}: w(E) = {E.unit_count} does not divide kappa"
        )
    if class_char_index and not (0 <= class_char_index < E.class_number):
        raise CharacterExistenceError("class character index out of range")
    return HeckeCharacter(E, kappa, class_char_index)


# ---------------------------------------------------------------------------
# prime generators and exact values (class number one path)
# ---------------------------------------------------------------------------

def prime_element(E: QuadField, p, norm_power=1):
    """A generator of norm p**norm_power in O_E, canonicalized by unit action.

    The canonical associate has complex argument in [0, 2*pi/w(E)).
    Raises if no element of that norm exists (non-principal ideal).
    """
    import math
    target = p**norm_power
    T, Nm = E.theta_trace, E.theta_norm
    best = None
    ybound = int(math.isqrt(4 * target * 4 // abs(E.disc))) + 2
    for y in range(-ybound, ybound + 1):
        # x^2 + T x y + Nm y^2 = target: solve the quadratic in x
        disc = T * T * y * y - 4 * (Nm * y * y - target)
        if disc < 0:
            continue
        s = int(math.isqrt(disc))
        if s * s != disc:
            continue
        for sgn in (1, -1):
            x2 = -T * y + sgn * s
            if x2 % 2:
                continue
            cand = E.element(x2 // 2, y)
            if cand.norm() == target:
                best = cand if best is None else best
                if best != cand:
                    # prefer the canonical associate; collect below
                    pass
    if best is None:
        raise ArithmeticError(f"no element of norm {target} in O_E (ideal not principal?)")
    return _canonical_associate(E, best)


def _units(E: QuadField):
    one = E.element(1, 0)
    units = [one, -one]
    if E.disc == -4:
        i_elt = _sqrt_minus_one(E)
        units += [i_elt, -i_elt]
    elif E.disc == -3:
        # primitive sixth root of unity: theta-based
        z = _sixth_root(E)
        units = [z**k for k in range(6)]
    return units


def _sqrt_minus_one(E):
    # disc -4: theta has trace 2, norm 2, so theta - 1 squares to -1
    return E.element(-1, 1)


def _sixth_root(E):
    # disc -3: theta has trace 3, norm 3; (theta - 1) has norm 1 and order 6
    z = E.element(-1, 1)
    assert z.norm() == 1
    return z


def _canonical_associate(E: QuadField, elt):
    import cmath
    best, best_arg = None, None
    for u in _units(E):
        cand = elt * u
        a = cmath.phase(cand.to_complex()) % (2 * cmath.pi)
        if best is None or a < best_arg - 1e-12:
            best, best_arg = cand, a
    return best


def value_at_prime(chi: HeckeCharacter, p):
    """Finite-place character data at an unramified prime p.

    split p    -> pair (chi_p(pi_1)^{-1}, chi_p(pi_2)^{-1}) of exact norm-one
                  elements of E (complex-conjugate pair)
    inert p    -> 1
    ramified p -> chi_p(pi)^{-1}, exact
    """
    if chi.i_p(p) > 0:
        raise RamifiedCharacterError(f"chi is ramified at {p}")
    E = chi.field
    data = splitting_type(E, p)
    if data.splitting == "inert":
        return E.element(1, 0)
    if E.class_number == 1:
        pi = prime_element(E, p)
        val = _unit_circle_power(E, pi, chi.kappa)
        if data.splitting == "ramified":
            return val
        return (val, val.conj())
    return _value_via_class_section(chi, p, data)


def _unit_circle_power(E: QuadField, pi, kappa):
    """chi_p(pi)^{-1} = (conj(pi))^kappa / N(pi)^{kappa/2}, exact in E."""
    n = pi.norm()
    scale = Fraction(1) / n ** (kappa // 2)
    v = pi.conj() ** kappa
    return E.element(v.x * scale, v.y * scale)


def _value_via_class_section(chi, p, data):
    """Numeric character value at p for class number > 1 (cyclic class groups).

    A prime ideal P_p is tracked by its Hensel root, so the section
    ideal identities Q * P0^{n-e} = (beta) and P0^n = (alpha) are checked
    by valuations, not just norms.
    """
    import cmath
    E = chi.field
    G = class_group(E.disc)
    gen_prime, gen_form, n = _generating_prime(E, G)
    form_p, t_p = _prime_form(E, p)
    e = _dlog_cyclic(G, gen_form, n, reduce_form(*form_p))
    alpha = _element_with_valuations(E, gen_prime**n, {(gen_prime, _prime_form(E, gen_prime)[1]): n})
    zeta = cmath.exp(2j * cmath.pi * chi.class_char_index / n)
    phi0 = zeta * cmath.exp(1j * chi.kappa * cmath.phase(alpha.to_complex()) / n)
    # Q * P0^{n-e} = (beta)
    need = {(p, t_p): 1}
    t0 = _prime_form(E, gen_prime)[1]
    if p == gen_prime:
        need = {(p, t_p): 1 + (n - e)}
    else:
        need[(gen_prime, t0)] = n - e
    beta = _element_with_valuations(E, p * gen_prime ** (n - e), need)
    bz = beta.to_complex()
    val = (bz / abs(bz)) ** chi.kappa * phi0 ** (e - n)
    inv = val.conjugate()  # |val| = 1
    if data.splitting == "ramified":
        return inv
    return (inv, inv.conjugate())


def _generating_prime(E, G):
    """Smallest prime whose prime-ideal class generates the (cyclic) class group."""
    import sympy
    for q in sympy.primerange(2, 200):
        if splitting_type(E, q).splitting == "inert":
            continue
        form, _ = _prime_form(E, q)
        cls = reduce_form(*form)
        if G.element_order(cls) == len(G):
            return q, cls, len(G)
    raise NotImplementedError("no single generating prime found (non-cyclic class group?)")


def _dlog_cyclic(G, gen, n, target):
    x = G.identity
    for e in range(n):
        if x == target:
            return e
        x = G.mul(x, gen)
    raise ArithmeticError("discrete log failure in class group")


def _prime_form(E, p):
    """(form, hensel_root) for the canonical prime ideal (p, theta - t) above p."""
    d = E.disc
    for b in range(2 * p):
        if (b - d) % 2 == 0 and (b * b - d) % (4 * p) == 0:
            t = (b - d) // 2
            return (p, b, (b * b - d) // (4 * p)), t % p
    raise ArithmeticError(f"{p} is inert: no prime form")


def _hensel_lift_root(E, p, t0, depth):
    """Root of theta's minimal polynomial mod p^depth lifting t0 (split p)."""
    T, Nm = E.theta_trace, E.theta_norm
    mod = p**depth
    t = t0 % p
    prec = p
    while prec < mod:
        prec = min(prec * prec, mod)
        f = (t * t - T * t + Nm) % prec
        df = (2 * t - T) % prec
        t = (t - f * pow(df, -1, prec)) % prec
    return t


def _ideal_valuation(E, elt, p, t0, cap):
    """v_P(elt) for P = (p, theta - t0), capped; split P via its Hensel root."""
    if splitting_type(E, p).splitting == "ramified":
        # v_P = ord_p of the norm (P^2 = (p))
        from .exactmath import ord_p as vp
        return vp(elt.norm(), p)
    depth = cap + 1
    t = _hensel_lift_root(E, p, t0, depth)
    mod = p**depth
    val = (int(elt.x) + int(elt.y) * t) % mod
    v = 0
    while v < cap and val % p == 0:
        val //= p
        v += 1
    return v


def _element_with_valuations(E, target_norm, valuations):
    """An element of the given norm with prescribed P-valuations at given primes."""
    import math
    T, Nm = E.theta_trace, E.theta_norm
    ybound = int(math.isqrt(4 * target_norm * 4 // abs(E.disc))) + 2
    for y in range(-ybound, ybound + 1):
        disc = T * T * y * y - 4 * (Nm * y * y - target_norm)
        if disc < 0:
            continue
        s = int(math.isqrt(disc))
        if s * s != disc:
            continue
        for sgn in (1, -1):
            x2 = -T * y + sgn * s
            if x2 % 2:
                continue
            cand = E.element(x2 // 2, y)
            if cand.norm() != target_norm:
                continue
            if all(_ideal_valuation(E, cand, p, t0, v + 1) == v
                   for (p, t0), v in valuations.items()):
                return cand
    raise ArithmeticError(f"no element of norm {target_norm} with valuations {valuations}")


def omega_p_value(chi: HeckeCharacter, p):
    """omega_p(p) for the factorization chi_p = omega_p o Norm (inert/ramified p).

    Inert p: omega_p = 1.  Ramified p with chi unramified: omega_p(p) =
    chi_p(pi_p), an exact sign.
    """
    data = splitting_type(chi.field, p)
    if data.splitting == "inert":
        return 1
    if data.splitting == "ramified":
        val_inv = value_at_prime(chi, p)  # chi_p(pi)^{-1}
        if isinstance(val_inv, FieldElement):
            if val_inv == chi.field.element(1, 0):
                return 1
            if val_inv == chi.field.element(-1, 0):
                return -1
            raise ArithmeticError(f"ramified value {val_inv} is not a sign; kappa not divisible enough")
        return int(round(val_inv.real))
    raise ValueError("omega_p is defined for inert or ramified p only")


def alpha_beta_chi(chi: HeckeCharacter, p):
    """The twisting pair (alpha_p^chi, beta_p^chi) of the convolution factors.

    split    : (chi_p(pi_1)^{-1}, chi_p(pi_2)^{-1})
    inert    : (1, -1)
    ramified : (chi_p(pi_p)^{-1}, 0)
    """
    if chi.i_p(p) > 0:
        raise RamifiedCharacterError(f"chi is ramified at {p}")
    E = chi.field
    data = splitting_type(E, p)
    if data.splitting == "inert":
        return (1, -1)
    if data.splitting == "ramified":
        return (value_at_prime(chi, p), 0)
    return value_at_prime(chi, p)


# ---------------------------------------------------------------------------
# local finite-conductor characters (brute-force enumeration)
# ---------------------------------------------------------------------------

@dataclass
class LocalCharacter:
    """A character of E_p^x trivial on Z_p^x with conductor exponent <= i.

    Values on the unit quotient are exponents of zeta_M recorded in a
    table keyed by coset; value() returns exact cyclotomic numbers.
    """

    p: int
    i_p: int
    quotient: UnitQuotient
    M: int
    values: dict
    omega_p_value: int | None = None

    def value_key(self, u):
        return self.values[self.quotient.class_key(u)]

    def value(self, u):
        return Cyclo.root(self.M, self.value_key(u))

    def value_inv(self, u):
        return Cyclo.root(self.M, -self.value_key(u) % self.M)

    def is_trivial(self):
        return all(v == 0 for v in self.values.values())


def local_characters(p, i, E: QuadField):
    """All characters of (O_{E_p}/p^i)^x trivial on Z_p^x, with exact conductors.

    Guard: p^{2i} <= 10^6.
    """
    if i < 0:
        raise ValueError("conductor depth must be >= 0")
    if p ** (2 * i) > SIZE_GUARD:
        raise SizeGuardError(f"p^(2i) = {p**(2*i)} exceeds the enumeration guard")
    Q = unit_quotient(E, p, i)
    M, chars = Q.dual()
    out = []
    for values, cond in sorted(chars, key=lambda vc: sorted(vc[0].items())):
        out.append(LocalCharacter(p=p, i_p=cond, quotient=Q, M=M, values=values))
    return out

from fractions import Fraction

import pytest

from quatlift.charsums import SizeGuardError
from quatlift.heckechar import (
    CharacterExistenceError,
    LocalCharacter,
    RamifiedCharacterError,
    alpha_beta_chi,
    local_characters,
    omega_p_value,
    prime_element,
    unramified_character,
    value_at_prime,
)
from quatlift.quadfield import field_from_xi

E4 = field_from_xi(Fraction(1, 4))
E3 = field_from_xi(3)


def test_existence_and_unit_obstruction():
    chi = unramified_character(E4, 12)
    assert chi.infinity_weight == -12
    assert chi.A_chi() == 1
    with pytest.raises(CharacterExistenceError):
        unramified_character(E4, 10)  # 4 does not divide 10
    unramified_character(E4, 8)  # exists (D = 2 scenario)
    with pytest.raises(CharacterExistenceError):
        unramified_character(E3, 8)  # 6 does not divide 8


def test_value_at_split_prime_exact():
    chi = unramified_character(E4, 12)
    v1, v2 = value_at_prime(chi, 5)
    # the pair is {((2+i)/sqrt5)^{\pm 12}} = (11753 -+ 10296 i)/15625
    vals = set()
    for v in (v1, v2):
        assert v.norm() == 1  # exact modulus one
        z = v.to_complex()
        vals.add((round(z.real * 15625), round(z.imag * 15625)))
    assert vals == {(11753, 10296), (11753, -10296)}
    assert v2 == v1.conj()
    # product over the conjugate pair is chi_p(p)^{-1} = 1
    assert (v1 * v2) == E4.element(1, 0)


def test_check_power_identity():
    # 11753^2 + 10296^2 = 5^12
    assert 11753**2 + 10296**2 == 5**12


def test_value_at_inert_and_ramified():
    chi = unramified_character(E4, 12)
    assert value_at_prime(chi, 3) == E4.element(1, 0)
    v2 = value_at_prime(chi, 2)
    # ((1+i)/sqrt2)^{-12} = -1
    assert v2 == E4.element(-1, 0)
    assert omega_p_value(chi, 2) == -1
    assert omega_p_value(chi, 3) == 1
    # kappa = 8: ((1+i)/sqrt2)^{-8} = +1
    chi8 = unramified_character(E4, 8)
    assert value_at_prime(chi8, 2) == E4.element(1, 0)
    assert omega_p_value(chi8, 2) == 1


def test_generator_independence():
    # all unit multiples of the generator give the same value when w | kappa
    chi = unramified_character(E4, 12)
    pi = prime_element(E4, 5)
    i_unit = E4.element(-1, 1)  # sqrt(-1)
    base = (pi.conj() ** 12)
    for u in [E4.element(1, 0), -E4.element(1, 0), i_unit, -i_unit]:
        shifted = ((pi * u).conj()) ** 12
        assert shifted == base


def test_multiplicativity_on_principal_elements():
    chi = unramified_character(E4, 12)

    def val(elt):
        # (elt/|elt|)^{-kappa}, exact modulo norms
        n = elt.norm()
        return (elt.conj() ** 12, n**6)

    a = E4.element(2, 1)
    b = E4.element(1, 3)
    va, na = val(a)
    vb, nb = val(b)
    vab, nab = val(a * b)
    assert vab == va * vb and nab == na * nb


def test_alpha_beta_chi():
    chi = unramified_character(E4, 12)
    a, b = alpha_beta_chi(chi, 3)
    assert (a, b) == (1, -1)
    a, b = alpha_beta_chi(chi, 2)
    assert b == 0 and a == E4.element(-1, 0)
    a, b = alpha_beta_chi(chi, 5)
    assert (a * b) == E4.element(1, 0)
    assert b == a.conj()


def test_ramified_chi_rejected():
    chi = unramified_character(E4, 12)
    chi.conductor_exponents[5] = 1
    with pytest.raises(RamifiedCharacterError):
        value_at_prime(chi, 5)
    with pytest.raises(RamifiedCharacterError):
        alpha_beta_chi(chi, 5)


def test_local_characters_counts():
    chs = local_characters(5, 1, E4)  # split
    assert len(chs) == 4
    assert sum(1 for c in chs if c.i_p == 1) == 3
    chs = local_characters(3, 1, E4)  # inert
    assert len(chs) == 4
    assert sum(1 for c in chs if c.i_p == 1) == 3
    # trivial character present with conductor exponent 0
    assert any(c.is_trivial() and c.i_p == 0 for c in chs)


def test_local_characters_value_props():
    for c in local_characters(3, 1, E4):
        # trivial on the scalar class, value a root of unity
        one = c.value((1, 0))
        assert one == 1
        v = c.value((0, 1))  # theta is a unit for inert p
        prod = v
        for _ in range(c.M - 1):
            prod = prod * v
        assert prod == 1


def test_local_characters_guard():
    with pytest.raises(SizeGuardError):
        local_characters(101, 3, E4)


def test_class_number_three_field():
    E23 = field_from_xi(23)
    assert E23.disc == -23 and E23.class_number == 3
    chi = unramified_character(E23, 2, class_char_index=1)
    v1, v2 = value_at_prime(chi, 2)  # 2 splits in Q(sqrt(-23))
    assert abs(abs(v1) - 1) < 1e-12
    assert abs(v1 - v2.conjugate()) < 1e-12
    # multiplicativity: chi(P)chi(Pbar) = chi((2)) = (2/|2|)^kappa = 1
    assert abs(v1 * v2 - 1) < 1e-12


def test_class_section_consistency():
    # chi(P)^3 must equal the principal value at P^3 for the generator prime
    import cmath
    E23 = field_from_xi(23)
    for idx in range(3):
        chi = unramified_character(E23, 2, class_char_index=idx)
        v_inv, _ = value_at_prime(chi, 2)
        chiP = v_inv.conjugate()
        # P^3 = (alpha) with alpha of norm 8 and valuation 3 at P
        from quatlift.heckechar import _element_with_valuations, _prime_form
        _, t = _prime_form(E23, 2)
        alpha = _element_with_valuations(E23, 8, {(2, t): 3})
        az = alpha.to_complex()
        principal = (az / abs(az)) ** 2
        zeta = cmath.exp(2j * cmath.pi * idx / 3)
        assert abs(chiP**3 - principal) < 1e-10

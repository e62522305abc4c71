from fractions import Fraction

import pytest

from quatlift.charsums import (
    FiniteRingModel,
    LocalCharSumError,
    SizeGuardError,
    character_sum,
    coset_reps,
    expected_quotient_order,
    unit_quotient,
    verify_conductor_lemmas,
    volume_closed_form,
    volume_index,
)
from quatlift.quadfield import field_from_xi

E4 = field_from_xi(Fraction(1, 4))   # disc -4: 2 ramified, 3 inert, 5 split
E3 = field_from_xi(3)                # disc -3: 2 inert, 3 ramified, 7 split
E7 = field_from_xi(Fraction(7, 4))   # disc -7: 2 split, 7 ramified
E8 = field_from_xi(2)                # disc -8: 2 ramified, 3 split


@pytest.mark.parametrize("E,p,N", [
    (E4, 5, 1), (E4, 5, 2), (E4, 3, 2), (E4, 2, 3),
    (E3, 3, 2), (E7, 2, 3), (E8, 2, 2), (E3, 7, 2),
])
def test_unit_counts_match_formula(E, p, N):
    model = FiniteRingModel(E, p, N)
    assert model.unit_count() == model.expected_unit_count()


def test_model_arithmetic():
    model = FiniteRingModel(E4, 5, 2)
    u = (3, 7)
    assert model.is_unit(u)
    assert model.mul(u, model.inv(u)) == (1, 0)
    # conj is an involution and norm = u * conj(u)
    assert model.conj(model.conj(u)) == u
    assert model.mul(u, model.conj(u)) == (model.norm(u), 0)


def test_coset_rep_counts():
    # inert p=3, i=1: 3 + 1 = 4 representatives
    _, unit, val1 = coset_reps(E4, 3, 1)
    assert len(unit) + len(val1) == 4
    # split p=5, i=1: 4 unit representatives
    _, unit, val1 = coset_reps(E4, 5, 1)
    assert len(unit) == 4 and not val1
    # i=0: single representative
    _, unit, val1 = coset_reps(E4, 7, 0)
    assert unit == [(1, 0)] and not val1
    # ramified: p^i unit classes plus p^i valuation-1 classes
    _, unit, val1 = coset_reps(E4, 2, 2)
    assert len(unit) == 4 and len(val1) == 4


def test_size_guard():
    with pytest.raises(SizeGuardError):
        coset_reps(E4, 101, 3)


@pytest.mark.parametrize("E,p,i", [
    (E4, 5, 1), (E4, 5, 2), (E4, 3, 1), (E4, 3, 2), (E4, 2, 1), (E4, 2, 3),
    (E3, 2, 2), (E3, 3, 2), (E7, 2, 3), (E8, 2, 2), (E8, 3, 1),
])
def test_quotient_group_orders(E, p, i):
    Q = unit_quotient(E, p, i)
    assert len(Q.group) == expected_quotient_order(Q.model.splitting, p, i)
    M, chars = Q.dual()
    assert len(chars) == len(Q.group)
    # character counts by exact conductor match successive quotient orders
    for j in range(i + 1):
        n_j = sum(1 for _, c in chars if c <= j)
        assert n_j == expected_quotient_order(Q.model.splitting, p, min(j, i))


def test_spec_character_counts():
    # split p=5, i=1 over disc -4: 4 characters, 3 of exact conductor 5
    Q = unit_quotient(E4, 5, 1)
    _, chars = Q.dual()
    assert len(chars) == 4
    assert sum(1 for _, c in chars if c == 1) == 3
    assert sum(1 for _, c in chars if c == 0) == 1
    # inert p=3, i=1 over disc -4: 4 characters, 3 of exact conductor 3
    Q = unit_quotient(E4, 3, 1)
    _, chars = Q.dual()
    assert len(chars) == 4
    assert sum(1 for _, c in chars if c == 1) == 3


def test_trivial_character_always_present():
    for E, p in [(E4, 5), (E3, 2), (E8, 2)]:
        Q = unit_quotient(E, p, 1)
        _, chars = Q.dual()
        assert any(c == 0 and all(v == 0 for v in vals.values()) for vals, c in chars)


def test_k_beyond_conductor_rejected():
    Q = unit_quotient(E4, 5, 1)
    M, chars = Q.dual()
    values, _ = chars[0]
    with pytest.raises(LocalCharSumError):
        character_sum(Q, values, M, ("b_tail", 2))


@pytest.mark.parametrize("E,p", [(E4, 5), (E4, 3), (E4, 2), (E3, 3), (E7, 2)])
def test_lemma_sums_small(E, p):
    cases = verify_conductor_lemmas(E, p, 2)
    assert cases, "no exact-conductor characters found"
    bad = [c for c in cases if c["status"] != "exact-pass"]
    assert not bad, bad[:3]


def test_volume_examples():
    assert volume_index(E4, 5, 1) == Fraction(1, 4)
    assert volume_index(E4, 3, 1) == Fraction(1, 4)
    assert volume_index(E4, 7, 0) == 1
    for E, p, i in [(E4, 5, 1), (E4, 3, 2), (E4, 2, 2), (E3, 3, 1), (E8, 2, 2)]:
        assert volume_index(E, p, i) == volume_closed_form(E, p, i)
        # stability in the enumeration depth
        assert volume_index(E, p, i, depth=i) == volume_index(E, p, i, depth=i + 1)

import random
from fractions import Fraction

import pytest

from quatlift.exactmath import (
    Cyclo,
    FiniteAbelianGroup,
    cyclotomic_poly,
    frac_poly_mul,
    frac_sqrt,
    int_poly_mul,
    ord_p,
    squarefree_part,
)


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-12) == -3
    assert squarefree_part(1) == 1
    assert squarefree_part(-49) == -1


def test_frac_sqrt():
    assert frac_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        frac_sqrt(Fraction(2))


def test_ord_p():
    assert ord_p(Fraction(1, 2), 2) == -1
    assert ord_p(12, 2) == 2
    assert ord_p(Fraction(9, 5), 3) == 2


def test_cyclotomic_poly():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


def test_cyclo_roots_sum_to_zero():
    for n in [2, 3, 4, 5, 6, 12]:
        s = Cyclo.zero(n)
        for k in range(n):
            s = s + Cyclo.root(n, k)
        assert s.is_zero()


def test_cyclo_multiplication_matches_exponents():
    z = Cyclo.root(12, 1)
    assert z**12 == 1
    assert z**6 == -1
    assert (z**4) * (z**8) == 1
    # mixed orders promote to the lcm
    a = Cyclo.root(3, 1)
    b = Cyclo.root(4, 1)
    assert (a * b) == Cyclo.root(12, 7)


def test_cyclo_numeric_agreement():
    z = Cyclo.root(5, 2) + 3 * Cyclo.root(5, 4) - Fraction(1, 2)
    w = Cyclo.root(5, 1) * z
    import cmath
    zc = z.to_complex() * cmath.exp(2j * cmath.pi / 5)
    assert abs(w.to_complex() - zc) < 1e-12


def _cyclic_group(n):
    return FiniteAbelianGroup(range(n), lambda a, b: (a + b) % n, 0)


def _product_group(ns):
    import itertools
    elems = list(itertools.product(*[range(n) for n in ns]))
    def mul(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, ns))
    return FiniteAbelianGroup(elems, mul, tuple(0 for _ in ns))


def test_dual_of_cyclic():
    G = _cyclic_group(12)
    M, chars = G.dual()
    assert M == 12 and len(chars) == 12
    # characters are exactly k -> zeta^{j*k}
    seen = {tuple(ch[k] for k in range(12)) for ch in chars}
    expect = {tuple((j * k) % 12 for k in range(12)) for j in range(12)}
    assert seen == expect


def test_dual_of_products():
    for ns in [(2, 4), (3, 3), (2, 2, 2), (6, 4)]:
        G = _product_group(ns)
        M, chars = G.dual()
        assert len(chars) == len(G.elements)
        # multiplicativity for random triples
        rng = random.Random(1)
        for ch in random.Random(0).sample(chars, min(6, len(chars))):
            for _ in range(10):
                a = rng.choice(G.elements)
                b = rng.choice(G.elements)
                assert ch[G.mul(a, b)] == (ch[a] + ch[b]) % M
        # characters are pairwise distinct and orthogonal to the trivial one
        for ch in chars:
            total = Cyclo.zero(M)
            for g in G.elements:
                total = total + Cyclo.root(M, ch[g])
            if all(v == 0 for v in ch.values()):
                assert total == len(G.elements)
            else:
                assert total.is_zero()


def test_int_poly_mul_matches_naive():
    rng = random.Random(7)
    for _ in range(20):
        a = [rng.randint(-50, 50) for _ in range(rng.randint(1, 30))]
        b = [rng.randint(-50, 50) for _ in range(rng.randint(1, 30))]
        naive = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                naive[i + j] += ai * bj
        assert int_poly_mul(a, b) == naive
        assert int_poly_mul(a, b, trunc=5) == naive[:6]


def test_frac_poly_mul():
    a = [Fraction(1, 2), Fraction(1, 3)]
    b = [Fraction(3), Fraction(2, 5)]
    assert frac_poly_mul(a, b) == [Fraction(3, 2), Fraction(6, 5), Fraction(2, 15)]

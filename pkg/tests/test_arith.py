import math
from fractions import Fraction

from hypothesis import given, strategies as st

from apsquares.arith import (
    factor,
    is_padic_square,
    is_prime,
    local_class_bits,
    rational_roots,
    rational_sqrt,
    square_scaled_poly,
    squarefree_decompose,
    squarefree_part,
)


def test_factor_small_and_large():
    assert factor(360) == {2: 3, 3: 2, 5: 1}
    n = 1000003 * 998244353
    assert factor(n) == {1000003: 1, 998244353: 1}


@given(st.integers(min_value=2, max_value=10**12))
def test_factor_multiplies_back(n):
    f = factor(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


@given(st.integers(min_value=-10**9, max_value=10**9).filter(lambda n: n != 0))
def test_squarefree_decompose(n):
    s, f = squarefree_decompose(n)
    assert s * f * f == n
    assert all(e == 1 for e in factor(abs(s)).values())


def test_rational_sqrt():
    assert rational_sqrt(Fraction(49, 4)) == Fraction(7, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-4) is None


@given(st.fractions(max_denominator=1000).filter(lambda r: r != 0))
def test_squarefree_part_class(r):
    assert rational_sqrt(r / squarefree_part(r)) is not None


def test_padic_squares():
    assert is_padic_square(17, 2)
    assert not is_padic_square(5, 2)
    assert is_padic_square(-1, 5)
    assert not is_padic_square(-1, 3)
    assert not is_padic_square(3, 3)
    assert is_padic_square(9 * 7, 3)


@given(st.integers(1, 500), st.integers(1, 500), st.sampled_from([2, 3, 5, 7]))
def test_local_class_is_multiplicative(a, b, p):
    assert local_class_bits(a * b, p) == local_class_bits(a, p) ^ local_class_bits(b, p)


def test_rational_roots():
    assert sorted(rational_roots([1, -5, 6])) == [2, 3]  # high degree first
    assert sorted(rational_roots([6, -5, 1])) == [Fraction(1, 3), Fraction(1, 2)]
    assert rational_roots([1, 0, -2]) == []


def test_square_scaled_poly_keeps_twist():
    g = square_scaled_poly([Fraction(1, 3), 0, 2])
    # scaled by a rational square: ratio of leading coefficients is a square
    assert rational_sqrt(Fraction(g[0]) / Fraction(1, 3)) is not None

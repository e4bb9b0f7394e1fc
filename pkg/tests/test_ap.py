import pytest
from hypothesis import given, strategies as st

from apsquares.ap import (
    ArithProgression,
    ap_to_point,
    best_in_window,
    count_squares,
    point_to_ap,
    search_aps,
    special_positions,
    squares_in_ap,
)
from apsquares.arith import is_square_int


def test_normalization():
    assert ArithProgression.normalized(384, 16) == ArithProgression(24, 1)
    assert ArithProgression.normalized(1, 4) == ArithProgression(1, 4)  # gcd 1
    with pytest.raises(ValueError):
        ArithProgression(0, 1)


def test_pentagonal_positions():
    assert squares_in_ap(24, 1, 16).positions == (0, 1, 2, 5, 7, 12, 15)
    assert list(squares_in_ap(24, 1, 10**6).positions) == special_positions("pentagonal", 10**6)
    assert count_squares(24, 1, 52) == 12


@given(st.integers(-50, 50).filter(bool), st.integers(-100, 100), st.integers(1, 200))
def test_squares_in_ap_bruteforce(q, a, N):
    want = tuple(i for i in range(N) if q * i + a >= 0 and is_square_int(q * i + a))
    assert squares_in_ap(q, a, N).positions == want


def test_search_known_witnesses():
    assert ArithProgression(120, 49) in search_aps((0, 1, 2, 4), 200)
    found = search_aps((0, 13, 24, 33, 49), 100)
    assert ArithProgression(24, 49) in found and ArithProgression(-1, 49) in found


def test_search_is_complete_in_box():
    B = 60
    I = (0, 1, 3)
    want = set()
    for q in range(-B, B + 1):
        for a in range(-B, B + 1):
            if q == 0:
                continue
            ap = ArithProgression.normalized(q, a)
            if (ap.q, ap.a) == (q, a) and ap.squares_at(I):
                want.add(ap)
    assert set(search_aps(I, B)) == want


def test_point_roundtrip():
    ap = ArithProgression(24, 1)
    I = (0, 1, 2, 5, 7)
    P = ap_to_point(I, ap)
    assert P == (1, 5, 7, 11, 13)
    assert point_to_ap(I, P) == ap
    with pytest.raises(ValueError):
        point_to_ap(I, (1, 1, 1, 1, 1))


def test_best_in_window():
    n, ap = best_in_window([ArithProgression(24, 1), ArithProgression(120, 1)], 8)
    assert (n, ap) == (5, ArithProgression(24, 1))

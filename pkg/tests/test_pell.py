import time

import pytest
from hypothesis import given, settings, strategies as st

from apsquares.arith import is_square_int
from apsquares.pell import _brute_intersection, ap_intersection, ej48_family, fundamental_unit, pell_solve


def test_fundamental_unit():
    assert fundamental_unit(2) == (3, 2)
    assert fundamental_unit(61) == (1766319049, 226153980)


def test_pell_solve():
    assert pell_solve(3, 6, 2) == [(3, 1), (9, 5)]
    assert pell_solve(3, 1, 3) == [(1, 0), (2, 1), (7, 4)]
    with pytest.raises(ValueError):
        pell_solve(4, 1, 1)


def test_ej48():
    assert ej48_family(2) == [0, 8, 120, 1680, 23408]
    for s in range(2, 8):
        assert len(ej48_family(s)) == 5


def test_intersection_fast():
    t0 = time.perf_counter()
    got = ap_intersection(1, 1, 3, 1, 10)
    assert time.perf_counter() - t0 < 1
    assert got[:5] == [0, 8, 120, 1680, 23408] and len(got) == 10
    assert all(is_square_int(n + 1) and is_square_int(3 * n + 1) for n in got)
    assert got == sorted(got)


@given(st.integers(1, 12), st.integers(0, 6), st.integers(1, 12), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_intersection_matches_bruteforce(q1, a1, q2, a2):
    brute = _brute_intersection(q1, a1, q2, a2, 4, 20000)
    got = ap_intersection(q1, a1, q2, a2, 4)
    n = min(len(brute), len(got))
    assert got[:n] == brute[:n]
    if brute and brute[-1] < 20000 and len(brute) < 4:
        assert got[:len(brute)] == brute

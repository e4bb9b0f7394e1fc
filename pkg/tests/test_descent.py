from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from apsquares.curves import model_four
from apsquares.descent import (
    DescentCertificate,
    bruteforce_soluble,
    certify_z_zero,
    descent_image,
    full_selmer,
    full_two_descent,
    images_rank,
    isogeny_selmer_dims,
    qp_soluble,
    rank_window,
    real_soluble,
    selmer_point_search,
    two_isogeny_selmer,
)
from apsquares.elliptic import FactoredCurve

E_RANK0 = FactoredCurve(0, -1, -4)   # y^2 = x(x+1)(x+4)


@given(st.lists(st.integers(-40, 40), min_size=5, max_size=5).filter(lambda g: g[0] != 0),
       st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=150, deadline=None)
def test_local_solubility_matches_bruteforce(g, p):
    brute = bruteforce_soluble(g, p, 7 if p == 2 else 4)
    if brute is not None:
        assert qp_soluble(g, p) == brute


def test_real_solubility():
    assert real_soluble([-1, 0, 0, 0, -1]) is False
    assert real_soluble([-1, 0, 3, 0, -1]) is True


def test_isogeny_selmer_example():
    S = two_isogeny_selmer(E_RANK0, (0, 0))
    assert sorted(S.elements) == [-2, -1, 1, 2]
    assert S.is_closed()
    assert descent_image(E_RANK0, (0, 0), (Fraction(0), Fraction(0))) == 1
    assert descent_image(E_RANK0, (0, 0), (Fraction(2), Fraction(6))) == 2


def test_descent_images_on_rank_one_curve():
    E = FactoredCurve(0, 3, -5)
    assert descent_image(E, (0, 0), (Fraction(-1), Fraction(4))) == -1
    assert descent_image(E, (0, 0), (Fraction(0), Fraction(0))) == -15
    assert descent_image(E, (0, 0), None) == 1
    with pytest.raises(ValueError):
        descent_image(E, (0, 0), (Fraction(1), Fraction(1)))


def test_point_images_lie_in_selmer_up_to_19():
    from itertools import combinations

    from apsquares.descent import point_pair_image
    from apsquares.subsets import is_primitive

    for I in combinations(range(20), 4):
        if I[0] != 0 or not is_primitive(I):
            continue
        E = model_four(I).curve
        S = full_selmer(E)
        for P in E.point_search(8):
            assert point_pair_image(E, P) in S


@pytest.mark.parametrize("roots,window", [
    ((0, -1, -4), (0, 0)), ((0, 2, -4), (1, 1)), ((0, 3, -5), (1, 1)), ((0, 1, -3), (0, 0)),
])
def test_rank_windows(roots, window):
    assert rank_window(FactoredCurve(*roots)) == window


def test_full_selmer_contains_point_images():
    E = FactoredCurve(0, 2, -4)
    dim, upper = full_two_descent(E)
    assert upper == 1 and dim == 3
    assert images_rank(E, E.point_search(10)) == 1
    assert full_selmer(E).dimension == 3


def test_isogeny_dims_bound_rank():
    d1, d2 = isogeny_selmer_dims(E_RANK0, 0)
    assert d1 + d2 - 2 == 0


def test_selmer_point_search_returns_points():
    E = model_four((0, 3, 29, 32)).curve
    pts = selmer_point_search(E, 40)
    assert pts and all(E.contains(P) for P in pts)


def test_certificate_roundtrip():
    c = certify_z_zero((0, 1, 2, 3))
    assert c.conclusion == "z_zero" and c.torsion == "Z/2+Z/4"
    assert DescentCertificate.from_json(c.to_json()) == c
    c2 = certify_z_zero((0, 1, 2, 5))
    assert c2.conclusion == "z_positive_with_witnesses" and [24, 1] in c2.witnesses


FIRSTCASES = [(0, 1, 2, 3), (0, 1, 3, 4), (0, 1, 4, 5), (0, 2, 3, 5), (0, 1, 5, 6)]


@pytest.mark.parametrize("I", FIRSTCASES)
def test_firstcases_have_no_witnesses(I):
    from apsquares.ap import search_aps

    assert certify_z_zero(I).conclusion == "z_zero"
    assert search_aps(I, 10**4) == []

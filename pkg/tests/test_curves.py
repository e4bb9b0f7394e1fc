from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from apsquares.curves import (
    CurveCI,
    genus_of,
    iota,
    m_values,
    model_four,
    parametric_square,
    remark_ap,
    sign_orbit,
    symmetric_curve,
    symmetric_trivial_x,
    torsion_class_symmetric,
    trivial_images,
)
from apsquares.subsets import is_primitive, is_symmetric


def test_genus():
    assert [genus_of(n) for n in (3, 4, 5, 6)] == [0, 1, 5, 17]


def test_ci_contains_ap_points():
    C = CurveCI((0, 1, 2, 5, 7))
    assert C.contains((1, 5, 7, 11, 13))
    assert all(C.contains(P) for P in C.trivial_points())
    assert not C.contains((1, 2, 3, 4, 5))
    assert len(sign_orbit((1, 5, 7, 11, 13))) == 16
    assert iota((2, 4)) == (1, 4)


def test_model_and_trivial_images():
    M = model_four((0, 1, 2, 5))
    assert (M.m0, M.m1) == (1, 3)
    assert M.curve.pretty() == "y^2 = x(x - 3)(x + 5)"
    pts = trivial_images(M.m0, M.m1)
    assert len(set(pts.values())) == 8


def test_symmetric_iff_equal_m():
    for I in combinations(range(31), 4):
        if I[0] != 0:
            continue
        m0, m1 = m_values(I)
        assert is_symmetric(I) == (m0 == m1)


REMARK = {
    (0, 1, 2, 4): (120, 49), (0, 1, 2, 5): (24, 1), (0, 1, 3, 5): (168, 121),
    (0, 1, 2, 6): (840, 1), (0, 1, 3, 6): (8, 1), (0, 2, 3, 6): (280, 529), (0, 1, 4, 6): (24, 25),
}


@pytest.mark.parametrize("I,qa", REMARK.items())
def test_remark_rows(I, qa):
    ap = remark_ap(I)
    assert (ap.q, ap.a) == qa


def test_remark_self_validates_up_to_19():
    for I in combinations(range(20), 4):
        if I[0] == 0 and is_primitive(I):
            ap = remark_ap(I)
            assert ap is None or ap.squares_at(I)
    assert remark_ap((0, 1, 2, 3)) is None


def test_torsion_class_symmetric():
    assert torsion_class_symmetric(9, 16) == "Z/2+Z/8"
    assert torsion_class_symmetric(1, 2) == "Z/2+Z/4"


@given(st.fractions(max_denominator=30), st.fractions(max_denominator=30))
def test_parametric_square(z1, z2):
    try:
        t, x, y = parametric_square(z1, z2)
    except ValueError:
        return
    assert symmetric_curve(t).contains((x, y))
    assert x not in symmetric_trivial_x(t)

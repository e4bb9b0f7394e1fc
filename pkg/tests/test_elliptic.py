from fractions import Fraction

import pytest

from apsquares.curves import symmetric_curve
from apsquares.elliptic import FactoredCurve, cohn_predicts_infinite, root_number, torsion_subgroup


@pytest.mark.parametrize("roots,label", [
    ((0, -1, -4), "Z/2+Z/4"),   # y^2 = x(x+1)(x+4)
    ((0, 2, -4), "Z/2+Z/2"),    # y^2 = x(x-2)(x+4)
    ((0, 3, -5), "Z/2+Z/2"),
])
def test_torsion(roots, label):
    assert torsion_subgroup(FactoredCurve(*roots)).label() == label


def test_torsion_order_8_family():
    assert torsion_subgroup(symmetric_curve(Fraction(16, 9))).label() == "Z/2+Z/8"


def test_point_search_examples():
    pts = FactoredCurve(0, 2, -4).point_search(10)
    assert (4, 8) in pts and (-1, 3) in pts
    assert (-1, 4) in FactoredCurve(0, 3, -5).point_search(10)
    E = FactoredCurve(0, -1, -4)
    assert len(E.point_search(50)) + 1 == 8


def test_group_law_basics():
    E = FactoredCurve(0, 2, -4)
    P, Q = (Fraction(4), Fraction(8)), (Fraction(-1), Fraction(3))
    assert E.add(P, Q) == E.add(Q, P)
    assert E.add(P, E.neg(P)) is None
    assert E.contains(E.mul(5, P))


@pytest.mark.parametrize("ab,w", [((1, 2), 1), ((2, 5), -1), ((1, 4), 1)])
def test_root_number(ab, w):
    assert root_number(*ab) == w


def test_root_number_rejects():
    with pytest.raises(ValueError):
        root_number(2, 4)


@pytest.mark.parametrize("n,want", [(5, True), (7, False), (3, False)])
def test_cohn(n, want):
    assert cohn_predicts_infinite(n) == want
    with pytest.raises(ValueError):
        cohn_predicts_infinite(4)

from fractions import Fraction

import pytest

from apsquares.ap import ArithProgression
from apsquares.covering import (
    INF,
    TRIVIAL,
    analyse_choice,
    covering_choices,
    factor_pair,
    frak_S,
    quartic_invariants,
    quartic_jacobian,
    quartic_model,
    t_to_ap,
)


def test_factor_quadratics():
    fp = factor_pair(quartic_model((0, 1, 2, 4, 7), (1, 4, 7)), 1, 2)
    assert fp.pretty("+") == "t^2 - 10/3 t + 2"
    assert fp.pretty("-") == "t^2 - 6 t + 2"


@pytest.mark.parametrize("I,J,j,want", [
    ((0, 1, 2, 4, 7), (1, 4, 7), (2, 1), [1, 2, 3, 6]),
    ((0, 1, 2, 5, 7), (2, 5, 7), (3, 2), [-10, -5, -2, -1, 1, 2, 5, 10]),
    ((0, 1, 4, 7, 8), (1, 4, 7), (2, 1), [-6, -3, 1, 2]),
])
def test_twist_sets(I, J, j, want):
    assert sorted(frak_S(I, J, *j).elements) == want


@pytest.mark.parametrize("I,J,t,qa", [
    ((0, 1, 2, 5, 7), (2, 5, 7), Fraction(3), (24, 1)),
    ((0, 1, 2, 5, 7), (2, 5, 7), Fraction(5, 6), (24, 1)),
    ((0, 1, 3, 7, 8), (1, 3, 7), Fraction(4), (120, 1)),
])
def test_t_to_ap(I, J, t, qa):
    assert t_to_ap(I, J, t) == ArithProgression(*qa)


def test_trivial_parameters():
    assert t_to_ap((0, 1, 2, 5, 7), (2, 5, 7), Fraction(0)) == TRIVIAL


def test_choices_count_and_identities():
    choices = covering_choices((0, 1, 2, 4, 7))
    assert len(choices) == 90
    for ch in choices:
        M = quartic_model((0, 1, 2, 4, 7), ch.J)
        factor_pair(M, 1, ch.j1)
        factor_pair(M, 2, ch.j2)


def test_rank0_resolution():
    d = analyse_choice((0, 1, 4, 7, 8), (1, 4, 7), 2, 1)
    rows = {(r.delta, "".join(r.signs)): r for r in d.rows}
    assert sorted(map(str, rows[(1, "+-")].t_values)) == ["1", INF]
    assert sorted(map(str, rows[(-3, "++")].t_values)) == ["0", "2"]
    assert rows[(2, "++")].empty and rows[(-6, "++")].empty
    assert d.conclusion() == "z_zero"


def test_quadratic_field_is_reported_not_resolved():
    d = analyse_choice((0, 1, 2, 4, 7), (1, 4, 7), 2, 1)
    assert not d.resolved and d.conclusion() == "inconclusive"


def test_jacobian_of_quartic():
    g = [Fraction(1), 0, 0, 0, Fraction(-1)]
    I, J = quartic_invariants(g)
    assert (I, J) == (-12, 0)
    assert quartic_jacobian(g).a4 == 324

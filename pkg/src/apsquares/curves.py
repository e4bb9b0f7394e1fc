"""The curves attached to a subset I: the intersection of quadrics C_I, the
elliptic model E_I of a 4-subset, the symmetric family E'_t and friends."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ap import ArithProgression
from .arith import is_square_int, rational_sqrt
from .elliptic import FactoredCurve
from .subsets import Subset, is_primitive, make_subset


def genus_of(size: int) -> int:
    """Genus of C_I for a subset with ``size = k + 1`` elements."""
    if size < 3:
        raise ValueError("C_I needs at least 3 positions")
    k = size - 1
    if k == 2:
        return 0
    return (k - 3) * 2 ** (k - 2) + 1


@dataclass(frozen=True)
class CurveCI:
    """``C_I`` in P^k: one quadric per consecutive triple of positions."""

    subset: Subset

    def __post_init__(self):
        if len(self.subset) < 3:
            raise ValueError("C_I needs at least 3 positions")

    @property
    def equations(self) -> list[tuple[int, int, int]]:
        """``(c0, c1, c2)`` meaning ``c0*X_{i-1}^2 - c1*X_i^2 + c2*X_{i+1}^2 = 0``."""
        n = self.subset
        return [(n[i + 1] - n[i], n[i + 1] - n[i - 1], n[i] - n[i - 1]) for i in range(1, len(n) - 1)]

    def contains(self, point: Sequence) -> bool:
        X = [Fraction(x) for x in point]
        if len(X) != len(self.subset) or all(x == 0 for x in X):
            return False
        return all(
            c0 * X[i - 1] ** 2 - c1 * X[i] ** 2 + c2 * X[i + 1] ** 2 == 0
            for i, (c0, c1, c2) in enumerate(self.equations, start=1)
        )

    def trivial_points(self) -> list[tuple[int, ...]]:
        k = len(self.subset) - 1
        return [(1, *[1 - 2 * (m >> i & 1) for i in range(k)]) for m in range(2**k)]

    def genus(self) -> int:
        return genus_of(len(self.subset))


def sign_act(mask: int, point: Sequence) -> tuple:
    """Flip the sign of coordinate ``i`` for every bit ``i`` set in ``mask``."""
    return tuple(-x if mask >> i & 1 else x for i, x in enumerate(point))


def iota(point: Sequence) -> tuple[Fraction, ...]:
    """Squared coordinates, normalized so the first non-zero one is 1."""
    sq = [Fraction(x) ** 2 for x in point]
    lead = next(s for s in sq if s)
    return tuple(s / lead for s in sq)


def sign_orbit(point: Sequence) -> set[tuple]:
    """Orbit under coordinate sign flips, modulo the global sign."""
    out = set()
    for m in range(2 ** len(point)):
        P = sign_act(m, point)
        lead = next(x for x in P if x)
        out.add(P if lead > 0 else tuple(-x for x in P))
    return out


# ---------------------------------------------------------------------------
# four positions: E_I

@dataclass(frozen=True)
class FourTupleModel:
    subset: Subset
    m0: Fraction
    m1: Fraction
    curve: FactoredCurve

    @property
    def symmetric(self) -> bool:
        return self.m0 == self.m1


def m_values(I: Sequence[int]) -> tuple[Fraction, Fraction]:
    n0, n1, n2, n3 = I
    return Fraction(n1 - n0, n2 - n1), Fraction(n3 - n2, n2 - n1)


def elliptic_model(m0, m1) -> FactoredCurve:
    """``y^2 = x (x - m0 m1)(x + m0 + m1 + 1)``."""
    m0, m1 = Fraction(m0), Fraction(m1)
    return FactoredCurve(0, m0 * m1, -(m0 + m1 + 1))


def model_four(I: Sequence[int]) -> FourTupleModel:
    I = make_subset(I)
    if len(I) != 4:
        raise ValueError("model_four needs exactly four positions")
    m0, m1 = m_values(I)
    return FourTupleModel(I, m0, m1, elliptic_model(m0, m1))


TRIVIAL_LABELS = ("O", "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7")


def trivial_images(m0, m1, check_positive: bool = True) -> dict[str, Optional[tuple]]:
    """Images on ``E_I`` of the eight trivial points of ``C_I``."""
    m0, m1 = Fraction(m0), Fraction(m1)
    if check_positive and (m0 <= 0 or m1 <= 0):
        raise ValueError("m0 and m1 must be positive")
    s = m0 + m1 + 1
    pts = {
        "O": None,
        "Q1": (Fraction(0), Fraction(0)),
        "Q2": (m0 * m1, Fraction(0)),
        "Q3": (-s, Fraction(0)),
        "Q4": (-m1, -m1 * (m0 + 1)),
        "Q5": (-m0, m0 * (m1 + 1)),
        "Q6": (m0 * s, -m0 * (m0 + 1) * s),
        "Q7": (m1 * s, m1 * (m1 + 1) * s),
    }
    E = elliptic_model(m0, m1)
    for name, P in pts.items():
        if not E.contains(P):
            raise ArithmeticError(f"trivial image {name} is off the curve")
    if check_positive and len(set(pts.values())) != 8:
        raise ArithmeticError("trivial images are not distinct")
    return pts


def remark_ap(I: Sequence[int]) -> Optional[ArithProgression]:
    """Explicit progression with squares at ``{0, n1, n2, n3}``; ``None`` when
    the construction degenerates (``q == 0``)."""
    I = make_subset(I)
    if len(I) != 4 or not is_primitive(I):
        raise ValueError("remark_ap needs a primitive 4-subset")
    _, n1, n2, n3 = I
    s = n1 + n2 - n3
    a = (s * s - 4 * n1 * n2) ** 2
    q = 8 * s * (n1 - n2 - n3) * (n1 - n2 + n3)
    if q == 0:
        return None
    ap = ArithProgression.normalized(q, a)
    if not ap.squares_at(I):
        raise ArithmeticError(f"{ap} fails at {I}")
    return ap


# ---------------------------------------------------------------------------
# symmetric four positions: E'_t

def symmetric_curve(t) -> FactoredCurve:
    """``E'_t : y^2 = x (x + 1)(x + t^2)``."""
    t = Fraction(t)
    return FactoredCurve(0, -1, -t * t)


def torsion_class_symmetric(n1: int, n2: int) -> str:
    """Torsion of E_I for ``I = {0, n1, n2, n1 + n2}`` by the square criterion."""
    if not 0 < n1 < n2 or math.gcd(n1, n2) != 1:
        raise ValueError("need coprime 0 < n1 < n2")
    if is_square_int(n1) and is_square_int(n2) and is_square_int(n1 + n2):
        return "Z/2+Z/8"
    return "Z/2+Z/4"


def order12_family_check(m0, m1) -> bool:
    m0, m1 = Fraction(m0), Fraction(m1)
    r = rational_sqrt(m1 * m1 + m1 + 1)
    if r is not None:
        for root in (r, -r):
            if m0 == -(m1 + 2 - 2 * root) / 3:
                return True
    r = rational_sqrt(m1 * m1 + m1)
    if r is not None:
        for root in (r, -r):
            if m0 == m1 + 2 * root:
                return True
    return False


def parametric_square(z1, z2) -> tuple[Fraction, Fraction, Fraction]:
    """A non-trivial point ``(x, y)`` on ``E'_t`` together with ``t``."""
    z1, z2 = Fraction(z1), Fraction(z2)
    if 0 in (z1, z2) or abs(z1) == 1 or abs(z2) == 1 or z1 == z2 or z1 == -z2 or z1 * z2 == 1:
        raise ValueError("excluded parameter values")
    t = (z1 + 1 / z1 + z2 + 1 / z2) / 4
    x = -((z1 + z2) ** 2) / (4 * z1 * z2)
    y = rational_sqrt(x * (x + 1) * (x + t * t))
    if y is None:
        raise ArithmeticError("parametrization failed to give a square")
    return t, x, y


def symmetric_trivial_x(t) -> set[Fraction]:
    t = Fraction(t)
    return {Fraction(0), Fraction(-1), -t * t, t, -t}

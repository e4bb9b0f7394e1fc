"""Covering collections for 5-position subsets.

For a split ``I = J + {n3, n4}`` the curve C_I becomes ``y1^2 = p1(t),
y2^2 = p2(t)``.  Factoring each quartic into two quadratics over a field of
degree <= 2 gives unramified double covers; the twists that can carry
rational points form a finite set, and every rational point of C_I shows up
on one of the genus-1 quotients ``delta * z^2 = p_{1,+-}(t) p_{2,+-}(t)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence, Union

from .ap import ArithProgression
from .arith import (
    QuadExt,
    square_scaled_poly,
    is_rational_square,
    poly_eval,
    poly_mul,
    rational_roots,
    rational_sqrt,
    squarefree_part,
)
from .curves import elliptic_model
from .descent import isogeny_rank_bound, locally_soluble, two_isogeny_selmer, full_two_descent
from .elliptic import Curve, FactoredCurve, torsion_subgroup
from .arith import prime_divisors
from .subsets import make_subset

INF = "inf"
TParam = Union[Fraction, str]
TRIVIAL = "trivial"


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class QuarticModel:
    subset: tuple
    J: tuple
    rest: tuple
    m0: Fraction
    m1: Fraction
    m2: Fraction

    def m(self, i: int) -> Fraction:
        return (self.m0, self.m1, self.m2)[i]

    def p(self, i: int) -> list[Fraction]:
        m0, m = self.m0, self.m(i)
        return [
            Fraction(1),
            4 * m,
            -2 * (m0 + 4 * m + 2 * m * m0 + 1),
            4 * m * (m0 + 1),
            (m0 + 1) ** 2,
        ]

    def jacobian(self, i: int) -> FactoredCurve:
        return elliptic_model(self.m0, self.m(i))

    def two_torsion_x(self, i: int, j: int) -> Fraction:
        m0, m = self.m0, self.m(i)
        return (m0 * m, -m0 - m - 1, Fraction(0))[j - 1]

    def D(self, i: int, j: int) -> Fraction:
        m0, m = self.m0, self.m(i)
        return (m * (1 + m), (1 + m) * (m + m0 + 1), m * (m + m0 + 1))[j - 1]

    def X(self, t: TParam) -> tuple:
        """``(X0, X1, X2)`` at parameter t (projective)."""
        c = self.m0 + 1
        if t == INF:
            return (Fraction(1), Fraction(1), Fraction(-1))
        t = Fraction(t)
        return (c - 2 * c * t + t * t, c - 2 * t + t * t, c - t * t)


def quartic_model(I: Sequence[int], J: Sequence[int]) -> QuarticModel:
    I, J = make_subset(I), make_subset(J)
    if len(I) != 5 or len(J) != 3 or not set(J) <= set(I):
        raise ValueError("need a 5-subset I and a 3-subset J of I")
    n0, n1, n2 = J
    n3, n4 = sorted(set(I) - set(J))
    step = n2 - n1
    return QuarticModel(
        I, J, (n3, n4),
        Fraction(n1 - n0, step), Fraction(n3 - n2, step), Fraction(n4 - n2, step),
    )


@dataclass(frozen=True)
class FactorPair:
    i: int
    j: int
    D: Fraction
    alpha: QuadExt
    plus: tuple
    minus: tuple

    @property
    def radicand(self) -> int:
        return self.alpha.D if not self.alpha.is_rational() else 1

    def product(self) -> list:
        return poly_mul(list(self.plus), list(self.minus))

    def pretty(self, sign: str = "+") -> str:
        return format_quadratic(self.plus if sign == "+" else self.minus)


def factor_pair(model: QuarticModel, i: int, j: int) -> FactorPair:
    if i not in (1, 2) or j not in (1, 2, 3):
        raise ValueError("i in {1,2}, j in {1,2,3}")
    D = model.D(i, j)
    if D == 0:
        raise ValueError("degenerate factorization (D = 0)")
    a = QuadExt.sqrt_of(D)
    m0, m = model.m0, model.m(i)
    one = QuadExt(1, 0, a.D)

    def quad(s: int) -> tuple:
        sa = a * s
        if j == 1:
            return (one, sa * 2 + 2 * m, sa * (-2 * m0) - 2 * m * m0 - m0 - 1 - 2 * m + sa * (-2))
        if j == 2:
            return (one, sa * 2 + 2 * m, one * (m0 + 1))
        return (one, sa * (-2) + 2 * m, one * (-m0 - 1 - 2 * m) + sa * 2)

    fp = FactorPair(i, j, D, a, quad(1), quad(-1))
    target = model.p(i)
    if [c for c in fp.product()] != [QuadExt(c, 0, a.D) for c in target]:
        raise ArithmeticError("factorization identity failed")
    return fp


def _fmt_coef(c: QuadExt) -> str:
    if c.is_rational():
        return str(c.a)
    return f"({c.a} + {c.b}*sqrt({c.D}))" if c.a else f"{c.b}*sqrt({c.D})"


def format_quadratic(q: Sequence[QuadExt]) -> str:
    """``t^2 - 10/3 t + 2`` style."""
    _, b, c = q
    out = "t^2"
    for coef, mono in ((b, " t"), (c, "")):
        if coef == 0:
            continue
        if coef.is_rational():
            sign = "-" if coef.a < 0 else "+"
            out += f" {sign} {abs(coef.a)}{mono}"
        else:
            out += f" + {_fmt_coef(coef)}{mono}"
    return out


# ---------------------------------------------------------------------------
# admissible choices


@dataclass(frozen=True)
class CoveringChoice:
    J: tuple
    j1: int
    j2: int
    radicand: Optional[int]  # None: biquadratic

    @property
    def admissible(self) -> bool:
        return self.radicand is not None


def field_radicand(D1: Fraction, D2: Fraction) -> Optional[int]:
    s1, s2 = squarefree_part(D1), squarefree_part(D2)
    if s1 == 1:
        return s2
    if s2 == 1 or s1 == s2:
        return s1
    return None


def covering_choices(I: Sequence[int]) -> list[CoveringChoice]:
    I = make_subset(I)
    if len(I) != 5:
        raise ValueError("need five positions")
    out = []
    for J in combinations(I, 3):
        M = quartic_model(I, J)
        for j1, j2 in product((1, 2, 3), repeat=2):
            out.append(CoveringChoice(J, j1, j2, field_radicand(M.D(1, j1), M.D(2, j2))))
    return out


# ---------------------------------------------------------------------------
# twist set


def class_in_L(d, D: int) -> int:
    """Representative of ``d`` in L*/L*^2 for ``L = Q(sqrt D)``: smallest
    absolute value, positive first."""
    d = squarefree_part(d)
    if D == 1:
        return d
    cands = [d, squarefree_part(d * D)]
    return min(cands, key=lambda x: (abs(x), x < 0))


def _span(gens: Sequence[int], D: int) -> set[int]:
    out = {1}
    for g in gens:
        out |= {class_in_L(x * g, D) for x in out}
    return out


def trivial_t_values(model: QuarticModel) -> list[TParam]:
    """Parameters of the trivial points (``X_i = +-1``) of the conic."""
    return [INF, Fraction(0), Fraction(1), model.m0 + 1]


def fiber_class(fp: FactorPair, t: TParam, y: Optional[Fraction] = None) -> int:
    """Square class over Q of ``p_{i,j,+}(t)`` for a rational t on ``y^2 = p_i(t)``.

    For irrational factors ``u + v*alpha`` of square norm ``y^2`` the class
    is ``2(u + y)``; it is well defined up to the radicand.
    """
    if t == INF:
        return 1
    t = Fraction(t)
    val = fp.plus[0] * t * t + fp.plus[1] * t + fp.plus[2]
    if val == 0:
        val = fp.minus[0] * t * t + fp.minus[1] * t + fp.minus[2]
    if val.is_rational():
        return squarefree_part(val.a)
    if y is None:
        y = rational_sqrt(val.norm())
        if y is None:
            raise ValueError("t is not on the curve")
    u = val.a
    s = u + y if u + y != 0 else u - y
    return squarefree_part(2 * s)


@dataclass
class TwistSet:
    choice: CoveringChoice
    radicand: int
    sel1: list[int]
    sel2: list[int]
    trivial: list[int]
    elements: list[int]


def frak_S(I, J, j1: int, j2: int) -> TwistSet:
    M = quartic_model(I, J)
    D = field_radicand(M.D(1, j1), M.D(2, j2))
    if D is None:
        raise ValueError("choice is biquadratic; only degree <= 2 fields are handled")
    sel1 = two_isogeny_selmer(M.jacobian(1), (M.two_torsion_x(1, j1), 0)).elements
    sel2 = two_isogeny_selmer(M.jacobian(2), (M.two_torsion_x(2, j2), 0)).elements
    fp1 = factor_pair(M, 1, j1)
    triv = sorted({class_in_L(fiber_class(fp1, t), D) for t in trivial_t_values(M)})
    T = _span(triv, D)
    S1 = {class_in_L(d, D) for d in sel1}
    # representatives of S1 modulo T
    reps, covered = [], set()
    for d in sorted(S1, key=lambda x: (abs(x), x < 0)):
        if d in covered:
            continue
        reps.append(d)
        covered |= {class_in_L(d * x, D) for x in T}
    S2 = {class_in_L(d, D) for d in sel2}
    elems = sorted({class_in_L(a * b, D) for a in reps for b in S2}, key=lambda x: (abs(x), x < 0))
    return TwistSet(CoveringChoice(M.J, j1, j2, D), D, sel1, sel2, sorted(triv), elems)


# ---------------------------------------------------------------------------
# quotients and progressions


@dataclass
class QuotientCurve:
    """``delta * z^2 = p_{1,j1,s1}(t) * p_{2,j2,s2}(t)`` over L."""

    delta: int
    signs: tuple[str, str]
    quartic: list  # QuadExt coefficients, high degree first
    radicand: int

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.quartic)

    def rational_quartic(self) -> list[Fraction]:
        if not self.is_rational():
            raise ValueError("quotient is not defined over Q")
        return [self.delta * c.a for c in self.quartic]


def h_quotient(I, J, j1: int, j2: int, delta: int, signs: tuple[str, str]) -> QuotientCurve:
    M = quartic_model(I, J)
    D = field_radicand(M.D(1, j1), M.D(2, j2))
    f1, f2 = factor_pair(M, 1, j1), factor_pair(M, 2, j2)
    q1 = f1.plus if signs[0] == "+" else f1.minus
    q2 = f2.plus if signs[1] == "+" else f2.minus
    return QuotientCurve(delta, tuple(signs), poly_mul(list(q1), list(q2)), D if D is not None else 0)


def t_to_ap(I, J, t: TParam):
    """Progression attached to ``t``, or ``TRIVIAL`` for trivial points."""
    M = quartic_model(I, J)
    X0, X1, X2 = M.X(t)
    n0, n1, n2 = M.J
    sq = {n0: X0 * X0, n1: X1 * X1, n2: X2 * X2}
    q = (sq[n2] - sq[n1]) / (n2 - n1)
    a = sq[n1] - n1 * q
    if q == 0:
        if all(is_rational_square(a + n * q) for n in M.subset) and a != 0:
            return TRIVIAL
        raise ValueError(f"t={t} gives a degenerate point")
    for n in M.subset:
        v = a + n * q
        if n in sq and v != sq[n]:
            raise ArithmeticError("conic parametrization is inconsistent")
        if v < 0 or not is_rational_square(v):
            raise ValueError(f"t={t} is not square at position {n}")
    ap = ArithProgression.normalized(q, a)
    if not ap.squares_at(M.subset):
        raise ArithmeticError("normalized progression failed validation")
    return ap


# ---------------------------------------------------------------------------
# rank-0 quotients over Q


def quartic_invariants(g: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    a, b, c, d, e = (Fraction(x) for x in g)
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    return I, J


def quartic_jacobian(g: Sequence[Fraction]) -> Curve:
    I, J = quartic_invariants(g)
    return Curve(0, -27 * I, -27 * J)


def jacobian_rank_window(E: Curve, height_bound: int = 30) -> tuple[int, int]:
    roots = rational_roots([1, E.a2, E.a4, E.a6])
    if not roots:
        raise ValueError("Jacobian has no rational 2-torsion")
    if len(roots) == 3:
        F = FactoredCurve(*roots)
        _, upper = full_two_descent(F)
        upper = min([upper] + [isogeny_rank_bound(F, r) for r in roots])
    else:
        upper = isogeny_rank_bound(E, roots[0])
    return (0, 0) if upper == 0 else (0, upper)


def quartic_points(g: Sequence[Fraction], H: int) -> dict[TParam, int]:
    """``t -> number of points`` on ``w^2 = g(t)`` with t of height <= H."""
    ints = square_scaled_poly(g)
    out: dict[TParam, int] = {}
    lead = Fraction(g[0])
    if lead == 0:
        out[INF] = 1
    elif is_rational_square(lead):
        out[INF] = 2
    for den in range(1, H + 1):
        for num in range(-H, H + 1):
            if math.gcd(num, den) != 1:
                continue
            v = sum(c * num ** (4 - k) * den**k for k, c in enumerate(ints))
            if v < 0:
                continue
            r = math.isqrt(v)
            if r * r != v:
                continue
            t = Fraction(num, den)
            if is_rational_square(poly_eval(list(g), t)):
                out[t] = 1 if v == 0 else 2
    return out


@dataclass
class Rank0Resolution:
    t_values: list
    points: int
    torsion: int
    rank_window: tuple[int, int]
    complete: bool


def resolve_H_rank0_overQ(H: QuotientCurve, height_bound: int = 60) -> Rank0Resolution:
    g = H.rational_quartic()
    E = quartic_jacobian(g)
    window = jacobian_rank_window(E)
    if window != (0, 0):
        raise ValueError(f"Jacobian rank window {window} is not closed at 0")
    tors = torsion_subgroup(E).order
    pts = quartic_points(g, height_bound)
    count = sum(pts.values())
    if count > tors:
        raise ArithmeticError("more points than the Jacobian allows")
    ts = sorted(pts, key=lambda t: (t == INF, t if t != INF else 0))
    return Rank0Resolution(ts, count, tors, window, complete=(count == tors and count > 0))


# ---------------------------------------------------------------------------
# local obstructions to twists of the full cover


def _cover_polys(M: QuarticModel, j1: int, j2: int) -> list[tuple[int, list]]:
    """The four quadratics with the twist index they carry (0: delta1, 1: delta2)."""
    f1, f2 = factor_pair(M, 1, j1), factor_pair(M, 2, j2)
    return [(0, list(f1.plus)), (0, list(f1.minus)), (1, list(f2.plus)), (1, list(f2.minus))]


def twist_locally_soluble(M: QuarticModel, j1: int, j2: int, delta: int, signs: tuple[str, str],
                          places: Sequence[int]) -> bool:
    """Local solvability of the quotient ``delta z^2 = p1s(t) p2s(t)`` over Q."""
    H = h_quotient(M.subset, M.J, j1, j2, delta, signs)
    g = square_scaled_poly(H.rational_quartic())
    return locally_soluble(g, places)


def quotient_places(H: QuotientCurve) -> list[int]:
    g = square_scaled_poly(H.rational_quartic())
    from sympy import Poly, Symbol, discriminant

    x = Symbol("x")
    disc = int(discriminant(Poly(g, x)))
    return [0] + sorted(set([2]) | set(prime_divisors(disc * g[0])))


@dataclass
class QuotientRow:
    delta: int
    signs: tuple[str, str]
    empty: Optional[bool]
    rank_window: Optional[tuple[int, int]]
    t_values: list
    ap: list
    note: str = ""

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "signs": "".join(self.signs),
            "empty": self.empty,
            "rank_window": list(self.rank_window) if self.rank_window else None,
            "t_values": [str(t) for t in self.t_values],
            "ap": [a if isinstance(a, str) else [a.q, a.a] for a in self.ap],
            "note": self.note,
        }


@dataclass
class CoveringDatum:
    subset: tuple
    J: tuple
    j1: int
    j2: int
    radicand: int
    twists: list[int]
    rows: list[QuotientRow] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return bool(self.rows) and all(r.empty or r.t_values for r in self.rows) and \
            all(r.empty is not None for r in self.rows) and \
            all(r.note in ("", "resolved") for r in self.rows)

    def progressions(self) -> list:
        return sorted({a for r in self.rows for a in r.ap if not isinstance(a, str)})

    def conclusion(self) -> str:
        if not self.resolved:
            return "inconclusive"
        return "z_positive_with_witnesses" if self.progressions() else "z_zero"

    def to_json(self) -> str:
        return json.dumps({
            "subset": list(self.subset), "J": list(self.J), "j": [self.j1, self.j2],
            "radicand": self.radicand, "twists": self.twists,
            "rows": [r.to_json() for r in self.rows], "conclusion": self.conclusion(),
        })


SIGNS = (("+", "+"), ("+", "-"), ("-", "+"), ("-", "-"))


def analyse_choice(I, J, j1: int, j2: int, height_bound: int = 60) -> CoveringDatum:
    """Try to determine every quotient of an admissible choice with ``L = Q``.

    For each twist the sign choices are tried in order: a locally insoluble
    quotient proves the twist carries no points; otherwise a rank-0 Jacobian
    lets the points be listed completely.
    """
    I, J = make_subset(I), make_subset(J)
    S = frak_S(I, J, j1, j2)
    quartic_model(I, J)  # validates I and J
    datum = CoveringDatum(I, J, j1, j2, S.radicand, S.elements)
    if S.radicand != 1:
        for d in S.elements:
            datum.rows.append(QuotientRow(d, ("+", "+"), None, None, [], [],
                                          "requires elliptic Chabauty over a quadratic field (out of scope)"))
        return datum
    for d in S.elements:
        row = None
        for signs in SIGNS:
            H = h_quotient(I, J, j1, j2, d, signs)
            places = quotient_places(H)
            g = square_scaled_poly(H.rational_quartic())
            if not locally_soluble(g, places):
                row = QuotientRow(d, signs, True, None, [], [], "resolved")
                break
        if row is None:
            for signs in SIGNS:
                H = h_quotient(I, J, j1, j2, d, signs)
                try:
                    res = resolve_H_rank0_overQ(H, height_bound)
                except (ValueError, ArithmeticError):
                    continue
                if not res.complete:
                    continue
                aps = []
                for t in res.t_values:
                    try:
                        aps.append(t_to_ap(I, J, t))
                    except ValueError:
                        # the quotient point does not lift to C_I
                        continue
                row = QuotientRow(d, signs, False, res.rank_window, res.t_values, aps, "resolved")
                break
        if row is None:
            row = QuotientRow(d, ("+", "+"), None, None, [], [], "undetermined")
        datum.rows.append(row)
    return datum


def resolve_subset(I, height_bound: int = 60) -> Optional[CoveringDatum]:
    """First admissible choice over Q that determines C_I(Q), if any."""
    for ch in covering_choices(I):
        if ch.radicand != 1:
            continue
        d = analyse_choice(I, ch.J, ch.j1, ch.j2, height_bound)
        if d.resolved:
            return d
    return None

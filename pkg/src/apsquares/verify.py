"""Golden values and randomized property checks, run as one battery."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .ap import ArithProgression, search_aps, special_positions, squares_in_ap
from .arith import is_prime, squarefree_part
from .covering import analyse_choice, covering_choices, factor_pair, frak_S, quartic_model, t_to_ap
from .curves import parametric_square, remark_ap, symmetric_curve, torsion_class_symmetric
from .descent import (
    bruteforce_soluble,
    certify_z_zero,
    descent_image,
    full_selmer,
    point_pair_image,
    two_isogeny_selmer,
    qp_soluble,
)
from .elliptic import FactoredCurve, root_number, torsion_subgroup
from .pell import ap_intersection, ej48_family
from .pipeline import compute_q_table, verify_table3
from .subsets import primitive_classes


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} ({self.seconds:.1f}s){': ' + self.detail if self.detail else ''}"


CHECKS: list[tuple[str, Callable[[random.Random], Optional[str]]]] = []


def check(name: str):
    """Register a check; it returns ``None`` on success or a failure message."""
    def deco(fn):
        CHECKS.append((name, fn))
        return fn
    return deco


# ---------------------------------------------------------------------------
# helpers


def _random_curve(rng: random.Random) -> tuple[FactoredCurve, list]:
    """A curve ``y^2 = x(x - a)(x - b)`` with a few non-torsion points."""
    while True:
        a, b = rng.sample(range(-30, 31), 2)
        if 0 in (a, b):
            continue
        E = FactoredCurve(0, a, b)
        tors = set(E.torsion_points())
        pts = [P for P in E.point_search(12) if P not in tors]
        if pts:
            return E, pts


def _random_point(E, pts, rng):
    P = None
    for Q in rng.sample(pts, min(2, len(pts))):
        P = E.add(P, E.mul(rng.randint(-2, 2), Q))
    return P


def _reduce(P, p):
    if P is None:
        return None
    x, y = P
    if x.denominator % p == 0:
        return None
    return (x.numerator * pow(x.denominator, -1, p) % p, y.numerator * pow(y.denominator, -1, p) % p)


def _add_mod(E, P, Q, p):
    a2, a4 = int(E.a2) % p, int(E.a4) % p
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - a2 - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _good_primes(E, count):
    D = E.discriminant()
    out, p = [], 5
    while len(out) < count:
        if is_prime(p) and D.numerator % p and D.denominator % p:
            out.append(p)
        p += 2
    return out


# ---------------------------------------------------------------------------
# golden values


@check("Q(N) table to N=11")
def _qn(rng):
    rows = compute_q_table(11)
    got = {r.N: (r.q_lower, r.status) for r in rows}
    want = {4: 3, 5: 4, 6: 4, 7: 4, 8: 5, 9: 5, 10: 5, 11: 5}
    bad = [N for N, v in want.items() if got[N] != (v, "proved")]
    return f"rows {bad} differ" if bad else None


@check("five z_zero 4-classes in {0..6}")
def _firstcases(rng):
    zero = {(0, 1, 2, 3), (0, 1, 3, 4), (0, 1, 4, 5), (0, 2, 3, 5), (0, 1, 5, 6)}
    for I in primitive_classes(7, 4):
        c = certify_z_zero(I)
        if I in zero:
            if not (c.conclusion == "z_zero" and c.rank_upper == 0 and c.torsion == "Z/2+Z/4"):
                return f"{I}: {c.conclusion} {c.rank_upper} {c.torsion}"
        elif (c.rank_lower, c.rank_upper) != (1, 1):
            return f"{I}: window {(c.rank_lower, c.rank_upper)}"
    return None


@check("explicit progressions for 4-subsets")
def _remark(rng):
    want = {
        (0, 1, 2, 4): (120, 49), (0, 1, 2, 5): (24, 1), (0, 1, 3, 5): (168, 121),
        (0, 1, 2, 6): (840, 1), (0, 1, 3, 6): (8, 1), (0, 2, 3, 6): (280, 529),
        (0, 1, 4, 6): (24, 25),
    }
    for I, qa in want.items():
        ap = remark_ap(I)
        if (None if ap is None else (ap.q, ap.a)) != qa:
            return f"{I}: {ap}"
    return None


@check("pentagonal positions of (24,1)")
def _pentagonal(rng):
    got = list(squares_in_ap(24, 1, 10**6).positions)
    if got != special_positions("pentagonal", 10**6):
        return "position lists differ"
    if len(squares_in_ap(24, 1, 52)) != 12:
        return "Q(52;24,1) != 12"
    return None


@check("covering anchors")
def _covering(rng):
    if sorted(frak_S((0, 1, 2, 4, 7), (1, 4, 7), 2, 1).elements) != [1, 2, 3, 6]:
        return "frak_S for {0,1,2,4,7}"
    M = quartic_model((0, 1, 2, 4, 7), (1, 4, 7))
    fp = factor_pair(M, 1, 2)
    if (fp.pretty("+"), fp.pretty("-")) != ("t^2 - 10/3 t + 2", "t^2 - 6 t + 2"):
        return "factor quadratics"
    if sorted(frak_S((0, 1, 2, 5, 7), (2, 5, 7), 3, 2).elements) != [-10, -5, -2, -1, 1, 2, 5, 10]:
        return "frak_S for {0,1,2,5,7}"
    for I, J, t, qa in [((0, 1, 2, 5, 7), (2, 5, 7), Fraction(3), (24, 1)),
                        ((0, 1, 2, 5, 7), (2, 5, 7), Fraction(5, 6), (24, 1)),
                        ((0, 1, 3, 7, 8), (1, 3, 7), Fraction(4), (120, 1))]:
        if t_to_ap(I, J, t) != ArithProgression(*qa):
            return f"t_to_ap{I} at t={t}"
    return None


@check("rank-0 quotients for {0,1,4,7,8}")
def _rank0(rng):
    d = analyse_choice((0, 1, 4, 7, 8), (1, 4, 7), 2, 1)
    rows = {(r.delta, "".join(r.signs)): sorted(map(str, r.t_values)) for r in d.rows}
    if rows.get((1, "+-")) != ["1", "inf"] or rows.get((-3, "++")) != ["0", "2"]:
        return f"rows {rows}"
    return None if d.conclusion() == "z_zero" else d.conclusion()


@check("witnesses for {0,13,24,33,49} and four-progression table")
def _table3(rng):
    found = search_aps((0, 13, 24, 33, 49), 100)
    if not {ArithProgression(24, 49), ArithProgression(-1, 49)} <= set(found):
        return f"search found {found}"
    rep = verify_table3()
    return None if rep.passed == 16 else rep.format()


@check("Pell intersections")
def _pell(rng):
    if ej48_family(2) != [0, 8, 120, 1680, 23408]:
        return "ej48_family(2)"
    if len(ap_intersection(1, 1, 3, 1, 10)) != 10:
        return "ap_intersection(1,1,3,1,10)"
    return None


# ---------------------------------------------------------------------------
# properties


@check("group law: associativity, commutativity, inverses")
def _group(rng):
    for _ in range(20):
        E, pts = _random_curve(rng)
        for _ in range(50):
            P, Q, R = (_random_point(E, pts, rng) for _ in range(3))
            if E.add(P, Q) != E.add(Q, P):
                return f"commutativity on {E}"
            if E.add(E.add(P, Q), R) != E.add(P, E.add(Q, R)):
                return f"associativity on {E}"
            if E.add(P, E.neg(P)) is not None:
                return f"inverse on {E}"
    return None


@check("group law: reduction mod good primes is a homomorphism")
def _reduction(rng):
    for _ in range(10):
        E, pts = _random_curve(rng)
        for p in _good_primes(E, 5):
            for _ in range(20):
                P, Q = _random_point(E, pts, rng), _random_point(E, pts, rng)
                if _reduce(E.add(P, Q), p) != _add_mod(E, _reduce(P, p), _reduce(Q, p), p):
                    return f"{E} mod {p}"
    return None


@check("torsion: order divides 16 and contains E[2]")
def _torsion(rng):
    for _ in range(30):
        a, b = rng.sample(range(-40, 41), 2)
        if 0 in (a, b):
            continue
        E = FactoredCurve(0, a, b)
        T = torsion_subgroup(E)
        if 16 % T.order or T.invariants[0] != 2:
            return f"{E}: {T.label()}"
        for gen, n in zip(T.generators, T.invariants if len(T.generators) == 2 else T.invariants[1:]):
            if E.mul(n, gen) is not None or E.order(gen) != n:
                return f"{E}: generator order"
    for n1 in range(1, 31):
        for n2 in range(n1 + 1, 31):
            if Fraction(n1, n2).denominator != n2:
                continue
            if torsion_class_symmetric(n1, n2) != torsion_subgroup(symmetric_curve(Fraction(n2, n1))).label():
                return f"symmetric torsion ({n1},{n2})"
    return None


@check("descent map is a homomorphism")
def _descent(rng):
    for _ in range(10):
        E, pts = _random_curve(rng)
        T = E.two_torsion()[0]
        for _ in range(20):
            P, Q = _random_point(E, pts, rng), _random_point(E, pts, rng)
            a, b, c = descent_image(E, T, P), descent_image(E, T, Q), descent_image(E, T, E.add(P, Q))
            if squarefree_part(a * b * c) != 1:
                return f"{E} at {P}, {Q}"
    return None


@check("Selmer groups are closed and contain point images")
def _selmer(rng):
    for _ in range(10):
        E, pts = _random_curve(rng)
        for T in E.two_torsion():
            S = two_isogeny_selmer(E, T)
            if not S.is_closed():
                return f"{E}: isogeny Selmer not closed"
            for P in pts + E.torsion_points():
                if descent_image(E, T, P) not in S:
                    return f"{E}: image of {P} outside Selmer"
        F = full_selmer(E)
        for P in pts + E.torsion_points():
            if point_pair_image(E, P) not in F:
                return f"{E}: pair image of {P} outside Selmer"
    return None


@check("covering factorization identities")
def _factors(rng):
    for I in [(0, 1, 2, 4, 7), (0, 1, 3, 7, 8), (0, 1, 2, 6, 10), (0, 2, 5, 7, 11)]:
        for ch in covering_choices(I):
            M = quartic_model(I, ch.J)
            factor_pair(M, 1, ch.j1)  # raises when the product identity fails
            factor_pair(M, 2, ch.j2)
    return None


@check("local solubility agrees with brute force mod p^k")
def _local(rng):
    for _ in range(300):
        g = [rng.randint(-30, 30) for _ in range(5)]
        if g[0] == 0:
            continue
        p = rng.choice([2, 3, 5, 7])
        brute = bruteforce_soluble(g, p, 6 if p == 2 else 4)
        if brute is not None and brute != qp_soluble(g, p):
            return f"{g} at {p}"
    return None


@check("root number is +1 on the rank-0 symmetric pairs")
def _parity(rng):
    bad = [ab for ab in [(1, 2), (1, 3), (1, 4), (2, 3), (1, 5)] if root_number(*ab) != 1]
    return f"{bad}" if bad else None


@check("parametric squares on random parameters")
def _param(rng):
    done = 0
    while done < 100:
        z1 = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        z2 = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        try:
            t, x, y = parametric_square(z1, z2)
        except ValueError:
            continue
        if not symmetric_curve(t).contains((x, y)):
            return f"({z1}, {z2})"
        done += 1
    return None


def run_all(seed: int = 0, only: Optional[str] = None, echo: Optional[Callable[[str], None]] = None) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        t0 = time.perf_counter()
        try:
            msg = fn(rng)
        except Exception as exc:  # a crash is a failure, reported with its type
            msg = f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, msg is None, msg or "", time.perf_counter() - t0)
        out.append(res)
        if echo:
            echo(res.line())
    return out

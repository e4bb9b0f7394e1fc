"""Exact arithmetic on elliptic curves ``y^2 = x^3 + a2 x^2 + a4 x + a6`` over Q.

Points are ``(x, y)`` tuples of Fractions; ``None`` is the point at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .arith import (
    factor,
    is_prime,
    legendre,
    rational_roots,
    rational_sqrt,
)

O = None  # point at infinity


class NotOnCurve(ValueError):
    pass


class Curve:
    """Weierstrass curve ``y^2 = x^3 + a2*x^2 + a4*x + a6``."""

    def __init__(self, a2, a4, a6):
        self.a2, self.a4, self.a6 = Fraction(a2), Fraction(a4), Fraction(a6)
        if self.discriminant() == 0:
            raise ValueError("singular curve")

    # -- basic data -------------------------------------------------------
    def f(self, x: Fraction) -> Fraction:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def discriminant(self) -> Fraction:
        a, b, c = self.a2, self.a4, self.a6
        return 16 * (a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c)

    def __repr__(self):
        return f"Curve(a2={self.a2}, a4={self.a4}, a6={self.a6})"

    def __eq__(self, other):
        return isinstance(other, Curve) and (self.a2, self.a4, self.a6) == (other.a2, other.a4, other.a6)

    def __hash__(self):
        return hash((self.a2, self.a4, self.a6))

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.f(x)

    def point(self, x, y):
        P = (Fraction(x), Fraction(y))
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    # -- group law ----------------------------------------------------------
    def neg(self, P):
        return None if P is None else (P[0], -P[1])

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.a2 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return (x3, y3)

    def checked_add(self, P, Q):
        for R in (P, Q):
            if not self.contains(R):
                raise NotOnCurve(f"{R} is not on {self}")
        return self.add(P, Q)

    def double(self, P):
        return self.add(P, P)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        R, A = None, P
        while n:
            if n & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            n >>= 1
        return R

    def order(self, P, limit: int = 16) -> Optional[int]:
        """Exact order if it is at most ``limit``, else ``None``."""
        R = P
        for n in range(1, limit + 1):
            if R is None:
                return n
            R = self.add(R, P)
        return None

    # -- integral model and reduction ----------------------------------------
    def scale_factor(self) -> int:
        """Smallest ``u`` with ``a2 u^2, a4 u^4, a6 u^6`` integral."""
        u = 1
        for c, w in ((self.a2, 2), (self.a4, 4), (self.a6, 6)):
            d = c.denominator
            for p, e in factor(d).items() if d > 1 else ():
                need = -(-e // w)
                u *= p ** max(0, need - _vp(u, p))
        return u

    def integral_model(self) -> tuple["Curve", int]:
        u = self.scale_factor()
        return Curve(self.a2 * u**2, self.a4 * u**4, self.a6 * u**6), u

    def count_mod_p(self, p: int) -> Optional[int]:
        """``#E(F_p)`` for an odd prime of good reduction of the integral model, else None."""
        E, _ = self.integral_model()
        if p == 2 or int(E.discriminant()) % p == 0:
            return None
        a2, a4, a6 = int(E.a2) % p, int(E.a4) % p, int(E.a6) % p
        total = 1
        for x in range(p):
            total += 1 + legendre(((x + a2) * x + a4) * x + a6, p)
        return total

    def torsion_bound(self, nprimes: int = 8) -> int:
        """gcd of ``#E(F_p)`` over several good odd primes; torsion order divides it."""
        g, used, p = 0, 0, 3
        while used < nprimes and p < 2000:
            if is_prime(p):
                n = self.count_mod_p(p)
                if n is not None:
                    g = math.gcd(g, n)
                    used += 1
            p += 2
        return g

    # -- torsion via Nagell-Lutz --------------------------------------------
    def torsion_points_nagell_lutz(self) -> list:
        """All rational torsion points: integral on the integral model with
        ``y = 0`` or ``y^2 | disc``; every candidate's order is checked."""
        E, u = self.integral_model()
        A, B, C = int(E.a2), int(E.a4), int(E.a6)
        D = abs(int(E.discriminant()) // 16)
        ys = {0}
        fac = factor(D)
        primes = list(fac.items())

        def rec(i, y):
            if i == len(primes):
                ys.add(y)
                return
            p, e = primes[i]
            for k in range(e // 2 + 1):
                rec(i + 1, y * p**k)

        rec(0, 1)
        pts = [None]
        for y in sorted(ys):
            for X in rational_roots([1, A, B, C - y * y]):
                if X.denominator != 1:
                    continue
                for Y in {y, -y}:
                    P = (Fraction(X), Fraction(Y))
                    if E.order(P, 12) is not None:
                        pts.append((P[0] / u**2, P[1] / u**3))
        return pts

    # -- naive search --------------------------------------------------------
    def point_search(self, H: int) -> list:
        """Affine points with ``x = num/den``, ``|num|, |den| <= H``."""
        L = math.lcm(self.a2.denominator, self.a4.denominator, self.a6.denominator)
        A2, A4, A6 = int(self.a2 * L), int(self.a4 * L), int(self.a6 * L)
        out = []
        for den in range(1, H + 1):
            d2, d3 = den * den, den**3
            for num in range(-H, H + 1):
                if math.gcd(num, den) != 1:
                    continue
                P = L * num**3 + A2 * num * num * den + A4 * num * d2 + A6 * d3
                s = P * L * den
                if s < 0:
                    continue
                r = math.isqrt(s)
                if r * r != s:
                    continue
                x = Fraction(num, den)
                y = rational_sqrt(self.f(x))
                out.append((x, y))
                if y:
                    out.append((x, -y))
        return out


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FactoredCurve(Curve):
    """``y^2 = (x - e1)(x - e2)(x - e3)`` with distinct rational roots."""

    def __init__(self, e1, e2, e3):
        self.roots = tuple(Fraction(e) for e in (e1, e2, e3))
        r1, r2, r3 = self.roots
        if len(set(self.roots)) != 3:
            raise ValueError("roots must be distinct")
        super().__init__(-(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3)

    def __repr__(self):
        return f"FactoredCurve{tuple(str(r) for r in self.roots)}"

    def pretty(self) -> str:
        parts = []
        for r in self.roots:
            if r == 0:
                parts.append("x")
            elif r > 0:
                parts.append(f"(x - {r})")
            else:
                parts.append(f"(x + {-r})")
        return "y^2 = " + "".join(parts)

    def two_torsion(self) -> list:
        return [(r, Fraction(0)) for r in self.roots]

    def halves(self, P) -> list:
        """Rational points ``Q`` with ``2Q = P``."""
        if P is None:
            return [None] + self.two_torsion()
        x0, _ = P
        rs = [rational_sqrt(x0 - e) for e in self.roots]
        if any(r is None for r in rs):
            return []
        found = set()
        for s in product((1, -1), repeat=3):
            r1, r2, r3 = (si * ri for si, ri in zip(s, rs))
            x = x0 + r1 * r2 + r1 * r3 + r2 * r3
            y = rational_sqrt(self.f(x))
            if y is None:
                continue
            for Y in (y, -y):
                Q = (x, Y)
                if self.double(Q) == P:
                    found.add(Q)
        return list(found)

    def torsion_points(self) -> list:
        """Torsion via repeated halving (2-primary part) plus 3-division roots."""
        two = [None] + self.two_torsion()
        seen = set(two)
        queue = list(two)
        while queue:
            P = queue.pop()
            for Q in self.halves(P):
                if Q not in seen:
                    seen.add(Q)
                    queue.append(Q)
            if len(seen) > 16:
                raise ArithmeticError("2-primary torsion exceeds Mazur bound")
        three = [None]
        a2, a4, a6 = self.a2, self.a4, self.a6
        psi3 = [3, 4 * a2, 6 * a4, 12 * a6, 4 * a2 * a6 - a4 * a4]
        for x in rational_roots(psi3):
            y = rational_sqrt(self.f(x))
            if y is not None and y != 0:
                three += [(x, y), (x, -y)]
        pts = {self.add(P, T) for P in seen for T in three}
        return list(pts)


@dataclass
class TorsionStructure:
    invariants: tuple[int, int]
    generators: list
    points: list = field(repr=False, default_factory=list)

    @property
    def order(self) -> int:
        return self.invariants[0] * self.invariants[1]

    def label(self) -> str:
        d1, d2 = self.invariants
        if d1 == 1:
            return f"Z/{d2}"
        return f"Z/{d1}+Z/{d2}"


def torsion_structure(E: Curve, points: Optional[list] = None) -> TorsionStructure:
    """Group structure of a finite set of torsion points (closed under addition)."""
    if points is None:
        points = E.torsion_points() if isinstance(E, FactoredCurve) else E.torsion_points_nagell_lutz()
    n = len(points)
    orders = {P: E.order(P, 16) for P in points}
    if any(o is None for o in orders.values()):
        raise ArithmeticError("non-torsion point in torsion set")
    m = max(orders.values())
    d1 = n // m
    gen = next(P for P in points if orders[P] == m)
    gens = [gen]
    if d1 > 1:
        cyc = set()
        R = None
        for _ in range(m):
            cyc.add(R)
            R = E.add(R, gen)
        other = next(P for P in points if orders[P] == d1 and P not in cyc)
        gens = [other, gen]
    for P, k in zip(gens, (d1, m) if d1 > 1 else (m,)):
        if E.mul(k, P) is not None:
            raise ArithmeticError("generator order check failed")
    return TorsionStructure((d1, m), gens, points)


def torsion_subgroup(E: Curve) -> TorsionStructure:
    ts = torsion_structure(E)
    bound = E.torsion_bound()
    if bound % ts.order:
        raise ArithmeticError(f"torsion order {ts.order} does not divide reduction bound {bound}")
    return ts


# ---------------------------------------------------------------------------
# root number of y^2 = x(x + a^2)(x + b^2)

def _odd_prime_count(n: int) -> int:
    return sum(1 for p in factor(n) if p != 2) if n > 1 else 0


def root_number(a: int, b: int) -> int:
    """Root number of ``y^2 = x(x+a^2)(x+b^2)`` for coprime ``0 < a < b``."""
    if not (0 < a < b) or math.gcd(a, b) != 1:
        raise ValueError("need coprime integers 0 < a < b")
    ab = a * b
    diff = b * b - a * a
    alpha = _odd_prime_count(ab) + sum(1 for p in factor(diff) if p % 4 == 1)
    if ab % 8 == 4 or (ab % 2 == 1 and (diff // 8) % 2 == 1):
        mu2 = 0
    else:
        mu2 = 1
    return -1 if (alpha - mu2) % 2 == 0 else 1


def cohn_predicts_infinite(n: int) -> bool:
    """Parity prediction that ``{0, 2, n, n+2}`` carries infinitely many progressions."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    return root_number(2, n) == -1


def curve_ab(a: int, b: int) -> FactoredCurve:
    return FactoredCurve(0, -a * a, -b * b)

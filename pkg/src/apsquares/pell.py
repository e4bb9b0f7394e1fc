"""Pell-type equations ``x^2 - D y^2 = c`` and the positions shared by two
progressions ``q1*n + a1^2`` and ``q2*n + a2^2``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .arith import is_square_int


def fundamental_unit(D: int) -> tuple[int, int]:
    """Smallest ``(u, v)``, ``v > 0``, with ``u^2 - D v^2 = 1`` (continued fraction of sqrt D)."""
    if D <= 0 or is_square_int(D):
        raise ValueError("D must be a positive non-square")
    a0 = math.isqrt(D)
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


@dataclass(frozen=True)
class PellOrbit:
    D: int
    c: int
    unit: tuple[int, int]
    base: tuple[tuple[int, int], ...]

    def solutions(self, x_max: int) -> list[tuple[int, int]]:
        """Every solution with ``0 <= x <= x_max``, ``y >= 0``, ascending."""
        u0, v0 = self.unit
        found = set()
        for x, y in self.base:
            # (x, y) * unit^k for k >= 0; negative powers are conjugates of
            # these.  |x_k| is convex in k, so stop once it is large and growing.
            while True:
                if abs(x) <= x_max:
                    found.add((abs(x), abs(y)))
                nx, ny = u0 * x + self.D * v0 * y, v0 * x + u0 * y
                if abs(nx) > x_max and abs(nx) >= abs(x):
                    break
                x, y = nx, ny
        return sorted(found)


def pell_orbits(D: int, c: int) -> PellOrbit:
    """Fundamental solutions of ``x^2 - D y^2 = c`` by the classical bounds on y."""
    u0, v0 = fundamental_unit(D)
    if c > 0:
        lo, hi = 0, math.isqrt(v0 * v0 * c // (2 * (u0 + 1))) + 1
    else:
        lo = math.isqrt(-c // D) if D else 0
        hi = math.isqrt(v0 * v0 * (-c) // (2 * (u0 - 1))) + 1
    base = []
    for y in range(lo, hi + 1):
        t = c + D * y * y
        if t >= 0 and is_square_int(t):
            x = math.isqrt(t)
            base += [(x, y), (x, -y)]
    return PellOrbit(D, c, (u0, v0), tuple(sorted(set(base))))


def iter_pell(D: int, c: int) -> Iterator[tuple[int, int]]:
    """All non-negative solutions in increasing x (infinite when any exist)."""
    if c == 0:
        yield (0, 0)
        return
    orbit = pell_orbits(D, c)
    if not orbit.base:
        return
    emitted = 0
    bound = max(16, max(abs(x) for x, _ in orbit.base) + 1)
    while True:
        sols = orbit.solutions(bound)
        for s in sols[emitted:]:
            yield s
        emitted = len(sols)
        bound *= 16


def pell_solve(D: int, c: int, count: int) -> list[tuple[int, int]]:
    if D <= 0 or is_square_int(D):
        raise ValueError("D must be a positive non-square")
    out = []
    for s in iter_pell(D, c):
        out.append(s)
        if len(out) == count:
            break
    return out


def _brute_intersection(q1: int, a1: int, q2: int, a2: int, count: int, bound: int) -> list[int]:
    out = []
    for n in range(bound):
        u, w = q1 * n + a1 * a1, q2 * n + a2 * a2
        if u >= 0 and w >= 0 and is_square_int(u) and is_square_int(w):
            out.append(n)
            if len(out) == count:
                break
    return out


def ap_intersection(q1: int, a1: int, q2: int, a2: int, count: int, bound: int = 10**6) -> list[int]:
    """First ``count`` positions ``n >= 0`` in ``S(q1, a1^2)`` and ``S(q2, a2^2)``.

    With ``u^2 = q1 n + a1^2`` and ``w^2 = q2 n + a2^2``, ``X = q2 u`` solves
    ``X^2 - q1 q2 w^2 = q2 (q2 a1^2 - q1 a2^2)``.  When ``q1 q2`` is not a
    positive non-square a direct scan of ``n < bound`` is used instead.
    """
    if q1 == 0 or q2 == 0:
        raise ValueError("q1, q2 must be non-zero")
    D = q1 * q2
    if q1 < 0 or q2 < 0 or is_square_int(D):
        return _brute_intersection(q1, a1, q2, a2, count, bound)
    c = q2 * (q2 * a1 * a1 - q1 * a2 * a2)
    out: list[int] = []
    if c == 0:
        return _brute_intersection(q1, a1, q2, a2, count, bound)
    for X, _ in iter_pell(D, c):
        if X % q2:
            continue
        u = X // q2
        num = u * u - a1 * a1
        if num < 0 or num % q1:
            continue
        n = num // q1
        if not is_square_int(q2 * n + a2 * a2):
            raise ArithmeticError("Pell solution does not give a common position")
        if not out or n > out[-1]:
            out.append(n)
        if len(out) == count:
            break
        if X > 10**400:
            raise RuntimeError("Pell orbit search exceeded size limit")
    return out


def ej48_family(s: int) -> list[int]:
    """Five positions common to ``S(s-1, 1)`` and ``S(s+1, 1)``."""
    if s < 2:
        raise ValueError("s >= 2 required")
    vals = [
        0,
        4 * s,
        4 * s * (4 * s * s - 1),
        8 * s * (8 * s**4 - 6 * s * s + 1),
        8 * s * (32 * s**6 - 40 * s**4 + 14 * s * s - 1),
    ]
    for n in vals:
        if not (is_square_int((s - 1) * n + 1) and is_square_int((s + 1) * n + 1)):
            raise ArithmeticError(f"{n} is not a common position for s={s}")
    return vals

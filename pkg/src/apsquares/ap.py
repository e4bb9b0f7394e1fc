"""Arithmetic progressions ``q*n + a`` and where they take square values."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .arith import is_square_int, squarefree_decompose
from .subsets import Subset, make_subset


@dataclass(frozen=True, order=True)
class ArithProgression:
    """Normalized progression: ``q != 0`` and ``gcd(q, a)`` squarefree."""

    q: int
    a: int

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be non-zero")

    @classmethod
    def normalized(cls, q, a) -> "ArithProgression":
        """Scale rational ``(q, a)`` by a square so it is integral with squarefree gcd."""
        q, a = Fraction(q), Fraction(a)
        if q == 0:
            raise ValueError("q must be non-zero")
        den = math.lcm(q.denominator, a.denominator)
        qi, ai = int(q * den * den), int(a * den * den)
        g = math.gcd(qi, ai)
        _, f = squarefree_decompose(g)
        return cls(qi // (f * f), ai // (f * f))

    def term(self, n: int) -> int:
        return self.q * n + self.a

    def squares_at(self, positions: Iterable[int]) -> bool:
        return all(is_square_int(self.term(n)) for n in positions)

    def to_json(self) -> dict:
        return {"q": self.q, "a": self.a}

    def __str__(self):
        return f"({self.q},{self.a})"


@dataclass(frozen=True)
class SquarePositions:
    positions: Subset | tuple
    source: ArithProgression
    window: int

    def __len__(self):
        return len(self.positions)


def normalize_pair(q: int, a: int) -> tuple[int, int]:
    """Divide ``(q, a)`` by the largest square dividing ``gcd(q, a)``."""
    ap = ArithProgression.normalized(q, a)
    return ap.q, ap.a


def squares_in_ap(q: int, a: int, N: int) -> SquarePositions:
    """Positions ``i < N`` where ``q*i + a`` is a perfect square."""
    if q == 0:
        raise ValueError("q must be non-zero")
    if N < 1:
        raise ValueError("N >= 1 required")
    if abs(q) * N + abs(a) < 2**50:
        i = np.arange(N, dtype=np.int64)
        v = q * i + a
        ok = v >= 0
        r = np.zeros_like(v)
        r[ok] = np.floor(np.sqrt(v[ok].astype(np.float64))).astype(np.int64)
        # float sqrt can be off by one near perfect squares
        hit = ok & ((r * r == v) | ((r + 1) * (r + 1) == v) | ((r - 1) * (r - 1) == v))
        pos = tuple(int(x) for x in np.nonzero(hit)[0])
    else:
        pos = tuple(i for i in range(N) if is_square_int(q * i + a))
    return SquarePositions(pos, ArithProgression(q, a), N)


def count_squares(q: int, a: int, N: int) -> int:
    """``Q(N; q, a)``."""
    return len(squares_in_ap(q, a, N))


def special_positions(kind: str, bound: int) -> list[int]:
    """Generalized pentagonal numbers ``k(3k-1)/2`` (k in Z) or triangular
    numbers ``k(k+1)/2`` (k >= 0) below ``bound``."""
    if bound < 1:
        raise ValueError("bound >= 1 required")
    out = []
    if kind == "pentagonal":
        k = 0
        while True:
            vals = [k * (3 * k - 1) // 2] if k == 0 else [k * (3 * k - 1) // 2, k * (3 * k + 1) // 2]
            small = [v for v in vals if v < bound]
            out.extend(small)
            if not small:
                break
            k += 1
    elif kind == "triangular":
        k = 0
        while k * (k + 1) // 2 < bound:
            out.append(k * (k + 1) // 2)
            k += 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return sorted(out)


def _isqrt_exact_mask(v: np.ndarray) -> np.ndarray:
    ok = v >= 0
    r = np.zeros_like(v)
    r[ok] = np.floor(np.sqrt(v[ok].astype(np.float64))).astype(np.int64)
    return ok & ((r * r == v) | ((r + 1) * (r + 1) == v) | ((r - 1) * (r - 1) == v))


def search_aps(I: Sequence[int], bound: int) -> list[ArithProgression]:
    """Every normalized ``(q, a)`` with ``max(|q|, |a|) <= bound`` taking
    square values at all positions of ``I``.

    Complete inside the box: for each square value ``x0**2 = a + n0*q`` the
    whole q-range is scanned at once.
    """
    I = make_subset(I)
    if len(I) < 2 or bound < 1:
        raise ValueError("need |I| >= 2 and bound >= 1")
    n0 = I[0]
    rest = [n - n0 for n in I[1:]]
    if (abs(n0) + max(rest) + 1) * bound * 2 >= 2**50:
        raise ValueError("search box too large for int64 scan")
    q = np.arange(-bound, bound + 1, dtype=np.int64)
    q = q[q != 0]
    found = set()
    x0_max = math.isqrt(n0 * bound + bound)
    for x0 in range(x0_max + 1):
        base = x0 * x0  # value at n0
        a = base - n0 * q
        keep = np.abs(a) <= bound
        if not keep.any():
            continue
        qq = q[keep]
        mask = np.ones(qq.shape, dtype=bool)
        for d in rest:
            mask &= _isqrt_exact_mask(base + d * qq)
            if not mask.any():
                break
        for qv in qq[mask]:
            qv = int(qv)
            av = base - n0 * qv
            g = math.gcd(qv, av)
            if squarefree_decompose(g)[1] != 1:
                continue
            ap = ArithProgression(qv, av)
            if ap.squares_at(I):
                found.add(ap)
    return sorted(found, key=lambda p: (abs(p.q) + abs(p.a), p.q, p.a))


def ap_to_point(I: Sequence[int], ap: ArithProgression) -> tuple[int, ...]:
    """Projective point ``[x_0 : ... : x_k]`` with ``x_i**2 = a + n_i*q``."""
    I = make_subset(I)
    coords = []
    for n in I:
        v = ap.term(n)
        if not is_square_int(v):
            raise ValueError(f"{ap} is not a square at position {n}")
        coords.append(math.isqrt(v))
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    return tuple(c // g for c in coords) if g else tuple(coords)


def is_trivial_point(point: Sequence) -> bool:
    sq = [Fraction(x) ** 2 for x in point]
    return all(s == sq[0] for s in sq)


def point_to_ap(I: Sequence[int], point: Sequence) -> ArithProgression:
    """Progression attached to a non-trivial point of ``C_I``.

    With ``x_i**2 = a + n_i*q``: ``q = (x_1**2 - x_0**2)/(n_1 - n_0)`` and
    ``a = x_0**2 - n_0*q``; the result is checked at every position.
    """
    I = make_subset(I)
    if len(point) != len(I):
        raise ValueError("point dimension does not match subset")
    if is_trivial_point(point):
        raise ValueError("trivial point has no attached progression")
    sq = [Fraction(x) ** 2 for x in point]
    q = (sq[1] - sq[0]) / (I[1] - I[0])
    a = sq[0] - I[0] * q
    for n, s in zip(I, sq):
        if a + n * q != s:
            raise ValueError("point does not lie on C_I")
    ap = ArithProgression.normalized(q, a)
    if not ap.squares_at(I):
        raise ValueError("reconstructed progression fails validation")
    return ap


def best_in_window(aps: Iterable[ArithProgression], N: int) -> tuple[int, Optional[ArithProgression]]:
    best, arg = 0, None
    for ap in aps:
        c = count_squares(ap.q, ap.a, N)
        if c > best:
            best, arg = c, ap
    return best, arg

"""Exact integer / rational primitives shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction`; integers are Python ints.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

import mpmath

Rational = Union[int, Fraction]

TRIAL_LIMIT = 10**4  # beyond this, Miller-Rabin plus Pollard-Brent


class FactorizationError(ArithmeticError):
    """Raised when a cofactor cannot be split by the bounded methods available."""


def Q(x, d=1) -> Fraction:
    return Fraction(x, d) if d != 1 else Fraction(x)


# --------------------------------------------------------------------------
# primality and factoring

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (correct for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _perfect_power(n: int) -> Optional[tuple[int, int]]:
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k)) if n < 2**1000 else int(mpmath.root(n, k))
        for c in (r - 1, r, r + 1):
            if c > 1 and c**k == n:
                return c, k
    return None


def _pollard_brent(n: int, max_iter: int = 200000) -> Optional[int]:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    for _ in range(8):
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        it = 0
        while g == 1 and it < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            it += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _split_cofactor(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    pp = _perfect_power(n)
    if pp is not None:
        base, k = pp
        sub: dict[int, int] = {}
        _split_cofactor(base, sub)
        for p, e in sub.items():
            out[p] = out.get(p, 0) + e * k
        return
    d = _pollard_brent(n)
    if d is None:
        raise FactorizationError(f"could not factor cofactor {n}")
    _split_cofactor(d, out)
    _split_cofactor(n // d, out)


@lru_cache(maxsize=1 << 16)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 7, 4
    # wheel mod 6
    while p * p <= n and p <= TRIAL_LIMIT:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        if p * p > n:
            out[n] = out.get(n, 0) + 1
        else:
            _split_cofactor(n, out)
    return tuple(sorted(out.items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    return dict(_factor_cached(n))


def prime_divisors(n: Rational) -> list[int]:
    """Primes dividing the numerator or denominator of a non-zero rational."""
    n = Fraction(n)
    ps = set(factor(n.numerator)) | set(factor(n.denominator))
    return sorted(ps)


# --------------------------------------------------------------------------
# squares and square classes

def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s * f**2`` with ``s`` squarefree carrying the sign of ``n``."""
    n = int(n)
    if n == 0:
        raise ValueError("squarefree_decompose: zero has no squarefree part")
    s, f = (1 if n > 0 else -1), 1
    for p, e in factor(n).items():
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f


def squarefree_part(r: Rational) -> int:
    """Squarefree integer in the class of ``r`` in Q*/Q*^2."""
    r = Fraction(r)
    return squarefree_decompose(r.numerator * r.denominator)[0]


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def rational_sqrt(r: Rational) -> Optional[Fraction]:
    """Non-negative rational square root of ``r``, or ``None``."""
    r = Fraction(r)
    if r < 0:
        return None
    a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def is_rational_square(r: Rational) -> bool:
    return rational_sqrt(r) is not None


def padic_valuation(p: int, r: Rational) -> int:
    r = Fraction(r)
    if r == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    n, d = r.numerator, r.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def vp_int(p: int, n: int) -> int:
    """Valuation of a non-zero integer (no Fraction overhead)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_padic_square(r: Rational, p: int) -> bool:
    """Whether a rational is a square in Q_p (zero counts as a square)."""
    r = Fraction(r)
    if r == 0:
        return True
    n = r.numerator * r.denominator
    v = vp_int(p, n)
    if v % 2:
        return False
    u = n // p**v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def local_class_bits(r: Rational, p: int) -> int:
    """Coordinates of ``r`` in Q_p*/Q_p*^2 as a small bitmask.

    Odd p: bit0 = valuation parity, bit1 = unit is a non-residue.
    p = 2: bit0 = valuation parity, bit1 = unit = 3 mod 4, bit2 = unit in {3,5} mod 8.
    p = 0 stands for the real place: bit0 = negative.
    """
    r = Fraction(r)
    n = r.numerator * r.denominator
    if p == 0:
        return 1 if n < 0 else 0
    v = vp_int(p, n)
    u = n // p**v
    bits = v & 1
    if p == 2:
        if u % 4 == 3:
            bits |= 2
        if u % 8 in (3, 5):
            bits |= 4
    elif legendre(u, p) == -1:
        bits |= 2
    return bits


def local_class_width(p: int) -> int:
    return 1 if p == 0 else (3 if p == 2 else 2)


# --------------------------------------------------------------------------
# rational roots of integer polynomials

def integer_poly(coeffs: Iterable[Rational]) -> list[int]:
    """Clear denominators (and content) of a coefficient list, high degree first."""
    cs = [Fraction(c) for c in coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def square_scaled_poly(coeffs: Iterable[Rational]) -> list[int]:
    """Integer multiple of a polynomial by a rational *square*, so that the
    curve ``y^2 = g`` keeps its twist class."""
    cs = [Fraction(c) for c in coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den * den) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    _, f = squarefree_decompose(g) if g else (1, 1)
    return [c // (f * f) for c in ints]


def poly_eval(coeffs: list, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def rational_roots(coeffs: Iterable[Rational]) -> list[Fraction]:
    """All rational roots of a polynomial given high-degree-first.

    Real roots are located numerically at high precision; a rational root
    ``u/v`` of the cleared integer polynomial has ``v | lead`` so rounding
    ``root * lead`` recovers it exactly, and every candidate is checked exactly.
    """
    cs = integer_poly(coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    roots: set[Fraction] = set()
    while cs and cs[-1] == 0:
        roots.add(Fraction(0))
        cs.pop()
    if len(cs) <= 1:
        return sorted(roots)
    if len(cs) == 2:
        roots.add(Fraction(-cs[1], cs[0]))
        return sorted(roots)
    lead = cs[0]
    digits = max(40, 3 * max(len(str(abs(c))) for c in cs))
    with mpmath.workdps(digits):
        try:
            approx = mpmath.polyroots(cs, maxsteps=400, extraprec=4 * digits)
        except mpmath.libmp.libhyper.NoConvergence:
            approx = mpmath.polyroots(cs, maxsteps=4000, extraprec=16 * digits)
        for z in approx:
            if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-(digits // 3)) * (1 + abs(z)):
                continue
            scaled = mpmath.re(z) * abs(lead)
            base = int(mpmath.nint(scaled))
            for num in (base - 1, base, base + 1):
                cand = Fraction(num, abs(lead))
                if poly_eval(cs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


# --------------------------------------------------------------------------
# quadratic fields

@dataclass(frozen=True)
class QuadExt:
    """``a + b*sqrt(D)`` with ``D`` a squarefree integer; ``D == 1`` means plain Q."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        D = int(self.D)
        if D == 0 or squarefree_decompose(D) != (D, 1):
            raise ValueError(f"radicand {D} is not squarefree")
        if D == 1 and self.b:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def sqrt_of(cls, r: Rational) -> "QuadExt":
        """A square root of the rational ``r`` inside Q(sqrt(squarefree(r)))."""
        r = Fraction(r)
        if r == 0:
            return cls(0, 0, 1)
        root = rational_sqrt(r)
        if root is not None:
            return cls(root, 0, 1)
        s, f = squarefree_decompose(r.numerator * r.denominator)
        # r = s * f^2 / den^2
        return cls(0, Fraction(f, r.denominator), s)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.D != self.D and 1 not in (self.D, other.D):
                raise ValueError("mixed radicands")
            if self.D == 1 and other.D != 1 and self.b == 0:
                return other
            return other
        return QuadExt(Fraction(other), 0, self.D)

    def _field(self, other: "QuadExt") -> int:
        if self.D == other.D:
            return self.D
        if self.D == 1 and self.b == 0:
            return other.D
        if other.D == 1 and other.b == 0:
            return self.D
        raise ValueError("mixed radicands")

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        D = self._field(o)
        return QuadExt(self.a * o.a + D * self.b * o.b, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadExt(num.a / n, num.b / n, num.D)

    def __eq__(self, other):
        if not isinstance(other, QuadExt):
            try:
                other = QuadExt(Fraction(other), 0, 1)
            except (TypeError, ValueError):
                return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.D == other.D and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.D if self.b else 1))

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.D})"


def poly_mul(p: list, q: list) -> list:
    """Product of coefficient lists (high degree first), any ring elements."""
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out

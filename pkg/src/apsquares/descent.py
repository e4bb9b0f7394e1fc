"""2-descent over Q for curves with rational 2-torsion.

Square classes are squarefree ints.  Local solvability of the quartics
``N^2 = g(M, e)`` is decided exactly: over R by sign and real roots, over
Q_p by a recursive walk through residue classes that stops once a class is
shown to be constant in Q_p*/Q_p*^2.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Optional, Sequence

import sympy

from .arith import (
    is_padic_square,
    is_square_int,
    local_class_bits,
    local_class_width,
    prime_divisors,
    rational_sqrt,
    squarefree_part,
)
from .elliptic import Curve, FactoredCurve, torsion_subgroup

TOOL_VERSION = "apsquares-0.1"

# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True, order=True)
class SquareClass:
    rep: int

    def __post_init__(self):
        if self.rep == 0 or squarefree_part(self.rep) != self.rep:
            raise ValueError(f"{self.rep} is not a squarefree integer")

    @classmethod
    def of(cls, r) -> "SquareClass":
        return cls(squarefree_part(r))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(squarefree_part(self.rep * other.rep))

    def __int__(self):
        return self.rep

    def __str__(self):
        return str(self.rep)


def class_vector(d: int, basis: Sequence[int]) -> int:
    """Bitmask of ``d`` over the basis ``[-1, p1, p2, ...]``; ``d`` must be supported on it."""
    v = 0
    if d < 0:
        v |= 1
        d = -d
    for i, p in enumerate(basis[1:], start=1):
        if d % p == 0:
            v |= 1 << i
            d //= p
    if d != 1:
        raise ValueError("class not supported on basis")
    return v


def class_from_vector(v: int, basis: Sequence[int]) -> int:
    d = 1
    for i, p in enumerate(basis):
        if v >> i & 1:
            d *= p
    return d


# ---------------------------------------------------------------------------
# local solvability of y^2 = g(x), g an integer quartic (high degree first)


def _taylor(g: Sequence[int], x0: int) -> list[int]:
    """Coefficients of ``g(x0 + s)`` in s, constant term first."""
    c = list(g)
    n = len(c) - 1
    out = []
    for _ in range(n + 1):
        acc, q = 0, []
        for a in c:
            acc = acc * x0 + a
            q.append(acc)
        out.append(q[-1])
        c = q[:-1]
    return out


def _v(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def zp_soluble(g: Sequence[int], p: int, x0: int = 0, k: int = 0, depth: int = 0) -> bool:
    """Is ``g(x)`` a square in Q_p for some x in ``x0 + p^k Z_p``?"""
    if depth > 200:
        raise RuntimeError("local solvability recursion did not terminate")
    c = _taylor(g, x0)
    if c[0] == 0 or is_padic_square(c[0], p):
        return True
    lam = _v(c[0], p)
    e = 3 if p == 2 else 1
    rest = [_v(ci, p) + i * k for i, ci in enumerate(c[1:], start=1) if ci]
    m = min(rest) if rest else lam + e
    if m >= lam + e:
        return False
    if c[1]:
        mu = _v(c[1], p)
        # Hensel: a root of g lies in the class
        if lam > 2 * mu and lam - mu >= k:
            return True
    step = p**k
    return any(zp_soluble(g, p, x0 + t * step, k + 1, depth + 1) for t in range(p))


def qp_soluble(g: Sequence[int], p: int) -> bool:
    """Points on ``y^2 = g(x, z)`` (even degree) over Q_p."""
    g = [int(a) for a in g]
    v = min(_v(a, p) for a in g if a)
    if v >= 2:
        g = [a // p ** (v - v % 2) for a in g]
    return zp_soluble(g, p, 0, 0) or zp_soluble(g[::-1], p, 0, 1)


def real_soluble(g: Sequence[int]) -> bool:
    g = [int(a) for a in g]
    # zero at either end of P^1 is already a point
    if g[0] >= 0 or g[-1] >= 0:
        return True
    x = sympy.Symbol("x")
    return bool(sympy.Poly(g, x).count_roots() > 0)


def locally_soluble(g: Sequence[int], places: Sequence[int]) -> bool:
    """``places`` contains primes and 0 for the real place."""
    return all(real_soluble(g) if p == 0 else qp_soluble(g, p) for p in places)


def bruteforce_soluble(g: Sequence[int], p: int, k: int) -> Optional[bool]:
    """Decide solvability from residues mod ``p^k`` alone, or ``None``.

    True when some representative gives a square; False when every residue
    class (in both charts) is stable modulo ``p^k`` and non-square.
    """
    g = [int(a) for a in g]
    e = 3 if p == 2 else 1
    mod = p**k
    undecided = False
    for chart, start, stride in ((g, 0, 1), (g[::-1], 0, p)):
        for x in range(start, mod, stride):
            val = reduce(lambda acc, a: acc * x + a, chart, 0)
            if val == 0 or is_padic_square(val, p):
                return True
            if _v(val, p) + e > k:
                undecided = True
    return None if undecided else False


# ---------------------------------------------------------------------------
# 2-isogeny descent


@dataclass
class SelmerGroup:
    elements: list[int]
    support: list[int]  # [-1, primes...]
    curve: tuple = ()

    @property
    def dimension(self) -> int:
        return len(self.elements).bit_length() - 1

    def __contains__(self, d) -> bool:
        return squarefree_part(d) in set(self.elements)

    def generators(self) -> list[int]:
        basis = self.support
        rows = []
        for d in self.elements:
            v = class_vector(d, basis)
            for r in rows:
                v = min(v, v ^ r)
            if v:
                rows.append(v)
        return [class_from_vector(r, basis) for r in rows]

    def is_closed(self) -> bool:
        s = set(self.elements)
        return all(squarefree_part(a * b) in s for a in s for b in s)


def _translate(E: Curve, r) -> tuple[Fraction, Fraction]:
    """``(a, b)`` with ``y^2 = X (X^2 + a X + b)`` after ``x = X + r``."""
    r = Fraction(r)
    if E.f(r) != 0:
        raise ValueError(f"({r}, 0) is not a 2-torsion point")
    a = 3 * r + E.a2
    b = 3 * r * r + 2 * E.a2 * r + E.a4
    return a, b


def _integral_ab(a: Fraction, b: Fraction) -> tuple[int, int, int]:
    u = math.lcm(a.denominator, b.denominator)
    return int(a * u * u), int(b * u**4), u


def isogeny_selmer_ab(a: int, b: int) -> SelmerGroup:
    """Classes ``d | b`` with ``d N^2 = d^2 M^4 + a d M^2 e^2 + b e^4`` everywhere locally solvable.

    Solvability at p depends only on the class of d in Q_p*/Q_p*^2, so each
    place costs one test per local class reached; the Selmer group is then
    the kernel of the map to the product of local cokernels.
    """
    if b == 0 or a * a - 4 * b == 0:
        raise ValueError("singular curve")
    places = [0] + sorted(set(prime_divisors(2 * b * (a * a - 4 * b))))
    support = [-1] + sorted(prime_divisors(b))
    n = len(support)
    images = [0] * n
    shift = 0
    for p in places:
        loc = [local_class_bits(class_from_vector(1 << i, support), p) for i in range(n)]
        reps = {0: 0}  # local class -> global vector
        for i, c in enumerate(loc):
            for cls, vec in list(reps.items()):
                reps.setdefault(cls ^ c, vec ^ (1 << i))
        ok = {}
        for cls, vec in reps.items():
            d = class_from_vector(vec, support)
            ok[cls] = locally_soluble([d**3, 0, a * d * d, 0, b * d], [p])
        good: list[int] = []
        for cls in sorted(c for c, v in ok.items() if v):
            _insert(cls, good)
        if any((_pivot_reduce(c, good) == 0) != v for c, v in ok.items()):
            raise ArithmeticError(f"local image at {p} is not a group")
        for i in range(n):
            images[i] |= _pivot_reduce(loc[i], good) << shift
        shift += local_class_width(p)
    ker = _kernel(images, n)
    found = set()
    for m in range(2 ** len(ker)):
        c = 0
        for i, k in enumerate(ker):
            if m >> i & 1:
                c ^= k
        found.add(class_from_vector(c, support))
    return SelmerGroup(sorted(found, key=lambda x: (abs(x), x < 0)), support, (a, b))


def two_isogeny_selmer(E: Curve, T) -> SelmerGroup:
    """Selmer group containing the image of ``E(Q)`` under ``P -> x(P) - r``."""
    r = T[0] if isinstance(T, tuple) else T
    if isinstance(T, tuple) and T[1] != 0:
        raise ValueError("T must be a 2-torsion point")
    a, b = _translate(E, r)
    A, B, _ = _integral_ab(a, b)
    return isogeny_selmer_ab(A, B)


def isogeny_selmer_dims(E: Curve, r) -> tuple[int, int]:
    """Dimensions of the Selmer groups of the isogeny with kernel ``(r, 0)`` and of its dual."""
    a, b = _translate(E, r)
    A, B, _ = _integral_ab(a, b)
    return isogeny_selmer_ab(A, B).dimension, isogeny_selmer_ab(-2 * A, A * A - 4 * B).dimension


def isogeny_rank_bound(E: Curve, r) -> int:
    d1, d2 = isogeny_selmer_dims(E, r)
    return d1 + d2 - 2


def descent_image(E: Curve, T, P) -> int:
    """Squarefree part of ``x(P) - r``, with the usual convention at ``T``."""
    r = Fraction(T[0] if isinstance(T, tuple) else T)
    if E.f(r) != 0:
        raise ValueError("T is not 2-torsion")
    if P is None:
        return 1
    if not E.contains(P):
        raise ValueError("point is off the curve")
    x = Fraction(P[0])
    if x != r:
        return squarefree_part(x - r)
    a, b = _translate(E, r)
    return squarefree_part(b)


# ---------------------------------------------------------------------------
# full 2-descent for y^2 = (x - e1)(x - e2)(x - e3)


def _integral_roots(E: FactoredCurve) -> tuple[list[int], int]:
    u = reduce(math.lcm, (e.denominator for e in E.roots), 1)
    return [int(e * u * u) for e in E.roots], u


def pair_image(roots: Sequence[int], x) -> tuple[int, int]:
    """``(x - e1, x - e2)`` in square classes; 2-torsion conventions included."""
    e1, e2, e3 = roots
    x = Fraction(x)
    if x == e1:
        return squarefree_part((e1 - e2) * (e1 - e3)), squarefree_part(e1 - e2)
    if x == e2:
        return squarefree_part(e2 - e1), squarefree_part((e2 - e1) * (e2 - e3))
    return squarefree_part(x - e1), squarefree_part(x - e2)


def _pivot_reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        if v >> (b.bit_length() - 1) & 1:
            v ^= b
    return v


def _insert(v: int, basis: list[int]) -> bool:
    v = _pivot_reduce(v, basis)
    if not v:
        return False
    basis.append(v)
    basis.sort(reverse=True)
    return True


def _local_vec(pair: tuple[int, int], p: int) -> int:
    w = local_class_width(p)
    return local_class_bits(pair[0], p) | local_class_bits(pair[1], p) << w


def local_image(roots: Sequence[int], p: int, seed: int = 0) -> list[int]:
    """Echelon basis of the image of ``E(Q_p)`` in the local pair classes."""
    target = 1 if p == 0 else 2 + (p == 2)
    basis: list[int] = []
    f = lambda x: (x - roots[0]) * (x - roots[1]) * (x - roots[2])
    for e in roots:
        _insert(_local_vec(pair_image(roots, e), p), basis)
    rng = random.Random(seed * 1000003 + p)
    span = max(abs(e) for e in roots) + 1
    tries = 0
    while len(basis) < target:
        tries += 1
        if tries > 20000:
            raise RuntimeError(f"local image at {p} not found")
        mode = rng.randrange(3)
        if p == 0:
            x = Fraction(rng.randint(-4 * span, 4 * span), rng.randint(1, 8))
        elif mode == 0:
            e = rng.choice(roots)
            x = Fraction(e) + Fraction(rng.randint(1, 4 * p)) * Fraction(p) ** rng.randint(-3, 10)
        elif mode == 1:
            x = Fraction(rng.randint(-8 * p, 8 * p), p ** (2 * rng.randint(1, 4)))
        else:
            x = Fraction(rng.randint(-4 * span, 4 * span))
        fx = f(x)
        if fx == 0:
            continue
        ok = fx > 0 if p == 0 else is_padic_square(fx, p)
        if ok:
            _insert(_local_vec(pair_image(roots, x), p), basis)
    return basis


@dataclass
class FullSelmer:
    roots: tuple[int, int, int]
    scale: int
    support: list[int]
    elements: list[tuple[int, int]]

    @property
    def dimension(self) -> int:
        return len(self.elements).bit_length() - 1

    def __contains__(self, pair) -> bool:
        return (squarefree_part(pair[0]), squarefree_part(pair[1])) in set(self.elements)


def _kernel(images: list[int], n: int) -> list[int]:
    """Basis of ``{c : sum c_i images[i] = 0}`` over F2, as bitmasks of length n."""
    rows = [(images[i], 1 << i) for i in range(n)]
    pivots: list[tuple[int, int]] = []
    kernel = []
    for img, comb in rows:
        for pimg, pcomb in pivots:
            if img >> (pimg.bit_length() - 1) & 1:
                img ^= pimg
                comb ^= pcomb
        if img:
            pivots.append((img, comb))
            pivots.sort(key=lambda t: -t[0])
        else:
            kernel.append(comb)
    return kernel


@lru_cache(maxsize=None)
def _full_selmer(roots: tuple[int, int, int]) -> tuple[list[int], list[tuple[int, int]]]:
    e1, e2, e3 = roots
    primes = sorted(set([2]) | set(prime_divisors((e1 - e2) * (e1 - e3) * (e2 - e3))))
    support = [-1] + primes
    places = [0] + primes
    local = {p: local_image(roots, p) for p in places}
    n = len(support)
    gens = [(class_from_vector(1 << i, support), 1) for i in range(n)]
    gens += [(1, class_from_vector(1 << i, support)) for i in range(n)]
    images = []
    for pair in gens:
        v, shift = 0, 0
        for p in places:
            w = 2 * local_class_width(p)
            v |= _pivot_reduce(_local_vec(pair, p), local[p]) << shift
            shift += w
        images.append(v)
    ker = _kernel(images, 2 * n)
    elements = set()
    for m in range(2 ** len(ker)):
        c = 0
        for i, k in enumerate(ker):
            if m >> i & 1:
                c ^= k
        d1 = class_from_vector(c & ((1 << n) - 1), support)
        d2 = class_from_vector(c >> n, support)
        elements.add((d1, d2))
    return support, sorted(elements)


def full_selmer(E: FactoredCurve) -> FullSelmer:
    roots, u = _integral_roots(E)
    support, elements = _full_selmer(tuple(roots))
    return FullSelmer(tuple(roots), u, support, elements)


def full_two_descent(E: FactoredCurve) -> tuple[int, int]:
    """``(dim Sel^(2), rank upper bound)``."""
    S = full_selmer(E)
    return S.dimension, max(S.dimension - 2, 0)


def point_pair_image(E: FactoredCurve, P) -> tuple[int, int]:
    if P is None:
        return (1, 1)
    roots, u = _integral_roots(E)
    return pair_image(roots, Fraction(P[0]) * u * u)


def images_rank(E: FactoredCurve, points) -> int:
    """Rank lower bound from points: ``dim span(images) - 2``."""
    roots, _ = _integral_roots(E)
    support = [-1] + sorted(set([2]) | set(prime_divisors(math.prod(
        roots[i] - roots[j] for i in range(3) for j in range(i + 1, 3)))))
    basis: list[int] = []
    n = len(support)
    # E(Q)/2E(Q) has dimension rank + 2, and the torsion points supply the 2
    for P in [*E.torsion_points(), *points]:
        d1, d2 = point_pair_image(E, P)
        try:
            v = class_vector(d1, support) | class_vector(d2, support) << n
        except ValueError:
            # image outside the Selmer support means a bad point
            raise ArithmeticError("point image not supported on bad primes")
        _insert(v, basis)
    return len(basis) - 2


def selmer_point_search(E: FactoredCurve, H: int) -> list:
    """Points found by lifting Selmer elements: ``x - e1 = d1 (a/c)^2`` with
    ``0 <= a, 1 <= c <= H``, kept when ``x - e2`` lies in the class ``d2``."""
    S = full_selmer(E)
    e1, e2, e3 = S.roots
    u2 = S.scale * S.scale
    out = []
    for d1, d2 in S.elements:
        for c in range(1, H + 1):
            c2 = c * c
            for a in range(0, H + 1):
                if math.gcd(a, c) != 1:
                    continue
                num = e1 * c2 + d1 * a * a  # x = num / c^2 in integral coordinates
                r = (num - e2 * c2) * d2
                if r < 0 or not is_square_int(r):
                    continue
                x = Fraction(num, c2)
                y = rational_sqrt((x - e1) * (x - e2) * (x - e3))
                if y is None:
                    continue
                out.append((x / u2, y / (u2 * S.scale)))
    return out


def rank_window(E: FactoredCurve, height_bound: int = 30, selmer_bound: int = 0) -> tuple[int, int]:
    """Sound window ``(lower, upper)`` for the Mordell-Weil rank."""
    _, upper = full_two_descent(E)
    for T in E.two_torsion():
        upper = min(upper, isogeny_rank_bound(E, T[0]))
    if upper == 0:
        return 0, 0
    lower = images_rank(E, E.point_search(height_bound))
    if lower < upper and selmer_bound:
        lower = images_rank(E, E.point_search(height_bound) + selmer_point_search(E, selmer_bound))
    return min(lower, upper), upper


# ---------------------------------------------------------------------------
# certificates


@dataclass
class DescentCertificate:
    subset: list[int]
    roots: list[str]
    selmer_dim: int
    rank_upper: int
    rank_lower: int
    torsion: str
    witnesses: list = field(default_factory=list)
    conclusion: str = "inconclusive"
    tool_version: str = TOOL_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DescentCertificate":
        return cls(**json.loads(text))


def certify_z_zero(I: Sequence[int], search_bound: int = 10**4, height_bound: int = 30,
                   selmer_bound: int = 100) -> DescentCertificate:
    from .ap import search_aps
    from .curves import model_four, remark_ap
    from .subsets import canonical_primitive, is_symmetric

    I = canonical_primitive(I)
    if len(I) != 4:
        raise ValueError("certify_z_zero needs four positions")
    M = model_four(I)
    E = M.curve
    dim, _ = full_two_descent(E)
    lower, upper = rank_window(E, height_bound, selmer_bound)
    tors = torsion_subgroup(E)
    cert = DescentCertificate(
        subset=list(I),
        roots=[str(r) for r in E.roots],
        selmer_dim=dim,
        rank_upper=upper,
        rank_lower=lower,
        torsion=tors.label(),
    )
    if is_symmetric(I) and upper == 0 and tors.order == 8:
        cert.conclusion = "z_zero"
        return cert
    if not is_symmetric(I):
        ap = remark_ap(I)
        wit = [ap] if ap is not None else search_aps(I, search_bound)[:1]
        if wit:
            cert.witnesses = [[w.q, w.a] for w in wit]
            cert.conclusion = "z_positive_with_witnesses"
    return cert

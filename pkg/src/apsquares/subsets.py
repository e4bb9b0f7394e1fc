"""Finite subsets of N up to translation, rational scaling and reflection.

A subset is a sorted tuple of distinct non-negative ints.  Its *encoding* is
``sum(2**i for i in I)``, which orders subsets; the primitive representative
of a class contains 0, has coprime elements and the smaller encoding of
itself and its reflection.
"""
from __future__ import annotations

import math
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator

Subset = tuple[int, ...]


def make_subset(elements: Iterable[int]) -> Subset:
    s = tuple(sorted(set(int(e) for e in elements)))
    if not s:
        raise ValueError("subsets must be non-empty")
    if s[0] < 0:
        raise ValueError("subset elements must be non-negative")
    return s


def parse_subset(text: str) -> Subset:
    """Parse ``"0,1,3,4"``."""
    return make_subset(int(t) for t in text.replace(" ", "").split(",") if t)


def format_subset(I: Subset) -> str:
    return ",".join(str(i) for i in I)


def encode(I: Iterable[int]) -> int:
    return sum(1 << i for i in set(I))


def decode(n: int) -> Subset:
    if n <= 0:
        raise ValueError("decode needs a positive integer")
    return tuple(i for i in range(n.bit_length()) if n >> i & 1)


def symmetrize(I: Subset) -> Subset:
    lo, hi = I[0], I[-1]
    return tuple(sorted(lo + hi - i for i in I))


def is_symmetric(I: Subset) -> bool:
    return symmetrize(I) == tuple(I)


def canonical_primitive(I: Iterable[int]) -> Subset:
    """Unique primitive subset equivalent to ``I``."""
    I = make_subset(I)
    n0 = I[0]
    shifted = [i - n0 for i in I]
    g = reduce(math.gcd, shifted, 0) or 1
    J = tuple(i // g for i in shifted)
    Js = symmetrize(J)
    return J if encode(J) <= encode(Js) else Js


def is_primitive(I: Subset) -> bool:
    return canonical_primitive(I) == tuple(I)


def binomial_count(N: int, k: int) -> int:
    return math.comb(N, k)


def primitive_classes(N: int, k: int, symmetric_only: bool = False) -> Iterator[Subset]:
    """Primitive k-subsets of ``{0..N-1}``, in increasing encoding order.

    Every class meeting ``{0..N-1}`` has its primitive representative inside
    the window (translation to 0 and division by the gcd never enlarge the
    span), so this enumerates each class exactly once.
    """
    if k == 1:
        yield (0,)
        return
    out = []
    for top in range(1, N):
        for mid in combinations(range(1, top), k - 2):
            I = (0, *mid, top)
            if reduce(math.gcd, I, 0) != 1:
                continue
            Is = symmetrize(I)
            e, es = encode(I), encode(Is)
            if e > es:
                continue
            if symmetric_only and e != es:
                continue
            out.append((e, I))
    out.sort()
    for _, I in out:
        yield I


def enumerate_classes(N: int, k: int, symmetric_only: bool = False) -> tuple[int, list[Subset]]:
    """``(count, classes)`` of canonical k-subset classes within ``{0..N-1}``."""
    if not 2 <= k <= N:
        raise ValueError("need 2 <= k <= N")
    classes = list(primitive_classes(N, k, symmetric_only))
    return len(classes), classes


def enumerate_classes_bruteforce(N: int, k: int, symmetric_only: bool = False) -> set[int]:
    """Encodings of canonical forms of every k-subset (slow cross-check)."""
    seen: set[int] = set()
    for I in combinations(range(N), k):
        if symmetric_only and not is_symmetric(I):
            continue
        seen.add(encode(canonical_primitive(I)))
    return seen


def count_symmetric_4subsets(N: int) -> int:
    """Number of 4-subsets of ``{0..N}`` with ``n0 + n3 == n1 + n2``."""
    if N < 3:
        raise ValueError("N >= 3 required")
    return sum(1 for a, b, c, d in combinations(range(N + 1), 4) if a + d == b + c)


def symmetric_count_polynomial(N: int) -> float:
    """Closed cubic quoted alongside A002623; diagnostic only (it does not
    reproduce the enumerated counts at small N)."""
    return N**3 / 12 - 7 * N**2 / 8 + 35 * N / 12 - 49 / 16 + (-1) ** N / 16


def subsets_containing(I: Subset, k: int) -> Iterator[Subset]:
    """All k-element subsets of ``I``."""
    return combinations(I, k)

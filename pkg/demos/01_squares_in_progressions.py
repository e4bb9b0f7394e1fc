"""
Squares in an arithmetic progression
====================================

How many of the first N terms of q*n + a can be perfect squares?  This walk
looks at the progression 24n + 1, at explicit progressions through four
given positions, and at the brute-force witness search.
"""

from apsquares.ap import ArithProgression, search_aps, special_positions, squares_in_ap
from apsquares.curves import remark_ap

# 24n + 1 is a square exactly at the generalized pentagonal numbers
S = squares_in_ap(24, 1, 60)
print("squares of 24n+1 below 60 at", S.positions)
print("pentagonal numbers below 60:", special_positions("pentagonal", 60))

# so 5 of the first 8 terms are squares: 1, 25, 49, 121, 169
print("first 8 terms:", [24 * n + 1 for n in range(8)])

# every 4-subset whose curve has positive rank gets an explicit progression
for I in [(0, 1, 2, 4), (0, 1, 2, 5), (0, 1, 3, 6)]:
    ap = remark_ap(I)
    print(I, "->", ap, [ap.term(n) for n in I])

# brute force: all normalized (q, a) with |q|, |a| <= 200 squaring at 0,1,2,4
print("search box 200:", ", ".join(map(str, search_aps((0, 1, 2, 4), 200))))

# a 5-subset carrying two progressions, one of them decreasing
print("{0,13,24,33,49}:", ", ".join(map(str, search_aps((0, 13, 24, 33, 49), 100))))
print(ArithProgression(-1, 49).squares_at((0, 13, 24, 33, 49)))

"""
The Q(N) ladder
===============

Q(N) <= Q(N+1) <= Q(N) + 1, and a value is proved once every
(Q(N)+1)-subset of {0..N-1} contains a subset certified to carry no
progression.  Positions shared by two progressions come from Pell equations.
"""

from apsquares.pell import ap_intersection, ej48_family
from apsquares.pipeline import compute_q_table, format_q_table

rows = compute_q_table(12)
print(format_q_table(rows))

# N = 12 stays open: its obstructions need Chabauty over a quadratic field
print("undecided at N=12:", rows[-1].undecided)

# n + 1 and 3n + 1 both squares
print(ap_intersection(1, 1, 3, 1, 8))
print(ej48_family(3))

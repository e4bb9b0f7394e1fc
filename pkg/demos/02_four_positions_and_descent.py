"""
Four positions and an elliptic curve
====================================

Squares at four positions {0, n1, n2, n3} correspond to rational points on
an elliptic curve E_I.  When E_I has rank 0 and only its eight torsion points,
no progression exists.  A 2-descent bounds the rank from above; points found
by search bound it from below.
"""

from apsquares.curves import model_four, trivial_images
from apsquares.descent import certify_z_zero, full_two_descent, rank_window
from apsquares.elliptic import root_number, torsion_subgroup

for I in [(0, 1, 2, 3), (0, 1, 2, 5)]:
    M = model_four(I)
    E = M.curve
    print(f"\nI = {I}: m0 = {M.m0}, m1 = {M.m1}")
    print("  ", E.pretty(), "torsion", torsion_subgroup(E).label())
    print("   2-Selmer dimension", full_two_descent(E)[0], "rank window", rank_window(E))

# the eight trivial points of C_I land on these points of E_I
print("\ntrivial images for {0,1,2,5}:")
for name, P in trivial_images(1, 3).items():
    print("  ", name, "O" if P is None else f"({P[0]}, {P[1]})")

# certificates are plain records, ready for the JSON-lines store
print("\n" + certify_z_zero((0, 1, 2, 3)).to_json())
print(certify_z_zero((0, 1, 2, 5)).to_json())

# for symmetric I the parity of the rank is predicted by a root number
print("\nroot numbers:", {ab: root_number(*ab) for ab in [(1, 2), (1, 3), (2, 5)]})

"""
Five positions through elliptic quotients
=========================================

For five positions the curve C_I has genus 5.  Fixing three of them and a
pair of factorizations of two quartics gives a finite list of twists delta;
each twist has a genus-one quotient.  When every quotient is either locally
insoluble or of rank 0 over Q, all points of C_I can be listed.
"""

from apsquares.covering import analyse_choice, covering_choices, factor_pair, frak_S, quartic_model

I, J = (0, 1, 4, 7, 8), (1, 4, 7)
M = quartic_model(I, J)
for i, j in [(1, 2), (2, 1)]:
    fp = factor_pair(M, i, j)
    print(f"p_{i},{j},+ = {fp.pretty('+')}    p_{i},{j},- = {fp.pretty('-')}")

print("twists:", frak_S(I, J, 2, 1).elements)

d = analyse_choice(I, J, 2, 1)
for r in d.rows:
    print(f"  delta={r.delta:>3} signs={''.join(r.signs)} empty={r.empty} t={[str(t) for t in r.t_values]}")
print("conclusion:", d.conclusion())

# the Rudin sequence {0,1,2,5,7} needs a quadratic field, which is out of reach here
print("choices over Q for {0,1,2,5,7}:", sum(c.radicand == 1 for c in covering_choices((0, 1, 2, 5, 7))))

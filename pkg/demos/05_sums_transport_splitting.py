"""
Direct sums, basis changes and splittings
=========================================

Centroid of a direct sum against its four parts, invariance under random
integer basis changes, and idempotents of the centroid.
"""

import random

from zinbiel.algebra import change_of_basis
from zinbiel.catalog import get_entry
from zinbiel.decompose import decomposability, ideal_split
from zinbiel.invariants import direct_sum_centroid_report, random_unimodular, transport_conjugation

Z21, Z31, Z32 = (get_entry(k).algebra for k in ("Z2_1", "Z3_1", "Z3_2"))

for a, b in ((Z21, Z21), (Z21, Z32), (Z31, Z32)):
    rep = direct_sum_centroid_report(a, b)
    print(f"{rep.name}: {rep.dim_a} + {rep.dim_b} + {rep.dim_c1} + {rep.dim_c2} = {rep.parts_total}, "
          f"dim Gamma = {rep.dim_sum}")

# the same algebra in another basis has the same invariants
rng = random.Random(0)
P = random_unimodular(3, rng)
print("basis change:", [[str(x) for x in r] for r in P])
B = change_of_basis(Z32, P)
print("Z3_2 in the new basis, e1*e1 =", [str(x) for x in B.products()[(0, 0)]])
print("transport report:", transport_conjugation(Z32, P))

# idempotents in the centroid split the algebra into ideals
for A in (Z21, Z31):
    v = decomposability(A)
    print(A.name, v.structural, "| CD = 0:", v.paper_criterion)
    if v.witness is not None:
        left, right = ideal_split(A, v.witness)
        print("  ideals of dims", left.dim, "and", right.dim, "| central:", v.central)

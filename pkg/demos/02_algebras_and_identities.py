"""
Algebras from structure constants
=================================

Load small algebras, check the defining identities, and walk along the
chain Zinbiel -> dendriform -> associative / pre-Lie -> Lie.
"""

from zinbiel.algebra import (
    center,
    check_dendriform,
    check_identity,
    dendriform_to_associative,
    dendriform_to_prelie,
    power_chain,
    symmetrize,
    zinbiel_to_dendriform,
)
from zinbiel.catalog import get_entry
from zinbiel.fileformat import parse_algebra, render_algebra

# the file format is line oriented; unlisted products are zero
A = parse_algebra("""
name demo
dim 3
param lambda
assume lambda != 0
mul e1 e1 = e3
mul e1 e2 = e3
mul e2 e2 = lambda e3
mul e2 e1 = -e3
""")
print(render_algebra(A))

for kind in ("zinbiel", "associative", "commutative", "leibniz"):
    print(f"{kind:12s}", check_identity(kind, A).holds)

# a failing identity comes with witnesses (1-based basis triples)
bad = parse_algebra("dim 1\nmul e1 e1 = e1\n")
(i, j, k), defect = check_identity("zinbiel", bad).witnesses[0]
print(f"unit algebra fails at (e{i}, e{j}, e{k}), defect {[str(c) for c in defect]}")

# derived structures
Z = get_entry("Z4_1").algebra
D = zinbiel_to_dendriform(Z)
print("symmetrized is commutative:", check_identity("commutative", symmetrize(Z)).holds)
print("dendriform axioms:", check_dendriform(D).holds)
print("associated product associative:", check_identity("associative", dendriform_to_associative(D)).holds)
# for a Zinbiel algebra the induced pre-Lie product collapses to zero
print("pre-Lie product:", dendriform_to_prelie(D).table or "zero")

# subspaces
print("center of Z4_1:", [[str(c) for c in v] for v in center(Z).basis])
print("power chain dims:", [s.dim for s in power_chain(Z)])

"""
Derivations, centroid and central derivations
=============================================

The three spaces come from nullspaces of linear systems in the n*n matrix
entries.  Central derivations are computed three ways and compared.
"""

from zinbiel.algebra import specialize
from zinbiel.catalog import get_entry
from zinbiel.invariants import (
    cd_definitional,
    cd_equational,
    cd_intersection,
    centroid_space,
    derivation_space,
    render_parametric,
)

for name in ("Z2_1", "Z3_2", "Z3_4"):
    A = get_entry(name).algebra
    der, gam, cd = derivation_space(A), centroid_space(A), cd_equational(A)
    same = cd == cd_definitional(A) == cd_intersection(A)
    print(f"{name}: Der {der.dim}, Gamma {gam.dim}, CD {cd.dim}, three characterizations agree: {same}")

# parametric matrices; column convention matches how the tables are printed
A = get_entry("Z2_1").algebra
print("CD(Z2_1), column convention:")
print(render_parametric(cd_equational(A), "column"))
print("CD(Z2_1), row convention:")
print(render_parametric(cd_equational(A), "row"))

# a parametric entry: generic answer plus the values where rank may drop
B = get_entry("Z4_9").algebra
der = derivation_space(B)
print("Z4_9 generic Der dim", der.dim, "may change where", [f"{p} = 0" for p in der.cert.specialization_polys])
print("Z4_9 at alpha = 0: Der dim", derivation_space(specialize(B, 0)).dim)
print("Z4_9 at alpha = 2: Der dim", derivation_space(specialize(B, 2)).dim)

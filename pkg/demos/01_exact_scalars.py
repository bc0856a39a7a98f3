"""
Exact scalars with one parameter
================================

Rationals and rational functions in a single parameter, plus the
assumption bookkeeping used when a rank depends on that parameter.
"""

from fractions import Fraction

from zinbiel.linalg import rref
from zinbiel.scalars import AssumptionSet, Poly, evaluate_at, factor_partial, is_assumed_nonzero, param

lam = param("lambda")

# rational functions reduce to a canonical form
q = (lam**2 - 1) / (lam - 1)
print("(lambda^2 - 1)/(lambda - 1) =", q)
print("lambda * 1/lambda =", lam * (1 / lam))

# substitution, with poles and assumptions caught
print("evaluate 1/(lambda + 1) at 1:", evaluate_at(1 / (lam + 1), 1))
nonzero = AssumptionSet.of([lam.num], "lambda")
print("lambda + 1 given lambda != 0:", is_assumed_nonzero(lam + 1, nonzero))

# partial factorization: rational roots and quadratics, remainder otherwise
x = Poly.x("x")
print("x^4 - x^2:", factor_partial(x**4 - x**2).factors)
print("x^2 + 1:", factor_partial(x**2 + 1).factors)

# elimination records the pivots it assumed nonzero
rows, cert = rref([[lam + 1, Fraction(0)], [Fraction(0), Fraction(0)]], nonzero)
print("rank", cert.rank, "unless one of", [str(p) for p in cert.specialization_polys], "vanishes")

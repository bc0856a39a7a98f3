"""Decomposability of the centroid via idempotents.

A nontrivial idempotent ``eps`` of the centroid splits the algebra into the
ideals ``eps(A)`` and ``(1 - eps)(A)``; if ``eps`` is also central in the
centroid, the centroid itself splits as an associative algebra.  Idempotents
are built from coprime splittings of minimal polynomials: if ``minpoly(z) =
f * g`` with ``gcd(f, g) = 1`` and ``u f + v g = 1``, then ``(u f)(z)`` is
idempotent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec
from .invariants import cd_equational, centroid_space
from .linalg import ZERO, Matrix, SubspaceBasis, identity, matmul, matsub, nullspace, vectorize
from .scalars import Poly, factor_partial, poly_xgcd, scalar_var


class ParameterPresent(ValueError):
    pass


def poly_of_matrix(p: Poly, m: Matrix) -> Matrix:
    n = len(m)
    acc = [[ZERO] * n for _ in range(n)]
    eye = identity(n)
    for c in reversed(p.coeffs):
        acc = matmul(acc, m)
        if c:
            acc = [[x + c * y for x, y in zip(ra, ri)] for ra, ri in zip(acc, eye)]
    return acc


def minimal_polynomial(m: Matrix, var: str = "x") -> Poly:
    """Monic minimal polynomial of a rational square matrix (Krylov sequence of powers)."""
    n = len(m)
    powers = [vectorize(identity(n))]
    cur = identity(n)
    for k in range(1, n + 1):
        cur = matmul(cur, m)
        powers.append(vectorize(cur))
        cols = [list(col) for col in zip(*powers)]
        space, _ = nullspace(cols, ncols=k + 1)
        if space.dim:
            v = space.basis[-1]
            lead = v[k]
            return Poly([c / lead for c in v], var)
    raise AssertionError("Cayley-Hamilton bound exceeded")


@dataclass(frozen=True)
class DecomposabilityVerdict:
    """``paper_criterion`` is CD(A) = 0.  ``structural`` is one of
    ``"Decomposable"``, ``"NoSplitFound"``, ``"Inconclusive"``."""

    paper_criterion: bool
    structural: str
    witness: Matrix | None = None
    central: bool | None = None
    polynomial: Poly | None = None
    note: str = ""


def _commutes(a: Matrix, b: Matrix) -> bool:
    return matmul(a, b) == matmul(b, a)


def _split(z: Matrix):
    """Return ``(eps, minpoly, None)`` on a coprime split, else ``(None, minpoly, remainder_poly)``."""
    mp = minimal_polynomial(z)
    fac = factor_partial(mp)
    parts = [f**m for f, m in fac.factors + fac.remainder]
    if len(parts) < 2:
        rem = fac.remainder[0][0] ** fac.remainder[0][1] if fac.remainder else None
        return None, mp, rem
    f = parts[0]
    g = Poly((1,), mp.var)
    for p in parts[1:]:
        g = g * p
    one, u, _ = poly_xgcd(f, g)
    if one != 1:
        return None, mp, None
    eps = poly_of_matrix(u * f % mp, z)
    return eps, mp, None


def _candidates(basis: list[Matrix]):
    """Basis elements, then combinations with coefficients in -2..2 (bounded)."""
    yield from basis
    m = len(basis)
    coeffs = (-2, -1, 1, 2)
    if m <= 3:
        for cs in itertools.product((-2, -1, 0, 1, 2), repeat=m):
            if sum(1 for c in cs if c) >= 2:
                yield _lincomb(basis, cs)
    else:
        for i, j in itertools.combinations(range(m), 2):
            for a, b in itertools.product(coeffs, repeat=2):
                cs = [0] * m
                cs[i], cs[j] = a, b
                yield _lincomb(basis, cs)


def _lincomb(basis: list[Matrix], cs) -> Matrix:
    n = len(basis[0])
    out = [[ZERO] * n for _ in range(n)]
    for c, b in zip(cs, basis):
        if c:
            out = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, b)]
    return out


def centroid_center(gamma: list[Matrix]) -> list[Matrix]:
    """Basis of the elements of span(gamma) commuting with every gamma[s]."""
    if not gamma:
        return []
    m = len(gamma)
    # column r of the system holds vec(B_r B_s - B_s B_r) stacked over s
    cols = []
    for r in range(m):
        col = []
        for s in range(m):
            col.extend(vectorize(matsub(matmul(gamma[r], gamma[s]), matmul(gamma[s], gamma[r]))))
        cols.append(col)
    rows = [list(x) for x in zip(*cols)]
    space, _ = nullspace(rows, ncols=m)
    return [_lincomb(gamma, v) for v in space.basis]


def decomposability(A: AlgebraSpec, structural: bool = True) -> DecomposabilityVerdict:
    paper = cd_equational(A).dim == 0
    if not structural:
        return DecomposabilityVerdict(paper, "Skipped")
    gam = centroid_space(A)
    gamma = gam.matrices()
    if any(scalar_var(x) is not None for g in gamma for row in g for x in row) or A.is_parametric():
        raise ParameterPresent(f"{A.name} carries parameter {A.param!r}; specialize first")
    n = A.dim
    eye = identity(n)
    zero = [[ZERO] * n for _ in range(n)]
    unresolved = None
    cen = centroid_center(gamma)
    pools = [(True, cen)]
    if len(cen) < len(gamma):
        pools.append((False, gamma))
    seen = set()
    for central, pool in pools:
        if not pool:
            continue
        for z in _candidates(pool):
            key = vectorize(z)
            if key in seen:
                continue
            seen.add(key)
            eps, mp, rem = _split(z)
            if eps is None:
                if rem is not None and unresolved is None and central:
                    unresolved = mp
                continue
            if eps in (zero, eye) or matmul(eps, eps) != eps or not gam.contains(eps):
                continue
            if central and not all(_commutes(eps, g) for g in gamma):
                continue
            note = (
                "central idempotent: the centroid splits as an algebra"
                if central
                else "idempotent in the centroid: the algebra splits into two ideals"
            )
            return DecomposabilityVerdict(paper, "Decomposable", eps, central, mp, note)
    if unresolved is not None:
        return DecomposabilityVerdict(paper, "Inconclusive", polynomial=unresolved,
                                      note="minimal polynomial not fully factored")
    return DecomposabilityVerdict(paper, "NoSplitFound", note="no idempotent found in the bounded search")


def verify_witness(A: AlgebraSpec, v: DecomposabilityVerdict) -> bool:
    """Idempotent, nontrivial, inside the centroid, and central when claimed so."""
    eps = v.witness
    if eps is None:
        return False
    n = A.dim
    gam = centroid_space(A)
    if matmul(eps, eps) != eps or eps == identity(n) or all(x == 0 for r in eps for x in r):
        return False
    if not gam.contains(eps):
        return False
    if v.central:
        return all(_commutes(eps, g) for g in gam.matrices())
    return True


def ideal_split(A: AlgebraSpec, eps: Matrix) -> tuple[SubspaceBasis, SubspaceBasis]:
    """The ideals eps(A) and (1 - eps)(A) (row convention: images are row spans)."""
    n = A.dim
    comp = matsub(identity(n), eps)
    return (SubspaceBasis.span(eps, n), SubspaceBasis.span(comp, n))


__all__ = [
    "DecomposabilityVerdict",
    "ParameterPresent",
    "centroid_center",
    "decomposability",
    "ideal_split",
    "minimal_polynomial",
    "poly_of_matrix",
    "verify_witness",
]

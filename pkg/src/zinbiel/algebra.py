"""Finite-dimensional algebras given by structure constants.

Basis indices are zero-based in the Python API; reports and the file format
use the one-based labels ``e1 .. en``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    ONE,
    ZERO,
    Matrix,
    SubspaceBasis,
    matrix_inverse,
    nullspace_sparse,
    unit_vector,
)
from .scalars import AssumptionSet, ParameterClash, Scalar, is_zero, scalar_var, to_scalar

IDENTITY_KINDS = ("zinbiel", "prelie", "leibniz", "associative", "commutative", "lie")


class DimensionMismatch(ValueError):
    pass


def _clean_vector(vec: Sequence, n: int) -> tuple[Scalar, ...]:
    out = tuple(to_scalar(x) for x in vec)
    if len(out) != n:
        raise DimensionMismatch(f"product vector of length {len(out)} in dimension {n}")
    return out


@dataclass(frozen=True)
class AlgebraSpec:
    """Structure constants ``e_i . e_j = sum_k gamma[i, j][k] e_k``.

    ``table`` is a sorted tuple of ``((i, j), vector)`` with zero products
    omitted; build instances with :meth:`from_products`.
    """

    name: str
    dim: int
    table: tuple[tuple[tuple[int, int], tuple[Scalar, ...]], ...]
    param: str | None = None
    assumptions: AssumptionSet = AssumptionSet()
    labels: tuple[str, ...] = ()
    _lookup: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        n = self.dim
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(n)))
        if len(self.labels) != n:
            raise DimensionMismatch("label count does not match dimension")
        lookup = {}
        for (i, j), vec in self.table:
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"product index ({i + 1}, {j + 1}) out of range for dim {n}")
            if len(vec) != n:
                raise DimensionMismatch(f"product vector of length {len(vec)} in dimension {n}")
            if all(is_zero(x) for x in vec):
                raise ValueError("explicitly zero product stored in table")
            for x in vec:
                v = scalar_var(x)
                if v is not None and v != self.param:
                    raise ParameterClash(f"scalar in {v!r} but algebra parameter is {self.param!r}")
            lookup[i, j] = vec
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_products(
        cls,
        dim: int,
        products: Mapping[tuple[int, int], Sequence] | Iterable = (),
        *,
        name: str = "A",
        param: str | None = None,
        assumptions: AssumptionSet | Iterable = (),
        labels: Sequence[str] = (),
    ) -> AlgebraSpec:
        items = products.items() if isinstance(products, Mapping) else products
        table = {}
        for (i, j), vec in items:
            v = _clean_vector(vec, dim)
            if param is None:
                for x in v:
                    param = param or scalar_var(x)
            if not all(is_zero(x) for x in v):
                table[i, j] = v
        if not isinstance(assumptions, AssumptionSet):
            assumptions = AssumptionSet.of(assumptions, param)
        return cls(name, dim, tuple(sorted(table.items())), param, assumptions, tuple(labels))

    def product(self, i: int, j: int) -> tuple[Scalar, ...] | None:
        return self._lookup.get((i, j))

    def gamma(self, i: int, j: int, k: int) -> Scalar:
        vec = self._lookup.get((i, j))
        return vec[k] if vec is not None else ZERO

    def nonzero_constants(self):
        """Yield ``(i, j, k, gamma_ij^k)`` for every nonzero structure constant."""
        for (i, j), vec in self.table:
            for k, x in enumerate(vec):
                if not is_zero(x):
                    yield i, j, k, x

    def products(self) -> dict[tuple[int, int], tuple[Scalar, ...]]:
        return dict(self._lookup)

    def basis(self) -> list[tuple[Scalar, ...]]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def is_parametric(self) -> bool:
        return any(scalar_var(x) is not None for _, _, _, x in self.nonzero_constants())

    def renamed(self, name: str) -> AlgebraSpec:
        return AlgebraSpec(name, self.dim, self.table, self.param, self.assumptions, self.labels)

    def same_structure(self, other: AlgebraSpec) -> bool:
        return self.dim == other.dim and self.table == other.table


def multiply(A: AlgebraSpec, a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[Scalar, ...]:
    n = A.dim
    if len(a) != n or len(b) != n:
        raise DimensionMismatch(f"elements of length {len(a)}, {len(b)} in dimension {n}")
    out = [ZERO] * n
    for (i, j), vec in A.table:
        ai = a[i]
        if is_zero(ai):
            continue
        bj = b[j]
        if is_zero(bj):
            continue
        c = ai * bj
        for k, x in enumerate(vec):
            if not is_zero(x):
                out[k] = out[k] + c * x
    return tuple(out)


def _mul_basis(A: AlgebraSpec, i: int, j: int) -> tuple[Scalar, ...]:
    return A.product(i, j) or (ZERO,) * A.dim


def _combine(*terms) -> tuple[Scalar, ...]:
    """Sum of ``(coefficient, vector)`` pairs."""
    n = len(terms[0][1])
    out = [ZERO] * n
    for c, vec in terms:
        for k, x in enumerate(vec):
            if not is_zero(x):
                out[k] = out[k] + c * x
    return tuple(out)


@dataclass(frozen=True)
class IdentityReport:
    kind: str
    holds: bool
    witnesses: tuple[tuple[tuple[int, ...], tuple[Scalar, ...]], ...] = ()

    def __bool__(self):
        return self.holds


def _defects(A: AlgebraSpec, kind: str):
    n = A.dim
    e = A.basis()
    m = lambda x, y: multiply(A, x, y)  # noqa: E731
    if kind == "commutative":
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            yield (i, j), _combine((ONE, _mul_basis(A, i, j)), (-ONE, _mul_basis(A, j, i)))
        return
    if kind == "lie":
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            if i == j:
                yield (i, i), _mul_basis(A, i, i)
            else:
                yield (i, j), _combine((ONE, _mul_basis(A, i, j)), (ONE, _mul_basis(A, j, i)))
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = e[i], e[j], e[k]
        if kind == "zinbiel":
            d = _combine((ONE, m(m(a, b), c)), (-ONE, m(a, m(b, c))), (-ONE, m(a, m(c, b))))
        elif kind == "associative":
            d = _combine((ONE, m(m(a, b), c)), (-ONE, m(a, m(b, c))))
        elif kind == "prelie":
            d = _combine(
                (ONE, m(m(a, b), c)), (-ONE, m(a, m(b, c))), (-ONE, m(m(b, a), c)), (ONE, m(b, m(a, c)))
            )
        elif kind == "leibniz":
            d = _combine((ONE, m(a, m(b, c))), (-ONE, m(m(a, b), c)), (ONE, m(m(a, c), b)))
        elif kind == "lie":
            d = _combine((ONE, m(a, m(b, c))), (ONE, m(b, m(c, a))), (ONE, m(c, m(a, b))))
        else:
            raise ValueError(f"unknown identity kind {kind!r}")
        yield (i, j, k), d


def check_identity(kind: str, A: AlgebraSpec) -> IdentityReport:
    """Check a defining identity on all basis tuples (exact by multilinearity)."""
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity kind {kind!r}; expected one of {IDENTITY_KINDS}")
    witnesses = []
    for idx, defect in _defects(A, kind):
        if not all(is_zero(x) for x in defect):
            witnesses.append((tuple(t + 1 for t in idx), defect))
    return IdentityReport(kind, not witnesses, tuple(witnesses))


# -- dendriform ---------------------------------------------------------


@dataclass(frozen=True)
class DendriformSpec:
    """Two products on one space: ``left`` is the "prec" product, ``right`` the "succ" one."""

    left: AlgebraSpec
    right: AlgebraSpec

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise DimensionMismatch("dendriform tables of different dimension")

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def name(self) -> str:
        return self.left.name


def check_dendriform(D: DendriformSpec) -> IdentityReport:
    """Witness tuples are ``(axiom, i, j, k)`` with one-based indices."""
    n = D.dim
    e = D.left.basis()
    lt = lambda x, y: multiply(D.left, x, y)  # noqa: E731
    gt = lambda x, y: multiply(D.right, x, y)  # noqa: E731
    witnesses = []
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = e[i], e[j], e[k]
        axioms = (
            _combine((ONE, lt(lt(a, b), c)), (-ONE, lt(a, lt(b, c))), (-ONE, lt(a, gt(b, c)))),
            _combine((ONE, lt(gt(a, b), c)), (-ONE, gt(a, lt(b, c)))),
            _combine((ONE, gt(a, gt(b, c))), (-ONE, gt(lt(a, b), c)), (-ONE, gt(gt(a, b), c))),
        )
        for ax, d in enumerate(axioms, start=1):
            if not all(is_zero(x) for x in d):
                witnesses.append(((ax, i + 1, j + 1, k + 1), d))
    return IdentityReport("dendriform", not witnesses, tuple(witnesses))


# -- derived structures -------------------------------------------------


def _bilinear_table(n: int, f) -> dict:
    return {(i, j): f(i, j) for i in range(n) for j in range(n)}


def _derived(A: AlgebraSpec, name: str, f) -> AlgebraSpec:
    return AlgebraSpec.from_products(
        A.dim,
        _bilinear_table(A.dim, f),
        name=name,
        param=A.param,
        assumptions=A.assumptions,
        labels=A.labels,
    )


def symmetrize(A: AlgebraSpec) -> AlgebraSpec:
    """``a * b = a.b + b.a``."""
    return _derived(A, f"{A.name}_sym", lambda i, j: _combine((ONE, _mul_basis(A, i, j)), (ONE, _mul_basis(A, j, i))))


def opposite(A: AlgebraSpec) -> AlgebraSpec:
    return _derived(A, f"{A.name}_op", lambda i, j: _mul_basis(A, j, i))


def commutator(A: AlgebraSpec) -> AlgebraSpec:
    return _derived(A, f"{A.name}_lie", lambda i, j: _combine((ONE, _mul_basis(A, i, j)), (-ONE, _mul_basis(A, j, i))))


def zinbiel_to_dendriform(A: AlgebraSpec) -> DendriformSpec:
    return DendriformSpec(A.renamed(f"{A.name}_dend"), opposite(A).renamed(f"{A.name}_dend"))


def dendriform_to_associative(D: DendriformSpec) -> AlgebraSpec:
    return _derived(
        D.left,
        f"{D.name}_assoc",
        lambda i, j: _combine((ONE, _mul_basis(D.left, i, j)), (ONE, _mul_basis(D.right, i, j))),
    )


def dendriform_to_prelie(D: DendriformSpec) -> AlgebraSpec:
    """``a o b = a succ b - b prec a``."""
    return _derived(
        D.left,
        f"{D.name}_prelie",
        lambda i, j: _combine((ONE, _mul_basis(D.right, i, j)), (-ONE, _mul_basis(D.left, j, i))),
    )


def prelie_to_lie(A: AlgebraSpec) -> AlgebraSpec:
    return commutator(A)


DERIVE_KINDS = {
    "symmetrize": symmetrize,
    "zinbiel_to_dendriform": zinbiel_to_dendriform,
    "dendriform_to_associative": dendriform_to_associative,
    "dendriform_to_prelie": dendriform_to_prelie,
    "prelie_to_lie": prelie_to_lie,
    "opposite": opposite,
}


def derive_structure(kind: str, source):
    try:
        f = DERIVE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown derivation kind {kind!r}") from None
    takes_dendriform = kind.startswith("dendriform_")
    if takes_dendriform != isinstance(source, DendriformSpec):
        raise TypeError(f"{kind} expects a {'DendriformSpec' if takes_dendriform else 'AlgebraSpec'}")
    return f(source)


# -- subspaces ----------------------------------------------------------


def _left_mult_rows(A: AlgebraSpec, s: Sequence[Scalar]):
    """Sparse rows of the linear map ``a -> (a.s, s.a)`` (2n equations in a)."""
    n = A.dim
    rows = [dict() for _ in range(2 * n)]
    for (t, j), vec in A.table:
        sj, st = s[j], s[t]
        for k, x in enumerate(vec):
            if is_zero(x):
                continue
            # coefficient of a_t in (a.s)_k is sum_j s_j gamma_tj^k
            if not is_zero(sj):
                rows[k][t] = rows[k].get(t, ZERO) + sj * x
            # coefficient of a_j in (s.a)_k is sum_t s_t gamma_tj^k
            if not is_zero(st):
                rows[n + k][j] = rows[n + k].get(j, ZERO) + st * x
    return [{c: v for c, v in r.items() if not is_zero(v)} for r in rows]


def centralizer_rows(A: AlgebraSpec, S: Iterable[Sequence[Scalar]]) -> list[dict]:
    rows = []
    for s in S:
        rows.extend(_left_mult_rows(A, s))
    return rows


def centralizer(A: AlgebraSpec, S: Iterable[Sequence[Scalar]]) -> SubspaceBasis:
    """``{a : a.s = s.a = 0 for all s in S}``."""
    return nullspace_sparse(centralizer_rows(A, S), A.dim, A.assumptions)[0]


def center(A: AlgebraSpec) -> SubspaceBasis:
    return centralizer(A, A.basis())


def product_subspace(A: AlgebraSpec, U: SubspaceBasis, V: SubspaceBasis) -> SubspaceBasis:
    """``span{u.v}`` over basis vectors of U and V."""
    vecs = [multiply(A, u, v) for u in U.basis for v in V.basis]
    return SubspaceBasis.span(vecs, A.dim, A.assumptions)


def square(A: AlgebraSpec) -> SubspaceBasis:
    full = SubspaceBasis.full(A.dim)
    return product_subspace(A, full, full)


def power_chain(A: AlgebraSpec) -> list[SubspaceBasis]:
    """``A^1 = A``, ``A^{k+1} = A^k . A`` until the chain stabilizes."""
    full = SubspaceBasis.full(A.dim)
    chain = [full]
    while True:
        nxt = product_subspace(A, chain[-1], full)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
        if nxt.dim == 0:
            return chain


def is_ideal(A: AlgebraSpec, U: SubspaceBasis) -> bool:
    for u in U.basis:
        for e in A.basis():
            if not U.contains(multiply(A, e, u)) or not U.contains(multiply(A, u, e)):
                return False
    return True


def direct_sum(A: AlgebraSpec, B: AlgebraSpec, name: str | None = None) -> AlgebraSpec:
    if A.param and B.param and A.param != B.param:
        raise ParameterClash(f"summands carry parameters {A.param!r} and {B.param!r}")
    n, m = A.dim, B.dim
    products = {}
    for (i, j), vec in A.table:
        products[i, j] = tuple(vec) + (ZERO,) * m
    for (i, j), vec in B.table:
        products[n + i, n + j] = (ZERO,) * n + tuple(vec)
    return AlgebraSpec.from_products(
        n + m,
        products,
        name=name or f"{A.name}+{B.name}",
        param=A.param or B.param,
        assumptions=A.assumptions.union(B.assumptions),
    )


def change_of_basis(A: AlgebraSpec, P: Matrix, name: str | None = None) -> AlgebraSpec:
    """Structure constants in the basis ``e'_i = sum_t P[i][t] e_t``."""
    n = A.dim
    if len(P) != n or any(len(r) != n for r in P):
        raise DimensionMismatch("basis-change matrix has the wrong shape")
    P = [[to_scalar(x) for x in row] for row in P]
    Q = matrix_inverse(P, A.assumptions)
    # products of new basis vectors, expressed in old coordinates
    old = [[ZERO] * n for _ in range(n * n)]
    for (t, s), vec in A.table:
        for i in range(n):
            pit = P[i][t]
            if is_zero(pit):
                continue
            for j in range(n):
                c = pit * P[j][s]
                if is_zero(c):
                    continue
                row = old[i * n + j]
                for m_, x in enumerate(vec):
                    if not is_zero(x):
                        row[m_] = row[m_] + c * x
    products = {}
    for i in range(n):
        for j in range(n):
            row = old[i * n + j]
            if all(is_zero(x) for x in row):
                continue
            new = [ZERO] * n
            for m_, x in enumerate(row):
                if is_zero(x):
                    continue
                for k in range(n):
                    q = Q[m_][k]
                    if not is_zero(q):
                        new[k] = new[k] + x * q
            products[i, j] = new
    return AlgebraSpec.from_products(
        n, products, name=name or A.name, param=A.param, assumptions=A.assumptions, labels=A.labels
    )


def element(A: AlgebraSpec, coords: Sequence) -> tuple[Scalar, ...]:
    if len(coords) != A.dim:
        raise DimensionMismatch(f"element of length {len(coords)} in dimension {A.dim}")
    return tuple(to_scalar(x) if not isinstance(x, int) else Fraction(x) for x in coords)


def specialize(A: AlgebraSpec, value, name: str | None = None) -> AlgebraSpec:
    """Substitute ``param = value`` in every structure constant."""
    from .scalars import evaluate_at

    value = Fraction(value)
    bad = A.assumptions.violated_by(value)
    if bad is not None:
        from .scalars import AssumptionViolated

        raise AssumptionViolated(f"{A.param} = {value} violates the assumption {bad} != 0")
    products = {key: [evaluate_at(x, value) for x in vec] for key, vec in A.table}
    return AlgebraSpec.from_products(A.dim, products, name=name or f"{A.name}[{A.param}={value}]", labels=A.labels)


def with_assumptions(A: AlgebraSpec, extra) -> AlgebraSpec:
    if not isinstance(extra, AssumptionSet):
        extra = AssumptionSet.of(extra, A.param)
    return AlgebraSpec(A.name, A.dim, A.table, A.param or extra.var, A.assumptions.union(extra), A.labels)

"""Exact linear algebra over the scalar field.

Matrices are plain lists of rows.  Elimination works on sparse rows
(``{column: nonzero scalar}``), which suits the constraint systems built for
derivations and centroids: thousands of rows, mostly zero or repeated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import (
    YES,
    AssumptionSet,
    Conditional,
    Poly,
    RatFunc,
    Scalar,
    evaluate_at,
    inv,
    is_assumed_nonzero,
    is_zero,
    poly_gcd,
)

ZERO = Fraction(0)
ONE = Fraction(1)

Matrix = list  # list[list[Scalar]]
Vector = tuple  # tuple[Scalar, ...]


class AmbientMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    specialization_polys: tuple[Poly, ...] = ()

    def merge(self, other: RankCertificate) -> tuple[Poly, ...]:
        return _merge_polys(self.specialization_polys, other.specialization_polys)


def _merge_polys(*groups: Iterable[Poly]) -> tuple[Poly, ...]:
    out: list[Poly] = []
    for g in groups:
        for p in g:
            if p not in out:
                out.append(p)
    return tuple(sorted(out, key=lambda q: (q.degree, q.coeffs)))


def _sparse(row: Sequence[Scalar]) -> dict[int, Scalar]:
    return {c: v for c, v in enumerate(row) if not is_zero(v)}


def _row_key(row: dict[int, Scalar]):
    return tuple(sorted(row.items(), key=lambda kv: kv[0]))


def eliminate(rows: Iterable[dict[int, Scalar]], ncols: int, assumptions: AssumptionSet | None = None):
    """Gauss-Jordan elimination on sparse rows.

    Returns ``(pivots, specs)`` where ``pivots`` is a list of
    ``(pivot_column, row)`` in increasing column order with each row scaled
    to pivot 1 and reduced against all other pivots, and ``specs`` lists the
    conditional pivot factors taken as nonzero.
    """
    pending: list[dict[int, Scalar]] = []
    seen = set()
    for r in rows:
        if not r:
            continue
        key = _row_key(r)
        if key in seen:
            continue
        seen.add(key)
        pending.append(dict(r))
    done: list[tuple[int, dict[int, Scalar]]] = []
    specs: list[Poly] = []
    for c in range(ncols):
        # Markowitz-style choice: rational pivots in short rows first, then
        # rational functions known nonzero, then conditional ones
        pick = None
        pick_status = None
        best = None
        for idx, r in enumerate(pending):
            v = r.get(c)
            if v is None:
                continue
            if not isinstance(v, RatFunc):
                score = (0, len(r))
                status = YES
            else:
                status = is_assumed_nonzero(v, assumptions)
                size = v.num.degree + v.den.degree
                score = (1 if status == YES else 2, size, len(r))
            if best is None or score < best:
                best, pick, pick_status = score, idx, status
                if score[:2] == (0, 1):
                    break
        if pick is None:
            continue
        if isinstance(pick_status, Conditional) and pick_status.factor not in specs:
            specs.append(pick_status.factor)
        prow = pending.pop(pick)
        pv = prow[c]
        if pv != ONE:
            f = inv(pv)
            prow = {k: v * f for k, v in prow.items()}
            prow[c] = ONE
        for r in pending:
            _reduce(r, prow, c)
        for _, r in done:
            _reduce(r, prow, c)
        pending = [r for r in pending if r]
        done.append((c, prow))
        if not pending:
            break
    return done, tuple(sorted(specs, key=lambda q: (q.degree, q.coeffs)))


def _reduce(r: dict[int, Scalar], prow: dict[int, Scalar], c: int) -> None:
    f = r.get(c)
    if f is None:
        return
    for k, v in prow.items():
        s = r.get(k, ZERO) - f * v
        if is_zero(s):
            r.pop(k, None)
        else:
            r[k] = s
    r.pop(c, None)


def rref(m: Matrix, assumptions: AssumptionSet | None = None, ncols: int | None = None):
    """Reduced row echelon form (zero rows dropped) and a rank certificate."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots, specs = eliminate((_sparse(r) for r in m), ncols, assumptions)
    out = [[r.get(k, ZERO) for k in range(ncols)] for _, r in pivots]
    return out, RankCertificate(len(pivots), specs)


def rank(m: Matrix, assumptions: AssumptionSet | None = None) -> int:
    return rref(m, assumptions)[1].rank


def nullspace_sparse(rows: Iterable[dict[int, Scalar]], ncols: int, assumptions=None):
    pivots, specs = eliminate(rows, ncols, assumptions)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for c, r in pivots:
            x = r.get(f)
            if x is not None:
                v[c] = -x
        basis.append(v)
    cert = RankCertificate(len(pivots), specs)
    return SubspaceBasis.span(basis, ncols, assumptions), cert


def nullspace(m: Matrix, assumptions: AssumptionSet | None = None, ncols: int | None = None):
    """Basis of ``{v : m v = 0}`` and the rank certificate of ``m``."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return nullspace_sparse((_sparse(r) for r in m), ncols, assumptions)


# -- certified shortcut -------------------------------------------------
#
# rank over Q(t) >= rank at any admissible t = a >= rank mod p of that
# specialization, so a modular rank gives an exact upper bound on nullity.
# Candidate vectors verified exactly against every row give the matching
# lower bound; when the two meet, the span of the candidates is the nullspace.

_PRIMES = (2_147_483_647, 2_147_483_629)
_SAMPLE_POINTS = (7919, 104_729, 15_485_863)


def _mod(x: Scalar, p: int, a: int) -> int | None:
    if isinstance(x, Fraction):
        d = x.denominator % p
        return None if d == 0 else x.numerator * pow(d, -1, p) % p
    num = _mod_poly(x.num, p, a)
    den = _mod_poly(x.den, p, a)
    if num is None or den is None or den == 0:
        return None
    return num * pow(den, -1, p) % p


def _mod_poly(f: Poly, p: int, a: int) -> int | None:
    acc = 0
    for c in reversed(f.coeffs):
        d = c.denominator % p
        if d == 0:
            return None
        acc = (acc * a + c.numerator * pow(d, -1, p)) % p
    return acc


def rank_mod_p(rows: Iterable[dict[int, Scalar]], ncols: int, p: int, a: int = 0) -> int | None:
    """Rank of the rows reduced mod p after setting the parameter to ``a``.

    Returns None when some entry has no image (a denominator vanishes).
    """
    dense = []
    for r in rows:
        v = [0] * ncols
        for c, x in r.items():
            m = _mod(x, p, a)
            if m is None:
                return None
            v[c] = m
        if any(v):
            dense.append(v)
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(dense)) if dense[i][c]), None)
        if piv is None:
            continue
        dense[rk], dense[piv] = dense[piv], dense[rk]
        pr = dense[rk]
        f = pow(pr[c], -1, p)
        pr[:] = [x * f % p for x in pr]
        for i in range(rk + 1, len(dense)):
            g = dense[i][c]
            if g:
                row = dense[i]
                row[:] = [(x - g * y) % p for x, y in zip(row, pr)]
        rk += 1
        if rk == len(dense):
            break
    return rk


def _integer_polys(values) -> list[tuple[int, ...]]:
    """A common multiple of the scalars with integer polynomial entries.

    Entries are coefficient tuples, lowest degree first; the multiplier is a
    nonzero polynomial, so vanishing of dot products is preserved.
    """
    den = None
    for x in values:
        if isinstance(x, RatFunc) and x.den.degree > 0:
            den = x.den if den is None else den * (x.den // poly_gcd(den, x.den))
    polys = []
    for x in values:
        if isinstance(x, RatFunc):
            polys.append(x.num * (den // x.den) if den is not None else x.num)
        elif den is not None:
            polys.append(den * x)
        else:
            polys.append(Poly((x,)))
    lcm = 1
    for f in polys:
        for c in f.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [tuple(c.numerator * (lcm // c.denominator) for c in f.coeffs) for f in polys]


def _all_satisfied(rows, candidates) -> bool:
    """Exact check that every candidate vector is annihilated by every row.

    Each dot product is a polynomial of degree at most D once denominators are
    cleared, so vanishing at D + 1 integer points proves it is zero.
    """
    int_rows = []
    for r in rows:
        cols = list(r)
        int_rows.append(list(zip(cols, _integer_polys([r[c] for c in cols]))))
    int_cands = [_integer_polys(v) for v in candidates]
    deg = max((len(f) - 1 for r in int_rows for _, f in r), default=0)
    deg += max((len(f) - 1 for v in int_cands for f in v), default=0)

    def at(f, a):
        acc = 0
        for c in reversed(f):
            acc = acc * a + c
        return acc

    for a in range(deg + 1):
        rows_a = [[(c, at(f, a)) for c, f in r] for r in int_rows]
        for v in int_cands:
            va = [at(f, a) for f in v]
            if any(sum(x * va[c] for c, x in r) for r in rows_a):
                return False
    return True


def certified_nullspace(rows, ncols: int, candidates, assumptions=None) -> SubspaceBasis | None:
    """Span of ``candidates`` if it is provably the whole nullspace, else None."""
    rows = [r for r in rows if r]
    candidates = [list(v) for v in candidates]
    if not _all_satisfied(rows, candidates):
        return None
    span = SubspaceBasis.span(candidates, ncols, assumptions)
    for p in _PRIMES:
        for a in _SAMPLE_POINTS:
            if assumptions is not None and assumptions.violated_by(Fraction(a)) is not None:
                continue
            rk = rank_mod_p(rows, ncols, p, a)
            if rk is None:
                continue
            if ncols - rk == span.dim:
                return span
    return None


@dataclass(frozen=True)
class SubspaceBasis:
    """Subspace of coordinate space, held by its canonical RREF basis.

    Equal subspaces compare equal structurally.
    """

    ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient: int, assumptions=None) -> SubspaceBasis:
        pivots, _ = eliminate((_sparse(v) for v in vectors), ambient, assumptions)
        return cls(ambient, tuple(tuple(r.get(k, ZERO) for k in range(ambient)) for _, r in pivots))

    @classmethod
    def zero(cls, ambient: int) -> SubspaceBasis:
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> SubspaceBasis:
        return cls(ambient, tuple(unit_vector(ambient, i) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def _check(self, other: SubspaceBasis):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"ambient dims {self.ambient} and {other.ambient}")

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if not is_zero(x)) for v in self.basis]

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        r = list(v)
        for p, b in zip(self.pivots(), self.basis):
            f = r[p]
            if not is_zero(f):
                r = [x - f * y for x, y in zip(r, b)]
        return all(is_zero(x) for x in r)

    def contains_space(self, other: SubspaceBasis) -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: SubspaceBasis, assumptions=None) -> SubspaceBasis:
        self._check(other)
        return SubspaceBasis.span(self.basis + other.basis, self.ambient, assumptions)

    def annihilator(self, assumptions=None) -> list[list[Scalar]]:
        """Rows ``w`` with ``w . v = 0`` for all v in the subspace."""
        space, _ = nullspace([list(v) for v in self.basis], assumptions, ncols=self.ambient)
        return [list(w) for w in space.basis]

    def intersect(self, other: SubspaceBasis, assumptions=None) -> SubspaceBasis:
        self._check(other)
        eqs = self.annihilator(assumptions) + other.annihilator(assumptions)
        return nullspace(eqs, assumptions, ncols=self.ambient)[0]

    def coordinates(self, v: Sequence[Scalar]) -> list[Scalar]:
        """Coefficients of ``v`` on the RREF basis (v must be a member)."""
        return [v[p] for p in self.pivots()]


def intersect(a: SubspaceBasis, b: SubspaceBasis, assumptions=None) -> SubspaceBasis:
    return a.intersect(b, assumptions)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis, assumptions=None) -> SubspaceBasis:
    return a.sum(b, assumptions)


def subspace_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    a._check(b)
    return a.basis == b.basis


def contains(a: SubspaceBasis, v: Sequence[Scalar]) -> bool:
    return a.contains(v)


# -- dense helpers -------------------------------------------------------


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return [list(unit_vector(n, i)) for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for t in range(inner):
            x = row[t]
            if is_zero(x):
                continue
            bt = b[t]
            for k in range(cols):
                y = bt[k]
                if not is_zero(y):
                    acc[k] = acc[k] + x * y
        out.append(acc)
    return out


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a: Matrix, s: Scalar) -> Matrix:
    return [[x * s for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def is_zero_matrix(a: Matrix) -> bool:
    return all(is_zero(x) for row in a for x in row)


def matrix_inverse(p: Matrix, assumptions: AssumptionSet | None = None) -> Matrix:
    """Inverse via RREF of ``[P | I]``; conditional pivots count as singular."""
    n = len(p)
    aug = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(p)]
    red, cert = rref(aug, assumptions, ncols=2 * n)
    if cert.specialization_polys:
        raise SingularMatrix(
            "invertibility depends on the parameter: "
            + ", ".join(str(q) for q in cert.specialization_polys)
        )
    if cert.rank < n or any(is_zero(red[i][i]) for i in range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red]


def vectorize(m: Matrix) -> Vector:
    """Row-major flattening."""
    return tuple(x for row in m for x in row)


def unvectorize(v: Sequence[Scalar], rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return [list(v[i * cols:(i + 1) * cols]) for i in range(rows)]


def evaluate_matrix(m: Matrix, value, assumptions=None) -> Matrix:
    return [[evaluate_at(x, value, assumptions) for x in row] for row in m]

"""Derivations, centroid and central derivations as nullspaces.

An endomorphism is stored row-major as the matrix ``a`` with
``phi(e_i) = sum_t a[i][t] e_t``; its coordinate vector has ``a[i][t]`` at
position ``i*n + t``.  In this convention the matrix of ``phi o psi`` is
``psi @ phi``, see :func:`compose`.
"""
from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import AlgebraSpec, centralizer_rows, change_of_basis, direct_sum, square
from .linalg import (
    ZERO,
    Matrix,
    RankCertificate,
    SubspaceBasis,
    certified_nullspace,
    eliminate,
    matmul,
    matrix_inverse,
    matsub,
    nullspace_sparse,
    unvectorize,
    vectorize,
)
from .parsing import parse_linear
from .scalars import ParameterClash, Scalar, is_zero, scalar_str


@dataclass(frozen=True)
class EndoSpace:
    n: int
    space: SubspaceBasis
    cert: RankCertificate = field(default=RankCertificate(0), compare=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        return [unvectorize(v, self.n) for v in self.space.basis]

    def contains(self, m: Matrix) -> bool:
        return self.space.contains(vectorize(m))

    def contains_space(self, other: EndoSpace) -> bool:
        return self.space.contains_space(other.space)

    def __eq__(self, other):
        if not isinstance(other, EndoSpace):
            return NotImplemented
        return self.n == other.n and self.space == other.space

    def __hash__(self):
        return hash((self.n, self.space))


def compose(phi: Matrix, psi: Matrix) -> Matrix:
    """Matrix of ``phi o psi`` (apply psi first)."""
    return matmul(psi, phi)


def bracket(phi: Matrix, psi: Matrix) -> Matrix:
    """``[phi, psi] = phi o psi - psi o phi``."""
    return matsub(compose(phi, psi), compose(psi, phi))


# -- constraint systems -------------------------------------------------


@lru_cache(maxsize=64)
def _families(A: AlgebraSpec):
    """The three linear forms of the central-derivation system, per (i, j, k).

    F1 = sum_t gamma_ij^t a_tk   (phi(e_i . e_j))
    F2 = sum_t a_it gamma_tj^k   (phi(e_i) . e_j)
    F3 = sum_t a_jt gamma_it^k   (e_i . phi(e_j))
    """
    n = A.dim
    f1, f2, f3 = defaultdict(dict), defaultdict(dict), defaultdict(dict)

    def add(rows, key, var, val):
        r = rows[key]
        s = r.get(var, ZERO) + val
        if is_zero(s):
            r.pop(var, None)
        else:
            r[var] = s

    for i, j, t, g in A.nonzero_constants():
        for k in range(n):
            add(f1, (i, j, k), t * n + k, g)
    # g = gamma_tj^k; F2(i, j, k) gets g at a_it for every i
    for t, j, k, g in A.nonzero_constants():
        for i in range(n):
            add(f2, (i, j, k), i * n + t, g)
    # g = gamma_it^k; F3(i, j, k) gets g at a_jt for every j
    for i, t, k, g in A.nonzero_constants():
        for j in range(n):
            add(f3, (i, j, k), j * n + t, g)
    return f1, f2, f3


def _combine_rows(*signed):
    keys = set()
    for _, fam in signed:
        keys.update(fam)
    out = []
    for key in sorted(keys):
        row: dict[int, Scalar] = {}
        for sign, fam in signed:
            for var, val in fam.get(key, {}).items():
                s = row.get(var, ZERO) + (val if sign > 0 else -val)
                if is_zero(s):
                    row.pop(var, None)
                else:
                    row[var] = s
        if row:
            out.append(row)
    return out


def derivation_rows(A: AlgebraSpec):
    f1, f2, f3 = _families(A)
    return _combine_rows((1, f1), (-1, f2), (-1, f3))


def centroid_rows(A: AlgebraSpec):
    f1, f2, f3 = _families(A)
    return _combine_rows((1, f1), (-1, f2)) + _combine_rows((1, f1), (-1, f3))


def cd_equation_rows(A: AlgebraSpec):
    f1, f2, f3 = _families(A)
    return _combine_rows((1, f1)) + _combine_rows((1, f2)) + _combine_rows((1, f3))


def _solve(A: AlgebraSpec, rows) -> EndoSpace:
    space, cert = nullspace_sparse(rows, A.dim * A.dim, A.assumptions)
    return EndoSpace(A.dim, space, cert)


@lru_cache(maxsize=512)
def derivation_space(A: AlgebraSpec) -> EndoSpace:
    return _solve(A, derivation_rows(A))


@lru_cache(maxsize=512)
def centroid_space(A: AlgebraSpec) -> EndoSpace:
    return _solve(A, centroid_rows(A))


@lru_cache(maxsize=512)
def cd_equational(A: AlgebraSpec) -> EndoSpace:
    """Central derivations as the nullspace of the three families, each zero."""
    return _solve(A, cd_equation_rows(A))


def hom_restriction_rows(Ai: AlgebraSpec, Aj: AlgebraSpec):
    """Rows in the unknowns a[r][t] (phi(e_r) = sum_t a[r][t] f_t, r < n_i, t < n_j)."""
    ni, nj = Ai.dim, Aj.dim
    rows = []
    # membership: every phi(e_r) lies in the center of Aj
    for q in centralizer_rows(Aj, Aj.basis()):
        if not q:
            continue
        for r in range(ni):
            rows.append({r * nj + t: v for t, v in q.items()})
    # annihilation: phi(v) = 0 for v in a basis of Ai . Ai
    for v in square(Ai).basis:
        for t in range(nj):
            row = {r * nj + t: x for r, x in enumerate(v) if not is_zero(x)}
            if row:
                rows.append(row)
    return rows


def hom_restriction_space(Ai: AlgebraSpec, Aj: AlgebraSpec) -> SubspaceBasis:
    """Linear maps Ai -> center(Aj) that vanish on Ai . Ai (row-major, n_i x n_j)."""
    assumptions = Ai.assumptions.union(Aj.assumptions)
    return nullspace_sparse(hom_restriction_rows(Ai, Aj), Ai.dim * Aj.dim, assumptions)[0]


@lru_cache(maxsize=512)
def cd_definitional(A: AlgebraSpec) -> EndoSpace:
    """Central derivations straight from the definition: image in the center, kills A.A."""
    return _solve(A, hom_restriction_rows(A, A))


@lru_cache(maxsize=512)
def cd_intersection(A: AlgebraSpec) -> EndoSpace:
    d, g = derivation_space(A), centroid_space(A)
    return EndoSpace(A.dim, d.space.intersect(g.space, A.assumptions))


# -- parametric rendering -----------------------------------------------


@dataclass(frozen=True)
class ParametricMatrixView:
    """Entries are ``{symbol: coefficient}`` linear forms."""

    convention: str
    symbols: tuple[str, ...]
    entries: tuple[tuple[tuple[tuple[str, Scalar], ...], ...], ...]

    def entry_str(self, r: int, c: int) -> str:
        return _linear_form_str(self.entries[r][c])

    def rows_str(self) -> list[list[str]]:
        n = len(self.entries)
        return [[self.entry_str(r, c) for c in range(n)] for r in range(n)]

    def __str__(self):
        grid = self.rows_str()
        width = max((len(s) for row in grid for s in row), default=1)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in grid)


def _linear_form_str(form) -> str:
    if not form:
        return "0"
    out = ""
    for sym, c in form:
        if c == 1:
            sign, body = "+", sym
        elif c == -1:
            sign, body = "-", sym
        elif isinstance(c, Fraction):
            sign, body = ("-" if c < 0 else "+"), f"{abs(c)}*{sym}"
        else:
            sign, body = "+", f"({scalar_str(c)})*{sym}"
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out


def render_parametric(E: EndoSpace, convention: str = "column") -> ParametricMatrixView:
    """Assign one free symbol per basis vector, named after the displayed
    position of that vector's pivot coordinate."""
    if convention not in ("row", "column"):
        raise ValueError("convention must be 'row' or 'column'")
    n = E.n

    def pos(idx):
        i, t = divmod(idx, n)
        return (i, t) if convention == "row" else (t, i)

    names = []
    for p in E.space.pivots():
        r, c = pos(p)
        names.append(f"a{r + 1}{c + 1}" if n < 10 else f"a{r + 1}_{c + 1}")
    grid = [[[] for _ in range(n)] for _ in range(n)]
    for name, vec in zip(names, E.space.basis):
        for idx, x in enumerate(vec):
            if not is_zero(x):
                r, c = pos(idx)
                grid[r][c].append((name, x))
    entries = tuple(tuple(tuple(sorted(cell)) for cell in row) for row in grid)
    return ParametricMatrixView(convention, tuple(names), entries)


def printed_space(matrix: Sequence[Sequence[str]], convention: str, param_name=None, binding=None, assumptions=None):
    """Subspace spanned by a printed parametric matrix such as ``[["0", "0"], ["a21", "0"]]``.

    Entries are linear forms in symbols ``a<r><c>``; with ``binding`` the
    parameter is substituted first.
    """
    import re

    from .scalars import evaluate_at

    n = len(matrix)
    symbols = sorted({s for row in matrix for cell in row for s in re.findall(r"a\d+", cell)})
    index = {s: k for k, s in enumerate(symbols)}
    vectors = [[ZERO] * (n * n) for _ in symbols]
    for r, row in enumerate(matrix):
        for c, cell in enumerate(row):
            form = parse_linear(cell, param_name=param_name, basis=index, dim=None) if cell.strip() != "0" else {}
            i, t = (r, c) if convention == "row" else (c, r)
            for k, coeff in form.items():
                if binding is not None:
                    coeff = evaluate_at(coeff, binding)
                vectors[k][i * n + t] = coeff
    return SubspaceBasis.span(vectors, n * n, assumptions)


# -- structural checks --------------------------------------------------


@dataclass
class ClosureReport:
    centroid_pairs: int = 0
    centroid_failures: list = field(default_factory=list)
    cd_pairs: int = 0
    cd_failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.centroid_failures and not self.cd_failures


def check_bracket_closure(A: AlgebraSpec) -> ClosureReport:
    """[Gamma, Gamma] lies in CD, and CD is closed under the bracket."""
    cd = cd_equational(A)
    gam = centroid_space(A).matrices()
    rep = ClosureReport()
    for x in range(len(gam)):
        for y in range(x + 1, len(gam)):
            rep.centroid_pairs += 1
            if not cd.contains(bracket(gam[x], gam[y])):
                rep.centroid_failures.append((x, y))
    cdm = cd.matrices()
    for x in range(len(cdm)):
        for y in range(x + 1, len(cdm)):
            rep.cd_pairs += 1
            if not cd.contains(bracket(cdm[x], cdm[y])):
                rep.cd_failures.append((x, y))
    return rep


@dataclass
class CompositionReport:
    pairs: int = 0
    failures: list = field(default_factory=list)
    cd_in_der: bool = True
    cd_in_centroid: bool = True

    @property
    def holds(self) -> bool:
        return not self.failures and self.cd_in_der and self.cd_in_centroid


def composition_checks(A: AlgebraSpec) -> CompositionReport:
    der, gam, cd = derivation_space(A), centroid_space(A), cd_equational(A)
    rep = CompositionReport()
    dm = der.matrices()
    for x, phi in enumerate(gam.matrices()):
        for y, d in enumerate(dm):
            rep.pairs += 1
            if not der.contains(compose(phi, d)):
                rep.failures.append((x, y))
    rep.cd_in_der = der.contains_space(cd)
    rep.cd_in_centroid = gam.contains_space(cd)
    return rep


# -- direct sums --------------------------------------------------------


@dataclass(frozen=True)
class SumDecompositionReport:
    name: str
    dim_sum: int
    dim_a: int
    dim_b: int
    dim_c1: int
    dim_c2: int
    embedded_contained: bool
    embedded_independent: bool

    @property
    def parts_total(self) -> int:
        return self.dim_a + self.dim_b + self.dim_c1 + self.dim_c2

    @property
    def equal(self) -> bool:
        return self.dim_sum == self.parts_total


def _embed(block: Matrix, n: int, row0: int, col0: int) -> Matrix:
    out = [[ZERO] * n for _ in range(n)]
    for r, row in enumerate(block):
        for c, x in enumerate(row):
            out[row0 + r][col0 + c] = x
    return out


def direct_sum_centroid_report(A: AlgebraSpec, B: AlgebraSpec) -> SumDecompositionReport:
    """Compare the centroid of A+B with Gamma(A) + Gamma(B) + C1 + C2.

    C1 = maps A -> center(B) killing A.A, C2 likewise from B to A.
    """
    if A.param and B.param and A.param != B.param:
        raise ParameterClash(f"summands carry parameters {A.param!r} and {B.param!r}")
    S = direct_sum(A, B)
    na, nb, n = A.dim, B.dim, A.dim + B.dim
    gs = centroid_space(S)
    ga, gb = centroid_space(A), centroid_space(B)
    c1, c2 = hom_restriction_space(A, B), hom_restriction_space(B, A)
    embedded = [_embed(m, n, 0, 0) for m in ga.matrices()]
    embedded += [_embed(m, n, na, na) for m in gb.matrices()]
    embedded += [_embed(unvectorize(v, na, nb), n, 0, na) for v in c1.basis]
    embedded += [_embed(unvectorize(v, nb, na), n, na, 0) for v in c2.basis]
    contained = all(gs.contains(m) for m in embedded)
    span = SubspaceBasis.span([vectorize(m) for m in embedded], n * n, S.assumptions)
    return SumDecompositionReport(
        S.name, gs.dim, ga.dim, gb.dim, c1.dim, c2.dim, contained, span.dim == len(embedded)
    )


# -- isomorphism transport ----------------------------------------------


@dataclass(frozen=True)
class TransportReport:
    dims_before: tuple[int, int, int]
    dims_after: tuple[int, int, int]
    conjugates_in_cd: bool
    conjugates_span_cd: bool

    @property
    def passed(self) -> bool:
        return self.dims_before == self.dims_after and self.conjugates_in_cd and self.conjugates_span_cd


def conjugate(m: Matrix, P: Matrix, Q: Matrix) -> Matrix:
    """Row-convention matrix of the same endomorphism in the basis given by P."""
    return matmul(matmul(P, m), Q)


def transport_conjugation(A: AlgebraSpec, P: Matrix, exhaustive: bool = False) -> TransportReport:
    """Compare Der, Gamma and CD of A with those of A in the basis given by P.

    By default the spaces of the new algebra are certified rather than solved:
    the conjugated bases are checked exactly against its equations, and a
    modular rank bounds the nullity from above.  Any gap falls back to a full
    solve, as does ``exhaustive=True``.
    """
    B = change_of_basis(A, P)
    Q = matrix_inverse(P, A.assumptions)
    n2 = A.dim**2
    spaces = []
    for solve, rows_of in ((derivation_space, derivation_rows), (centroid_space, centroid_rows),
                           (cd_equational, cd_equation_rows)):
        conj = [vectorize(conjugate(m, P, Q)) for m in solve(A).matrices()]
        space = None if exhaustive else certified_nullspace(rows_of(B), n2, conj, B.assumptions)
        if space is None:
            space = solve(B).space
        spaces.append((solve(A).dim, space, conj))
    before = tuple(d for d, _, _ in spaces)
    after = tuple(sp.dim for _, sp, _ in spaces)
    cd_b, conj = spaces[2][1], spaces[2][2]
    inside = all(cd_b.contains(v) for v in conj)
    spans = SubspaceBasis.span(conj, n2, B.assumptions) == cd_b
    return TransportReport(before, after, inside, spans)


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> Matrix:
    """Integer matrix with determinant +-1: a permutation times elementary shears."""
    perm = list(range(n))
    rng.shuffle(perm)
    m = [[Fraction(1) if perm[i] == j else ZERO for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return m


# -- theorem probes -----------------------------------------------------


@dataclass
class ProbeReport:
    samples: int
    counts: Counter

    def implication(self, a: str, b: str) -> tuple[int, int]:
        """(cases where a holds, of those where b also holds)."""
        total = sum(v for k, v in self.counts.items() if dict(k)[a])
        good = sum(v for k, v in self.counts.items() if dict(k)[a] and dict(k)[b])
        return total, good

    def summary(self) -> dict:
        pairs = [
            ("d.phi in Gamma", "phi.d in CD"),
            ("phi.d in CD", "d.phi in Gamma"),
            ("d.phi in Der", "[d,phi] in CD"),
            ("[d,phi] in CD", "d.phi in Der"),
        ]
        out = {}
        for a, b in pairs:
            total, good = self.implication(a, b)
            out[f"{a} => {b}"] = {"premise": total, "conclusion_holds": good}
        return out


def _random_combo(mats: list[Matrix], rng: random.Random) -> Matrix:
    n = len(mats[0])
    out = [[ZERO] * n for _ in range(n)]
    for m in mats:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if c:
            out = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, m)]
    return out


def t2_probe(A: AlgebraSpec, samples: int = 20, seed: int = 0) -> ProbeReport:
    """Tabulate, without asserting, the d/phi membership predicates."""
    rng = random.Random(seed)
    der, gam, cd = derivation_space(A), centroid_space(A), cd_equational(A)
    dm, gm = der.matrices(), gam.matrices()
    ds = list(dm) + [_random_combo(dm, rng) for _ in range(samples)] if dm else []
    gs = list(gm) + [_random_combo(gm, rng) for _ in range(samples)] if gm else []
    pairs = [(d, p) for d in ds for p in gs]
    if len(pairs) > samples * samples:
        pairs = rng.sample(pairs, samples * samples)
    counts = Counter()
    for d, phi in pairs:
        d_phi = compose(d, phi)
        key = (
            ("d.phi in Gamma", gam.contains(d_phi)),
            ("phi.d in CD", cd.contains(compose(phi, d))),
            ("d.phi in Der", der.contains(d_phi)),
            ("[d,phi] in CD", cd.contains(bracket(d, phi))),
        )
        counts[key] += 1
    return ProbeReport(len(pairs), counts)


def constraint_rank(A: AlgebraSpec) -> int:
    pivots, _ = eliminate(cd_equation_rows(A), A.dim * A.dim, A.assumptions)
    return len(pivots)

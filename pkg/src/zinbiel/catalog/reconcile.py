"""Compare computed central-derivation data with the printed tables."""
from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from ..algebra import AlgebraSpec, center, check_identity, multiply, specialize, with_assumptions
from ..decompose import decomposability, verify_witness
from ..invariants import (
    cd_definitional,
    cd_equational,
    cd_intersection,
    centroid_space,
    constraint_rank,
    derivation_space,
    printed_space,
    render_parametric,
)
from ..linalg import SubspaceBasis, vectorize
from ..parsing import parse_scalar
from ..scalars import Poly, is_zero, scalar_str

SCHEMA = 1


@dataclass(frozen=True)
class Certificate:
    """Evidence for a computed CD dimension.

    ``basis`` holds row-convention matrices (``phi(e_i) = sum_t m[i][t] e_t``)
    spanning CD; ``constraint_rank`` is the rank of the stacked three-family
    system in ``unknowns = n*n`` variables, so ``dim CD = unknowns - rank``.
    """

    entry: str
    case: str
    param: str | None
    binding: str | None
    computed_dim: int
    claimed_dim: int
    basis: tuple[tuple[tuple[str, ...], ...], ...]
    constraint_rank: int
    unknowns: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["basis"] = [[list(r) for r in m] for m in self.basis]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        basis = tuple(tuple(tuple(r) for r in m) for m in d["basis"])
        fields = {k: d[k] for k in cls.__dataclass_fields__ if k != "basis"}
        return cls(basis=basis, **fields)


def make_certificate(A: AlgebraSpec, entry: str, case: str, claimed: int, binding: str | None = None) -> Certificate:
    cd = cd_equational(A)
    basis = tuple(tuple(tuple(scalar_str(x) for x in row) for row in m) for m in cd.matrices())
    return Certificate(entry, case, A.param, binding, cd.dim, claimed, basis, constraint_rank(A), A.dim**2)


def satisfies_cd_families(A: AlgebraSpec, m) -> bool:
    """phi(e_i.e_j) = phi(e_i).e_j = e_i.phi(e_j) = 0, evaluated through the product."""
    n = A.dim
    e = A.basis()

    def phi(v):
        out = [Fraction(0)] * n
        for r, c in enumerate(v):
            if not is_zero(c):
                out = [x + c * y for x, y in zip(out, m[r])]
        return tuple(out)

    for i in range(n):
        for j in range(n):
            for vec in (phi(multiply(A, e[i], e[j])), multiply(A, tuple(m[i]), e[j]), multiply(A, e[i], tuple(m[j]))):
                if not all(is_zero(x) for x in vec):
                    return False
    return True


def verify_certificate(A: AlgebraSpec, cert: Certificate) -> bool:
    n = A.dim
    mats = [[[parse_scalar(x, cert.param) for x in row] for row in m] for m in cert.basis]
    if len(mats) != cert.computed_dim:
        return False
    if not all(satisfies_cd_families(A, m) for m in mats):
        return False
    span = SubspaceBasis.span([vectorize(m) for m in mats], n * n, A.assumptions)
    if span.dim != len(mats):
        return False
    return cert.unknowns == n * n and constraint_rank(A) == cert.constraint_rank == n * n - cert.computed_dim


@dataclass
class ReconciliationRow:
    entry: str
    table: int
    case: str
    algebra_note: str
    zinbiel_holds: bool
    zinbiel_witnesses: int
    dim_der: int
    dim_centroid: int
    dim_center: int
    dim_cd: int
    cd_agreement: bool
    claimed_cd: int
    match: bool
    shape_match: dict
    support_match: dict
    best_convention: str
    computed_matrix: list
    specialization_polys: list
    certificate: Certificate | None
    decomposable_claim: str | None
    paper_criterion: bool
    structural: str
    structural_note: str
    witness_verified: bool | None
    unreliable_source: bool
    errata: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if k != "certificate"}
        d["certificate"] = self.certificate.to_dict() if self.certificate else None
        return d


@dataclass
class ReconciliationReport:
    rows: list[ReconciliationRow]
    dimension_summary: list[dict]
    notes: list[str]

    def mismatches(self) -> list[ReconciliationRow]:
        return [r for r in self.rows if not r.match]

    def row(self, entry: str, case: str | None = None) -> ReconciliationRow:
        for r in self.rows:
            if r.entry == entry and (case is None or r.case == case):
                return r
        raise KeyError((entry, case))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "rows": [r.to_dict() for r in self.rows],
            "dimension_summary": self.dimension_summary,
            "notes": self.notes,
        }

    CSV_FIELDS = (
        "entry", "table", "case", "zinbiel_holds", "dim_der", "dim_centroid", "dim_center", "dim_cd",
        "cd_agreement", "claimed_cd", "match", "shape_match_row", "shape_match_column", "best_convention",
        "specialization_polys", "certificate", "decomposable_claim", "paper_criterion", "structural",
        "structural_note", "unreliable_source",
    )

    def to_csv(self, cert_paths: dict | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_FIELDS)
        for r in self.rows:
            cert = ""
            if r.certificate is not None:
                cert = (cert_paths or {}).get((r.entry, r.case), "inline")
            w.writerow([
                r.entry, r.table, r.case, r.zinbiel_holds, r.dim_der, r.dim_centroid, r.dim_center, r.dim_cd,
                r.cd_agreement, r.claimed_cd, r.match, r.shape_match["row"], r.shape_match["column"],
                r.best_convention, ";".join(r.specialization_polys), cert, r.decomposable_claim or "",
                r.paper_criterion, r.structural, r.structural_note, r.unreliable_source,
            ])
        return buf.getvalue()

    def to_text(self, cert_paths: dict | None = None) -> str:
        head = f"{'entry':<7} {'case':<12} {'Der':>3} {'Gam':>3} {'C':>2} {'CD':>3} {'paper':>5} {'match':<5} " \
               f"{'shape':<6} {'claim':<15} {'CD=0':<5} structural"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            claim = r.decomposable_claim or "-"
            lines.append(
                f"{r.entry:<7} {r.case:<12} {r.dim_der:>3} {r.dim_centroid:>3} {r.dim_center:>2} {r.dim_cd:>3} "
                f"{r.claimed_cd:>5} {'yes' if r.match else 'NO':<5} {r.best_convention:<6} {claim:<15} "
                f"{'yes' if r.paper_criterion else 'no':<5} {r.structural}"
                + (f" ({r.structural_note})" if r.structural_note else "")
            )
            if not r.zinbiel_holds:
                lines.append(f"        ! Zinbiel identity fails on {r.zinbiel_witnesses} basis triples")
            if not r.cd_agreement:
                lines.append("        ! CD characterizations disagree")
            if r.certificate is not None:
                where = (cert_paths or {}).get((r.entry, r.case), "inline (use --format json)")
                lines.append(f"        certificate: {where}")
            if r.specialization_polys:
                lines.append("        generic rank may drop where: " + ", ".join(f"{p} = 0" for p in r.specialization_polys))
        lines.append("")
        for s in self.dimension_summary:
            lines.append(
                f"dim {s['dim']}: computed CD dims {s['min_cd']}..{s['max_cd']}; "
                f"claimed {s['claim']}: {'consistent' if s['consistent'] else 'inconsistent'}"
            )
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


def case_algebra(A: AlgebraSpec, case) -> tuple[AlgebraSpec, str]:
    if case.binding:
        (pname, raw), = case.binding.items()
        if A.param != pname:
            return A, f"{pname} does not occur in the printed product; case evaluated on the printed algebra"
        value = parse_scalar(raw)
        return specialize(A, value, name=f"{A.name}[{pname}={raw}]"), f"{pname} = {raw}"
    if case.assume:
        pname = A.param
        if pname is None:
            return A, "parameter does not occur in the printed product; case evaluated on the printed algebra"
        polys = [parse_scalar(a, pname) for a in case.assume]
        return with_assumptions(A, polys), ", ".join(f"{a} != 0" for a in case.assume)
    if A.param:
        assumed = ", ".join(f"{Poly(p.coeffs, A.param)} != 0" for p in A.assumptions)
        return A, f"generic {A.param}" + (f" ({assumed})" if assumed else "")
    return A, ""


def _sample_value(A: AlgebraSpec, avoid: list[Poly]) -> Fraction:
    for v in (2, 3, 5, 7, 11, 13, -2, -3):
        v = Fraction(v)
        if A.assumptions.violated_by(v) is None and all(p(v) != 0 for p in avoid):
            return v
    raise RuntimeError("no admissible sample value")


def _support(space: SubspaceBasis) -> frozenset:
    return frozenset(k for v in space.basis for k, x in enumerate(v) if not is_zero(x))


def reconcile_case(entry, case, structural: bool = True) -> ReconciliationRow:
    A, note = case_algebra(entry.algebra, case)
    der, gam, cd = derivation_space(A), centroid_space(A), cd_equational(A)
    agree = cd == cd_definitional(A) == cd_intersection(A)
    specs = []
    for c in (der.cert, gam.cert, cd.cert):
        for p in c.specialization_polys:
            if p not in specs:
                specs.append(p)
    pname = A.param or (next(iter(case.binding)) if case.binding else None)
    bind = parse_scalar(next(iter(case.binding.values()))) if case.binding else None
    shape, support = {}, {}
    for conv in ("row", "column"):
        printed = printed_space(case.matrix, conv, param_name=pname, binding=bind, assumptions=A.assumptions)
        shape[conv] = printed == cd.space
        support[conv] = _support(printed) == _support(cd.space)
    best = "column" if shape["column"] else "row" if shape["row"] else \
        "column*" if support["column"] else "row*" if support["row"] else "none"
    match = cd.dim == case.cd_dim
    cert = None if match else make_certificate(
        A, entry.id, case.label, case.cd_dim, binding=None if not case.binding else note
    )
    ident = check_identity("zinbiel", A)

    verdict = decomposability(A, structural=False)
    s_note = ""
    s_verdict = "Skipped"
    verified = None
    if structural:
        target = A
        if A.is_parametric():
            v = _sample_value(A, specs)
            target = specialize(A, v)
            s_note = f"at {A.param}={v}"
        sv = decomposability(target)
        s_verdict = sv.structural
        if sv.witness is not None:
            verified = verify_witness(target, sv)
            s_note = "; ".join(x for x in (s_note, "central" if sv.central else "non-central idempotent") if x)
        elif sv.polynomial is not None:
            s_note = "; ".join(x for x in (s_note, f"minimal polynomial {sv.polynomial}") if x)
    return ReconciliationRow(
        entry=entry.id,
        table=entry.table,
        case=case.label,
        algebra_note=note,
        zinbiel_holds=ident.holds,
        zinbiel_witnesses=len(ident.witnesses),
        dim_der=der.dim,
        dim_centroid=gam.dim,
        dim_center=center(A).dim,
        dim_cd=cd.dim,
        cd_agreement=agree,
        claimed_cd=case.cd_dim,
        match=match,
        shape_match=shape,
        support_match=support,
        best_convention=best,
        computed_matrix=render_parametric(cd, "column").rows_str(),
        specialization_polys=[str(p) for p in specs],
        certificate=cert,
        decomposable_claim=entry.decomposable_claim,
        paper_criterion=verdict.paper_criterion,
        structural=s_verdict,
        structural_note=s_note,
        witness_verified=verified,
        unreliable_source=entry.unreliable_source,
        errata=list(entry.errata),
    )


_DIM_CLAIMS = {2: ("one", 1, 1), 3: ("zero to nine", 0, 9), 4: ("zero to nine", 0, 9)}


def reconcile(entries=None, structural: bool = True) -> ReconciliationReport:
    from . import load_catalog

    entries = load_catalog() if entries is None else entries
    rows = [reconcile_case(e, c, structural) for e in entries for c in e.cases]
    summary = []
    for n in sorted({e.dim for e in entries}):
        dims = [r.dim_cd for r, e in ((r, e) for e in entries for r in rows if r.entry == e.id) if e.dim == n]
        label, lo, hi = _DIM_CLAIMS.get(n, ("-", 0, n * n))
        summary.append({
            "dim": n,
            "min_cd": min(dims),
            "max_cd": max(dims),
            "claim": label,
            "consistent": lo <= min(dims) and max(dims) <= hi and (n != 2 or set(dims) == {1}),
        })
    notes = []
    for e in entries:
        for note in e.notes:
            if note not in notes:
                notes.append(note)
    notes.append(
        "Paper criterion is CD(A) = 0. Structural verdict searches idempotents of the centroid: "
        "central ones split the centroid as an algebra, non-central ones split the algebra into ideals."
    )
    return ReconciliationReport(rows, summary, notes)


def certificate_matrices(cert: Certificate):
    return [[[parse_scalar(x, cert.param) for x in row] for row in m] for m in cert.basis]


__all__ = [
    "Certificate",
    "ReconciliationReport",
    "ReconciliationRow",
    "certificate_matrices",
    "make_certificate",
    "reconcile",
    "reconcile_case",
    "case_algebra",
    "satisfies_cd_families",
    "verify_certificate",
]

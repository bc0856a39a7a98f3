import json
import shutil
from fractions import Fraction

import pytest

import zinbiel.catalog as catalog
from zinbiel.algebra import check_identity
from zinbiel.catalog import (
    Certificate,
    LoadError,
    entries_of_dim,
    get_entry,
    load_catalog,
    reconcile,
    verify_certificate,
)
from zinbiel.catalog.reconcile import case_algebra, certificate_matrices, satisfies_cd_families
from zinbiel.scalars import Poly

F = Fraction


@pytest.fixture(scope="module")
def report():
    return reconcile()


def test_catalog_shape():
    ids = [e.id for e in load_catalog()]
    assert ids == ["Z2_1"] + [f"Z3_{k}" for k in range(1, 8)] + [f"Z4_{k}" for k in range(1, 17)]
    assert [len(entries_of_dim(n)) for n in (2, 3, 4)] == [1, 7, 16]


def test_catalog_examples():
    assert get_entry("Z2_1").algebra.products() == {(0, 0): (F(0), F(1))}
    assert list(get_entry("Z3_6").algebra.assumptions) == [Poly((0, 1), "lambda")]
    z415 = get_entry("Z4_15")
    assert [(c.label, c.cd_dim) for c in z415.cases] == [("alpha != -1", 2), ("alpha = -1", 9)]
    assert any("alpha does not occur" in note for note in z415.errata)


def test_printed_duplicates_are_flagged():
    tables = {get_entry(f"Z4_{k}").algebra.table for k in range(12, 17)}
    assert len(tables) == 1
    for k in range(12, 17):
        assert get_entry(f"Z4_{k}").unreliable_source
    assert not get_entry("Z4_11").unreliable_source


@pytest.mark.parametrize("entry", load_catalog(), ids=lambda e: e.id)
def test_every_entry_is_zinbiel(entry):
    assert check_identity("zinbiel", entry.algebra)


def test_corrupt_claims_raise_load_error(tmp_path, monkeypatch):
    data = tmp_path / "data"
    shutil.copytree(catalog.data_files(), data)
    (data / "claims.json").write_text("{not json")
    monkeypatch.setattr(catalog, "data_files", lambda: data)
    catalog.load_catalog.cache_clear()
    try:
        with pytest.raises(LoadError):
            catalog.load_catalog()
    finally:
        monkeypatch.undo()
        catalog.load_catalog.cache_clear()


def test_corrupt_algebra_file_raises_load_error(tmp_path, monkeypatch):
    data = tmp_path / "data"
    shutil.copytree(catalog.data_files(), data)
    (data / "Z3_2.alg").write_text("dim 3\nmul e1 e9 = e2\n")
    monkeypatch.setattr(catalog, "data_files", lambda: data)
    catalog.load_catalog.cache_clear()
    try:
        with pytest.raises(LoadError):
            catalog.load_catalog()
    finally:
        monkeypatch.undo()
        catalog.load_catalog.cache_clear()


# -- reconciliation -----------------------------------------------------------


def test_report_covers_every_case(report):
    expected = [(e.id, c.label) for e in load_catalog() for c in e.cases]
    assert [(r.entry, r.case) for r in report.rows] == expected


@pytest.mark.parametrize("entry_id, dim", [("Z2_1", 1), ("Z3_1", 9), ("Z3_2", 4)])
def test_confirmed_matches(report, entry_id, dim):
    row = report.row(entry_id)
    assert row.dim_cd == row.claimed_cd == dim and row.match


@pytest.mark.parametrize("entry_id, computed, claimed", [("Z3_3", 2, 0), ("Z3_4", 2, 0), ("Z4_12", 4, 2)])
def test_flagged_mismatches(report, entry_id, computed, claimed):
    row = report.row(entry_id)
    assert (row.dim_cd, row.claimed_cd, row.match) == (computed, claimed, False)
    assert row.certificate is not None


def test_z3_3_certificate_exhibits_phi_e1_to_e3(report):
    cert = report.row("Z3_3").certificate
    phi = [[F(0)] * 3 for _ in range(3)]
    phi[0][2] = F(1)
    assert satisfies_cd_families(get_entry("Z3_3").algebra, phi)
    assert any(m == phi for m in certificate_matrices(cert))


def test_mismatch_certificates_verify(report):
    for row in report.mismatches():
        entry = get_entry(row.entry)
        case = next(c for c in entry.cases if c.label == row.case)
        A, _ = case_algebra(entry.algebra, case)
        assert verify_certificate(A, row.certificate)
        again = Certificate.from_dict(json.loads(json.dumps(row.certificate.to_dict())))
        assert again == row.certificate


def test_tampered_certificate_fails():
    A = get_entry("Z3_3").algebra
    cert = reconcile([get_entry("Z3_3")], structural=False).rows[0].certificate
    bad = Certificate(**{**cert.__dict__, "basis": (((("1",) + ("0",) * 2),) + cert.basis[0][1:],) + cert.basis[1:]})
    assert not verify_certificate(A, bad)


def test_row_invariants(report):
    for r in report.rows:
        assert r.match == (r.dim_cd == r.claimed_cd)
        assert (r.certificate is None) == r.match
        assert r.cd_agreement and r.zinbiel_holds
        assert r.unreliable_source == get_entry(r.entry).unreliable_source


def test_shape_conventions(report):
    assert report.row("Z2_1").best_convention == "column"
    assert report.row("Z3_1").best_convention == "column"


def test_decomposability_columns(report):
    z21 = report.row("Z2_1")
    assert z21.decomposable_claim == "indecomposable" and z21.structural == "NoSplitFound"
    z31 = report.row("Z3_1")
    assert z31.structural == "Decomposable" and z31.witness_verified
    for r in report.rows:
        assert r.paper_criterion == (r.dim_cd == 0)


def test_dimension_summary(report):
    summary = {s["dim"]: s for s in report.dimension_summary}
    assert summary[2]["min_cd"] == summary[2]["max_cd"] == 1
    assert all(0 <= s["min_cd"] <= s["max_cd"] <= 9 for s in summary.values())


def test_reconciliation_is_deterministic(report):
    again = reconcile()
    assert again.to_text() == report.to_text()
    assert again.to_csv() == report.to_csv()
    assert json.dumps(again.to_dict(), default=str) == json.dumps(report.to_dict(), default=str)
    assert report.to_dict()["schema"] == 1

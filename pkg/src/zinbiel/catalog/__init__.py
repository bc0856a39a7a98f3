"""Complex Zinbiel algebras of dimension 2, 3 and 4, as printed in the source
classification, with the central-derivation values claimed for them.

Structure constants are stored verbatim, suspected misprints included; the
corrections and doubts live in each entry's ``errata`` notes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..algebra import AlgebraSpec
from ..fileformat import parse_algebra
from ..parsing import ParseError


class LoadError(RuntimeError):
    pass


@dataclass(frozen=True)
class ClaimCase:
    label: str
    cd_dim: int
    matrix: tuple[tuple[str, ...], ...]
    binding: dict | None = None
    assume: tuple[str, ...] = ()


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    algebra: AlgebraSpec
    table: int
    cases: tuple[ClaimCase, ...]
    decomposable_claim: str | None = None
    errata: tuple[str, ...] = ()
    unreliable_source: bool = False
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _id_key(entry_id: str):
    n, k = re.fullmatch(r"Z(\d+)_(\d+)", entry_id).groups()
    return int(n), int(k)


def data_files():
    return resources.files(__name__).joinpath("data")


@lru_cache(maxsize=1)
def load_catalog() -> tuple[CatalogEntry, ...]:
    base = data_files()
    try:
        claims = json.loads(base.joinpath("claims.json").read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(f"cannot read claims file: {exc}") from exc
    entries = []
    for entry_id, c in claims["entries"].items():
        try:
            text = base.joinpath(f"{entry_id}.alg").read_text(encoding="utf-8")
            algebra = parse_algebra(text, name=entry_id)
            cases = tuple(
                ClaimCase(
                    k["label"],
                    int(k["cd_dim"]),
                    tuple(tuple(r) for r in k["matrix"]),
                    k.get("binding"),
                    tuple(k.get("assume", ())),
                )
                for k in c["cases"]
            )
        except (OSError, KeyError, ValueError, ParseError) as exc:
            raise LoadError(f"corrupt catalog entry {entry_id}: {exc}") from exc
        entries.append(
            CatalogEntry(
                entry_id,
                algebra,
                int(c["table"]),
                cases,
                c.get("decomposable"),
                tuple(c.get("errata", ())),
                bool(c.get("unreliable_source", False)),
                tuple(claims.get("notes", ())),
            )
        )
    entries.sort(key=lambda e: _id_key(e.id))
    return tuple(entries)


def get_entry(entry_id: str) -> CatalogEntry:
    for e in load_catalog():
        if e.id.lower() == entry_id.lower():
            return e
    raise KeyError(f"no catalog entry {entry_id!r}")


def entries_of_dim(n: int) -> list[CatalogEntry]:
    return [e for e in load_catalog() if e.dim == n]


from .reconcile import (  # noqa: E402
    Certificate,
    ReconciliationReport,
    ReconciliationRow,
    make_certificate,
    reconcile,
    verify_certificate,
)

__all__ = [
    "CatalogEntry",
    "Certificate",
    "ClaimCase",
    "LoadError",
    "ReconciliationReport",
    "ReconciliationRow",
    "entries_of_dim",
    "get_entry",
    "load_catalog",
    "make_certificate",
    "reconcile",
    "verify_certificate",
]

"""Command-line front end.

Exit codes: 0 success or identity holds, 1 check failed, 2 parse error,
3 assumption or parameter error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import (
    IDENTITY_KINDS,
    AlgebraSpec,
    center,
    check_identity,
    derive_structure,
    dendriform_to_associative,
    dendriform_to_prelie,
    power_chain,
    specialize,
    zinbiel_to_dendriform,
)
from .catalog import get_entry, load_catalog, reconcile
from .fileformat import algebra_to_dict, load_algebra, render_algebra, render_algebra_json
from .invariants import (
    cd_definitional,
    cd_equational,
    cd_intersection,
    centroid_space,
    derivation_space,
    direct_sum_centroid_report,
    random_unimodular,
    render_parametric,
    transport_conjugation,
)
from .linalg import SingularMatrix
from .parsing import ParseError
from .scalars import AssumptionViolated, ParameterClash, PoleAtValue, scalar_str

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PARAM = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(source: str) -> AlgebraSpec:
    path = Path(source)
    if not path.exists():
        try:
            return get_entry(source).algebra
        except KeyError:
            raise CliError(f"{source}: no such file or catalog entry", EXIT_PARSE) from None
    try:
        return load_algebra(path)
    except ParseError as exc:
        raise CliError(f"{source}: {exc}", EXIT_PARSE) from exc
    except (ParameterClash, AssumptionViolated) as exc:
        raise CliError(f"{source}: {exc}", EXIT_PARAM) from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"{source}: {exc}", EXIT_PARSE) from exc


def _bind(A: AlgebraSpec, bindings: list[str] | None) -> AlgebraSpec:
    if not bindings:
        return A
    values = {}
    for b in bindings:
        name, sep, raw = b.partition("=")
        if not sep:
            raise CliError(f"--param expects NAME=RATIONAL, got {b!r}", EXIT_PARAM)
        if name in values:
            raise CliError(f"parameter {name!r} bound twice", EXIT_PARAM)
        try:
            values[name] = Fraction(raw)
        except ValueError:
            raise CliError(f"--param {name}: {raw!r} is not a rational number", EXIT_PARAM) from None
    for name, value in values.items():
        if name != A.param:
            raise CliError(f"{A.name} declares no parameter {name!r}", EXIT_PARAM)
        try:
            A = specialize(A, value, name=f"{A.name}[{name}={value}]")
        except (AssumptionViolated, PoleAtValue) as exc:
            raise CliError(str(exc), EXIT_PARAM) from exc
    return A


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _vec_str(v) -> list[str]:
    return [scalar_str(x) for x in v]


# -- commands -----------------------------------------------------------


def cmd_check(args) -> int:
    A = _bind(_read(args.file), args.param)
    rep = check_identity(args.kind, A)
    if args.format == "json":
        _emit(args, _json({
            "schema": SCHEMA,
            "algebra": A.name,
            "kind": rep.kind,
            "holds": rep.holds,
            "witnesses": [{"indices": list(idx), "defect": _vec_str(d)} for idx, d in rep.witnesses],
        }))
    else:
        lines = [f"{A.name}: {args.kind} identity {'holds' if rep.holds else 'FAILS'}"]
        for idx, d in rep.witnesses:
            lines.append(f"  witness {tuple(idx)}: defect {_vec_str(d)}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if rep.holds else EXIT_FAIL


def invariants_report(A: AlgebraSpec, convention: str) -> dict:
    der, gam, cd = derivation_space(A), centroid_space(A), cd_equational(A)
    cd_def, cd_int = cd_definitional(A), cd_intersection(A)
    specs = []
    for c in (der.cert, gam.cert, cd.cert):
        for p in c.specialization_polys:
            if str(p) not in specs:
                specs.append(str(p))
    zin = check_identity("zinbiel", A)

    def space(E):
        return {"dim": E.dim, "matrix": render_parametric(E, convention).rows_str()}

    return {
        "schema": SCHEMA,
        "algebra": A.name,
        "dim": A.dim,
        "param": A.param,
        "convention": convention,
        "zinbiel": zin.holds,
        "derivations": space(der),
        "centroid": space(gam),
        "center": {"dim": center(A).dim, "basis": [_vec_str(v) for v in center(A).basis]},
        "central_derivations": {
            **space(cd),
            "definitional_dim": cd_def.dim,
            "intersection_dim": cd_int.dim,
            "agreement": cd == cd_def == cd_int,
        },
        "power_chain": [s.dim for s in power_chain(A)],
        "specialization_polys": specs,
    }


def _grid_text(grid: list[list[str]], indent: str = "    ") -> str:
    width = max((len(s) for row in grid for s in row), default=1)
    return "\n".join(indent + "[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in grid)


def cmd_invariants(args) -> int:
    A = _bind(_read(args.file), args.param)
    rep = invariants_report(A, args.convention)
    if args.format == "json":
        _emit(args, _json(rep))
        return EXIT_OK
    lines = [f"algebra {rep['algebra']} (dim {rep['dim']}" + (f", parameter {A.param}" if A.param else "") + ")",
             f"zinbiel identity: {'holds' if rep['zinbiel'] else 'FAILS'}",
             f"matrix convention: {rep['convention']}"]
    for key, title in (("derivations", "Der"), ("centroid", "Gamma"), ("central_derivations", "CD")):
        lines.append(f"{title}: dim {rep[key]['dim']}")
        lines.append(_grid_text(rep[key]["matrix"]))
    cdr = rep["central_derivations"]
    lines.append(
        f"CD characterizations: equations {cdr['dim']}, definition {cdr['definitional_dim']}, "
        f"Der/Gamma intersection {cdr['intersection_dim']}: {'agree' if cdr['agreement'] else 'DISAGREE'}"
    )
    lines.append(f"center: dim {rep['center']['dim']}, basis {rep['center']['basis']}")
    lines.append("power chain dims: " + " > ".join(str(d) for d in rep["power_chain"]))
    if rep["specialization_polys"]:
        lines.append("generic rank may drop where: " + ", ".join(f"{p} = 0" for p in rep["specialization_polys"]))
        lines.append(f"rerun with --param {A.param}=VALUE to specialize")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_table(args) -> int:
    entries = load_catalog()
    if args.dimension != "all":
        entries = [e for e in entries if e.dim == int(args.dimension)]
    report = reconcile(entries, structural=not args.no_structural)
    cert_paths = {}
    if args.cert_dir:
        d = Path(args.cert_dir)
        d.mkdir(parents=True, exist_ok=True)
        for r in report.rows:
            if r.certificate is not None:
                slug = "".join(ch if ch.isalnum() else "_" for ch in r.case).strip("_")
                path = d / f"{r.entry}__{slug}.json"
                path.write_text(_json({"schema": SCHEMA, **r.certificate.to_dict()}), encoding="utf-8")
                cert_paths[r.entry, r.case] = str(path)
    if args.format == "json":
        data = report.to_dict()
        for row in data["rows"]:
            path = cert_paths.get((row["entry"], row["case"]))
            if path:
                row["certificate_path"] = path
        _emit(args, _json(data))
    elif args.format == "csv":
        _emit(args, report.to_csv(cert_paths))
    else:
        _emit(args, report.to_text(cert_paths))
    return EXIT_OK


def cmd_sum(args) -> int:
    A, B = _read(args.file_a), _read(args.file_b)
    try:
        rep = direct_sum_centroid_report(A, B)
    except ParameterClash as exc:
        raise CliError(str(exc), EXIT_PARAM) from exc
    data = {
        "schema": SCHEMA,
        "sum": rep.name,
        "dim_centroid_sum": rep.dim_sum,
        "dim_centroid_a": rep.dim_a,
        "dim_centroid_b": rep.dim_b,
        "dim_c1": rep.dim_c1,
        "dim_c2": rep.dim_c2,
        "parts_total": rep.parts_total,
        "equal": rep.equal,
        "embedded_contained": rep.embedded_contained,
        "embedded_independent": rep.embedded_independent,
        "note": "C_i read as maps A_i -> center(A_j) vanishing on A_i . A_i",
    }
    if args.format == "json":
        _emit(args, _json(data))
    else:
        _emit(args, (
            f"{rep.name}: {rep.dim_a} + {rep.dim_b} + {rep.dim_c1} + {rep.dim_c2} = {rep.parts_total}"
            f" {'=' if rep.equal else '!='} dim Gamma = {rep.dim_sum}\n"
            f"embedded parts inside Gamma(A+B): {rep.embedded_contained}; independent: {rep.embedded_independent}\n"
        ))
    return EXIT_OK if rep.equal and rep.embedded_contained and rep.embedded_independent else EXIT_FAIL


def cmd_transport(args) -> int:
    A = _bind(_read(args.file), args.param)
    rng = random.Random(args.seed)
    passed, failures = 0, []
    for k in range(args.count):
        P = random_unimodular(A.dim, rng)
        try:
            rep = transport_conjugation(A, P)
        except SingularMatrix as exc:
            raise CliError(str(exc), EXIT_PARAM) from exc
        if rep.passed:
            passed += 1
        else:
            failures.append({"trial": k, "matrix": [_vec_str(r) for r in P],
                             "dims_before": rep.dims_before, "dims_after": rep.dims_after})
    if args.format == "json":
        _emit(args, _json({"schema": SCHEMA, "algebra": A.name, "seed": args.seed, "count": args.count,
                           "passed": passed, "failures": failures}))
    else:
        _emit(args, f"{A.name}: {passed}/{args.count} basis changes preserve Der/Gamma/CD and transport CD\n")
    return EXIT_OK if passed == args.count else EXIT_FAIL


def cmd_derive(args) -> int:
    A = _read(args.file)
    render = render_algebra_json if args.format == "json" else render_algebra
    if args.kind == "zinbiel_to_dendriform":
        D = zinbiel_to_dendriform(A)
        if args.format == "json":
            text = _json({"schema": SCHEMA, "prec": algebra_to_dict(D.left), "succ": algebra_to_dict(D.right)})
        else:
            text = "# prec\n" + render(D.left.renamed(f"{A.name}_prec")) + "---\n# succ\n" + \
                   render(D.right.renamed(f"{A.name}_succ"))
    elif args.kind == "dendriform_to_associative":
        text = render(dendriform_to_associative(zinbiel_to_dendriform(A)))
    elif args.kind == "dendriform_to_prelie":
        text = render(dendriform_to_prelie(zinbiel_to_dendriform(A)))
    else:
        text = render(derive_structure(args.kind, A))
    _emit(args, text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for e in load_catalog():
            flag = " UNRELIABLE-SOURCE" if e.unreliable_source else ""
            par = f" param {e.algebra.param}" if e.algebra.param else ""
            rows.append(f"{e.id:<6} dim {e.dim}  table {e.table}{par}{flag}")
        _emit(args, "\n".join(rows) + "\n")
        return EXIT_OK
    if not args.id:
        raise CliError("catalog show needs an entry id", EXIT_PARSE)
    try:
        e = get_entry(args.id)
    except KeyError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    if args.format == "json":
        _emit(args, _json({
            "schema": SCHEMA, "id": e.id, "algebra": algebra_to_dict(e.algebra),
            "claims": [{"case": c.label, "cd_dim": c.cd_dim, "matrix": [list(r) for r in c.matrix]} for c in e.cases],
            "decomposable_claim": e.decomposable_claim, "errata": list(e.errata),
            "unreliable_source": e.unreliable_source,
        }))
    else:
        text = render_algebra(e.algebra)
        for note in e.errata:
            text += f"# errata: {note}\n"
        _emit(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zinbiel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--convention", choices=("row", "column"), default="column",
                        help="matrix display: row means phi(e_i) = sum_t a_it e_t; column is its transpose")
    binding = argparse.ArgumentParser(add_help=False)
    binding.add_argument("--param", action="append", metavar="NAME=RAT", help="specialize the parameter")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common, binding], help="verify a variety identity")
    s.add_argument("file")
    s.add_argument("--kind", choices=IDENTITY_KINDS, default="zinbiel")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("invariants", parents=[common, binding], help="Der, centroid, center, CD, power chain")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("table", parents=[common], help="reconcile the catalog with the printed tables")
    s.add_argument("dimension", choices=("2", "3", "4", "all"))
    s.add_argument("--cert-dir", metavar="DIR", help="write mismatch certificates as JSON files into DIR")
    s.add_argument("--no-structural", action="store_true", help="skip the idempotent search")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("sum", parents=[common], help="centroid of a direct sum versus its four parts")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("transport", parents=[common, binding], help="random basis changes preserve the invariants")
    s.add_argument("file")
    s.add_argument("--count", type=int, default=50)
    s.set_defaults(func=cmd_transport)

    s = sub.add_parser("derive", parents=[common], help="derived structure along the operad functors")
    s.add_argument("file")
    s.add_argument("--kind", required=True, choices=(
        "symmetrize", "opposite", "prelie_to_lie", "zinbiel_to_dendriform",
        "dendriform_to_associative", "dendriform_to_prelie"))
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("catalog", parents=[common], help="list or show catalog entries")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("id", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"zinbiel: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"zinbiel: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AssumptionViolated, PoleAtValue, ParameterClash) as exc:
        print(f"zinbiel: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())

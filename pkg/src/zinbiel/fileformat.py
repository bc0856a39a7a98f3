"""Reading and writing algebra files.

Text format, one directive per line, ``#`` starts a comment::

    name Z3_6
    dim 3
    param lambda
    assume lambda != 0
    mul e1 e1 = e3
    mul e2 e2 = lambda e3

Unlisted products are zero.  The JSON mirror has the fields
``name, dim, param, assume, table`` with ``table`` entries
``{"i": 1, "j": 1, "coeffs": ["0", "1"]}`` (one-based indices).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import AlgebraSpec
from .parsing import IndexOutOfRange, MultipleParameters, ParseError, parse_linear, parse_scalar
from .scalars import AssumptionSet, Poly, RatFunc, is_zero, numerator, scalar_str


def parse_algebra(text: str, name: str | None = None) -> AlgebraSpec:
    dim = None
    pname = None
    assumes: list[Poly] = []
    products: dict[tuple[int, int], list] = {}
    labels: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        word, _, rest = stripped.partition(" ")
        rest_col = col + len(word) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if word == "name":
            if not re.fullmatch(r"[A-Za-z_0-9.+\-^]+", rest):
                raise ParseError(f"invalid name {rest!r}", lineno, rest_col)
            name = rest
        elif word == "dim":
            if dim is not None:
                raise ParseError("dimension declared twice", lineno, col)
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError(f"dimension must be a positive integer, got {rest!r}", lineno, rest_col)
            dim = int(rest)
        elif word == "labels":
            labels = rest.split()
        elif word == "param":
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", rest) or re.fullmatch(r"e\d+", rest):
                raise ParseError(f"invalid parameter name {rest!r}", lineno, rest_col)
            if pname is not None and rest != pname:
                raise MultipleParameters(
                    f"second parameter {rest!r}; only one parameter is supported", lineno, rest_col
                )
            pname = rest
        elif word == "assume":
            m = re.fullmatch(r"(.*?)\s*!=\s*0", rest)
            if not m:
                raise ParseError("expected 'assume <poly> != 0'", lineno, rest_col)
            if pname is None:
                raise ParseError("'assume' before 'param'", lineno, col)
            val = parse_scalar(m.group(1), pname, line=lineno, col=rest_col)
            if isinstance(val, RatFunc) and not val.den.is_const():
                raise ParseError("assumption must be a polynomial", lineno, rest_col)
            if is_zero(val):
                raise ParseError("cannot assume zero is nonzero", lineno, rest_col)
            assumes.append(numerator(val))
        elif word == "mul":
            if dim is None:
                raise ParseError("'mul' before 'dim'", lineno, col)
            basis = {lab: i for i, lab in enumerate(labels or [f"e{k + 1}" for k in range(dim)])}
            if len(basis) != dim:
                raise ParseError("label count does not match dimension", lineno, col)
            m = re.fullmatch(r"(\S+)\s+(\S+)\s*=\s*(.*)", rest)
            if not m:
                raise ParseError("expected 'mul <a> <b> = <linear combination>'", lineno, rest_col)
            idx = []
            for g in (1, 2):
                lab = m.group(g)
                if lab not in basis:
                    if re.fullmatch(r"e\d+", lab) and labels is None:
                        raise IndexOutOfRange(
                            f"basis element {lab} out of range for dim {dim}", lineno, rest_col + m.start(g)
                        )
                    raise ParseError(f"unknown basis element {lab!r}", lineno, rest_col + m.start(g))
                idx.append(basis[lab])
            key = (idx[0], idx[1])
            if key in products:
                raise ParseError(f"product {m.group(1)} {m.group(2)} given twice", lineno, col)
            terms = parse_linear(
                m.group(3), param_name=pname, basis=basis, dim=dim, line=lineno, col=rest_col + m.start(3)
            )
            vec = [Fraction(0)] * dim
            for k, v in terms.items():
                vec[k] = v
            products[key] = vec
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, col)
    if dim is None:
        raise ParseError("missing 'dim' line", 1, 1)
    return AlgebraSpec.from_products(
        dim,
        products,
        name=name or "A",
        param=pname,
        assumptions=AssumptionSet.of(assumes, pname),
        labels=labels or (),
    )


def _coeff_str(s) -> str:
    text = scalar_str(s)
    if re.fullmatch(r"-?\d+(/\d+)?|[A-Za-z_][A-Za-z_0-9]*", text):
        return text
    return f"({text})"


def render_linear(vec, labels) -> str:
    parts = []
    for k, x in enumerate(vec):
        if is_zero(x):
            continue
        if x == 1:
            term, sign = labels[k], "+"
        elif x == -1:
            term, sign = labels[k], "-"
        elif isinstance(x, Fraction):
            term, sign = f"{_coeff_str(abs(x))} {labels[k]}", "-" if x < 0 else "+"
        else:
            term, sign = f"{_coeff_str(x)} {labels[k]}", "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def render_algebra(A: AlgebraSpec) -> str:
    lines = [f"name {A.name}", f"dim {A.dim}"]
    default_labels = tuple(f"e{i + 1}" for i in range(A.dim))
    if A.labels != default_labels:
        lines.append("labels " + " ".join(A.labels))
    if A.param:
        lines.append(f"param {A.param}")
        for p in A.assumptions:
            lines.append(f"assume {Poly(p.coeffs, A.param).to_str()} != 0")
    for (i, j), vec in A.table:
        lines.append(f"mul {A.labels[i]} {A.labels[j]} = {render_linear(vec, A.labels)}")
    return "\n".join(lines) + "\n"


def algebra_to_dict(A: AlgebraSpec) -> dict:
    d = {
        "name": A.name,
        "dim": A.dim,
        "param": A.param,
        "assume": [Poly(p.coeffs, A.param).to_str() for p in A.assumptions],
        "table": [
            {"i": i + 1, "j": j + 1, "coeffs": [scalar_str(x) for x in vec]} for (i, j), vec in A.table
        ],
    }
    if A.labels != tuple(f"e{i + 1}" for i in range(A.dim)):
        d["labels"] = list(A.labels)
    return d


def algebra_from_dict(data: dict) -> AlgebraSpec:
    try:
        dim = int(data["dim"])
        pname = data.get("param")
        products = {}
        for entry in data.get("table", []):
            i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexOutOfRange(f"product index ({i + 1}, {j + 1}) out of range for dim {dim}")
            coeffs = entry["coeffs"]
            if len(coeffs) != dim:
                raise ParseError(f"product ({i + 1}, {j + 1}) has {len(coeffs)} coefficients, expected {dim}")
            products[i, j] = [parse_scalar(str(c), pname) if pname else parse_scalar(str(c), None) for c in coeffs]
        assumes = [numerator(parse_scalar(a, pname)) for a in data.get("assume", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed algebra JSON: {exc}") from exc
    return AlgebraSpec.from_products(
        dim,
        products,
        name=data.get("name") or "A",
        param=pname,
        assumptions=AssumptionSet.of(assumes, pname),
        labels=tuple(data.get("labels", ())),
    )


def render_algebra_json(A: AlgebraSpec) -> str:
    return json.dumps(algebra_to_dict(A), indent=2) + "\n"


def parse_algebra_json(text: str) -> AlgebraSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return algebra_from_dict(data)


def load_algebra(path) -> AlgebraSpec:
    """Read a text or JSON algebra file; the name defaults to the file stem."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        A = parse_algebra_json(text)
        return A
    A = parse_algebra(text, name=path.stem)
    return A

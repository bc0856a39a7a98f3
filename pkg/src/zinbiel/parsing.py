"""Tokenizer and expression parser shared by scalar literals and algebra files.

Expressions are parsed into linear forms ``{basis_index: Scalar}`` plus a
scalar constant part, so ``lambda e3``, ``-2e3 + e4`` and ``(2*alpha - 1)``
all go through the same grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/'|<juxtaposition>) factor)*
    factor := ('+'|'-') factor | power
    power  := atom ('^' uint)?
    atom   := NUMBER | IDENT | BASIS | '(' expr ')'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import Scalar, inv, is_zero, param


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class MultipleParameters(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>!=|[-+*/^()=]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + ws]!r}", line, col0 + pos + ws)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), col0 + m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", col0 + len(text)))
    return tokens


class _Linear:
    """Constant scalar plus a linear combination of basis symbols."""

    __slots__ = ("const", "terms")

    def __init__(self, const=Fraction(0), terms=None):
        self.const = const
        self.terms = terms or {}

    @property
    def is_scalar(self):
        return not self.terms

    def add(self, other, sign=1):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            s = terms.get(k, Fraction(0)) + (v if sign > 0 else -v)
            if is_zero(s):
                terms.pop(k, None)
            else:
                terms[k] = s
        c = self.const + other.const if sign > 0 else self.const - other.const
        return _Linear(c, terms)

    def scale(self, s):
        if is_zero(s):
            return _Linear()
        return _Linear(self.const * s, {k: v * s for k, v in self.terms.items()})


class ExpressionParser:
    """Recursive-descent parser.

    ``param_name`` is the declared parameter (if any); ``basis`` maps basis
    labels to zero-based indices.  ``on_ident`` lets the algebra-file parser
    decide how to treat an undeclared identifier.
    """

    def __init__(self, tokens, *, line=1, param_name=None, basis=None, dim=None):
        self.tokens = tokens
        self.i = 0
        self.line = line
        self.param_name = param_name
        self.basis = basis or {}
        self.dim = dim

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, cls=ParseError, tok=None):
        tok = tok or self.tok
        return cls(msg, self.line, tok.col)

    def expect(self, text):
        if self.tok.text != text:
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        self.i += 1

    def parse_expr(self) -> _Linear:
        acc = self.parse_term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            acc = acc.add(self.parse_term(), sign)
        return acc

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("num", "ident") or (t.kind == "op" and t.text == "(")

    def parse_term(self) -> _Linear:
        acc = self.parse_factor()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.i += 1
                rhs = self.parse_factor()
                if t.text == "*":
                    acc = self._mul(acc, rhs, t)
                else:
                    if not rhs.is_scalar:
                        raise self.error("cannot divide by a basis element", tok=t)
                    if is_zero(rhs.const):
                        raise self.error("division by zero", tok=t)
                    acc = acc.scale(inv(rhs.const))
            elif self._starts_atom():
                acc = self._mul(acc, self.parse_power(), t)
            else:
                return acc

    def _mul(self, a: _Linear, b: _Linear, tok):
        if a.is_scalar:
            return b.scale(a.const)
        if b.is_scalar:
            return a.scale(b.const)
        raise self.error("product of two basis elements in a coefficient", tok=tok)

    def parse_factor(self) -> _Linear:
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.i += 1
            f = self.parse_factor()
            return f if t.text == "+" else f.scale(Fraction(-1))
        return self.parse_power()

    def parse_power(self) -> _Linear:
        base = self.parse_atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.tok
            self.i += 1
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer")
            k = int(self.tok.text)
            self.i += 1
            if not base.is_scalar:
                raise self.error("cannot raise a basis element to a power", tok=t)
            val = Fraction(1)
            for _ in range(k):
                val = val * base.const
            return _Linear(val)
        return base

    def parse_atom(self) -> _Linear:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return _Linear(Fraction(t.text))
        if t.kind == "ident":
            self.i += 1
            if t.text in self.basis:
                return _Linear(Fraction(0), {self.basis[t.text]: Fraction(1)})
            m = re.fullmatch(r"e(\d+)", t.text)
            if m and self.dim is not None:
                raise IndexOutOfRange(
                    f"basis element {t.text} out of range for dim {self.dim}", self.line, t.col
                )
            if self.param_name is None:
                raise self.error(f"undeclared parameter {t.text!r}", tok=t)
            if t.text != self.param_name:
                raise self.error(
                    f"second parameter {t.text!r}; only {self.param_name!r} is declared",
                    MultipleParameters,
                    tok=t,
                )
            return _Linear(param(t.text))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_scalar(text: str, param_name: str | None = None, *, line: int = 1, col: int = 1) -> Scalar:
    """Parse a scalar literal such as ``1/2``, ``-1``, ``2*alpha - 1``.

    With ``param_name=None`` a single identifier is accepted as the parameter.
    """
    tokens = tokenize(text, line, col)
    if param_name is None:
        names = {t.text for t in tokens if t.kind == "ident"}
        if len(names) > 1:
            first = sorted(names)[1]
            tok = next(t for t in tokens if t.text == first)
            raise MultipleParameters(f"more than one parameter: {sorted(names)}", line, tok.col)
        param_name = next(iter(names), None)
    p = ExpressionParser(tokens, line=line, param_name=param_name)
    lin = p.parse_expr()
    if p.tok.kind != "end":
        raise p.error(f"trailing input {p.tok.text!r}")
    return lin.const


def parse_linear(text: str, *, param_name, basis, dim, line=1, col=1) -> dict[int, Scalar]:
    """Parse a right-hand side like ``1/2 e3 - lambda e4``."""
    if basis is None and dim is not None:
        basis = {f"e{k + 1}": k for k in range(dim)}
    tokens = tokenize(text, line, col)
    p = ExpressionParser(tokens, line=line, param_name=param_name, basis=basis, dim=dim)
    lin = p.parse_expr()
    if p.tok.kind != "end":
        raise p.error(f"trailing input {p.tok.text!r}")
    if not is_zero(lin.const):
        raise ParseError("right-hand side has a term without a basis element", line, col)
    return lin.terms

"""Exact scalars: rationals and univariate rational functions over Q.

A scalar is either a :class:`fractions.Fraction` or a :class:`RatFunc` in a
single named parameter.  Every arithmetic result is returned in canonical
form, and a rational function whose numerator and denominator are both
constant collapses back to a ``Fraction``, so equality is structural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union


class ScalarError(ArithmeticError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleAtValue(ScalarError):
    pass


class AssumptionViolated(ScalarError):
    pass


class ParameterClash(ScalarError, ValueError):
    """Two different parameter names met in one computation."""


def _merge_var(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ParameterClash(f"cannot combine parameters {a!r} and {b!r}")


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str | None = None):
        object.__setattr__(self, "coeffs", _trim(coeffs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls, var: str) -> Poly:
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str | None = None) -> Poly:
        return cls((c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.is_const() and other.is_const():
                return self.coeffs == other.coeffs
            return self.coeffs == other.coeffs and self.var == other.var
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var if not self.is_const() else None))

    def __repr__(self):
        return f"Poly({self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly((other,), self.var)

    def __add__(self, other):
        o = self._coerce(other)
        var = _merge_var(self.var, o.var)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Poly((x + y for x, y in zip(a, b)), var)

    __radd__ = __add__

    def __neg__(self):
        return Poly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        var = _merge_var(self.var, o.var)
        if not self.coeffs or not o.coeffs:
            return Poly((), var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out, var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly((1,), self.var)
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        var = _merge_var(self.var, other.var)
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot, var), Poly(rem[:dq] if dq > 0 else (), var)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.lead
        return Poly((c / lead for c in self.coeffs), self.var)

    def derivative(self) -> Poly:
        return Poly((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def __call__(self, value):
        """Horner evaluation at a rational value."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        var = self.var or "x"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*a + v*b = g and g monic."""
    var = _merge_var(a.var, b.var)
    r0, r1 = a, b
    s0, s1 = Poly((1,), var), Poly((), var)
    t0, t1 = Poly((), var), Poly((1,), var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.lead
    if lead == 0:
        return r0, s0, t0
    inv = 1 / lead
    return r0 * inv, s0 * inv, t0 * inv


class RatFunc:
    """Reduced quotient num/den of polynomials with monic den.

    Do not construct directly; use :func:`ratfunc`, which collapses constants
    to ``Fraction``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_const() else self.den.var

    def __repr__(self):
        return f"RatFunc({scalar_str(self)!r})"

    def __str__(self):
        return scalar_str(self)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, RatFunc):
            if self.den == other.den:
                return ratfunc(self.num + other.num, self.den)
            return ratfunc(self.num * other.den + other.num * self.den, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            return ratfunc(self.num + self.den * other, self.den)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return ratfunc(self.num * other.num, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            if other == 1:
                return self
            return RatFunc(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            return self * inv(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return inv(self) * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return inv(self) ** (-k)
        return ratfunc(self.num**k, self.den**k)


Scalar = Union[Fraction, RatFunc]


def ratfunc(num: Poly, den: Poly) -> Scalar:
    """Canonical scalar num/den."""
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return Fraction(0)
    if den.is_const():
        if num.is_const():
            return num.const_value() / den.const_value()
        return RatFunc(num * (1 / den.const_value()), Poly((1,), num.var))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.divmod(g)[0], den.divmod(g)[0]
    lead = den.lead
    if lead != 1:
        num, den = num * (1 / lead), den * (1 / lead)
    if num.is_const() and den.is_const():
        return num.const_value() / den.const_value()
    return RatFunc(num, den)


def param(name: str) -> RatFunc:
    return RatFunc(Poly.x(name), Poly((1,), name))


def from_poly(p: Poly) -> Scalar:
    return ratfunc(p, Poly((1,), p.var))


def to_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, RatFunc)):
        return x
    if isinstance(x, Poly):
        return from_poly(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        from .parsing import parse_scalar

        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def is_zero(s: Scalar) -> bool:
    return not isinstance(s, RatFunc) and s == 0


def inv(s) -> Scalar:
    if isinstance(s, RatFunc):
        return ratfunc(s.den, s.num)
    if s == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / Fraction(s)


def scalar_var(s: Scalar) -> str | None:
    return s.var if isinstance(s, RatFunc) else None


def numerator(s: Scalar) -> Poly:
    if isinstance(s, RatFunc):
        return s.num
    return Poly((s,))


def scalar_str(s) -> str:
    if isinstance(s, RatFunc):
        num = s.num.to_str()
        if s.den == 1:
            return num
        if len([c for c in s.num.coeffs if c]) > 1:
            num = f"({num})"
        den = s.den.to_str()
        if len([c for c in s.den.coeffs if c]) > 1:
            den = f"({den})"
        return f"{num}/{den}"
    return str(Fraction(s))


# -- assumptions ---------------------------------------------------------


@dataclass(frozen=True)
class AssumptionSet:
    """Polynomials asserted to be nonzero.  Stored as monic factors."""

    polys: tuple[Poly, ...] = ()
    var: str | None = field(default=None)

    @classmethod
    def of(cls, polys: Iterable[Poly] = (), var: str | None = None) -> AssumptionSet:
        out: list[Poly] = []
        for p in polys:
            if isinstance(p, (RatFunc, Fraction, int)):
                p = numerator(to_scalar(p))
            if p.is_zero():
                raise AssumptionViolated("cannot assume the zero polynomial is nonzero")
            var = _merge_var(var, p.var if not p.is_const() else None)
            if p.is_const():
                continue
            fac = factor_partial(p)
            for f, _ in fac.factors + fac.remainder:
                f = f.monic()
                if f not in out:
                    out.append(f)
        out.sort(key=lambda q: (q.degree, q.coeffs))
        return cls(tuple(out), var)

    def __bool__(self):
        return bool(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def union(self, other: AssumptionSet) -> AssumptionSet:
        return AssumptionSet.of(self.polys + other.polys, _merge_var(self.var, other.var))

    def violated_by(self, value) -> Poly | None:
        for p in self.polys:
            if p(Fraction(value)) == 0:
                return p
        return None


class Conditional(NamedTuple):
    """Nonzero unless ``factor`` vanishes."""

    factor: Poly


YES = "yes"
NO = "no"


def is_assumed_nonzero(s: Scalar, assumptions: AssumptionSet | None = None):
    """Return ``YES``, ``NO`` or ``Conditional(p)`` for the non-assumed part p."""
    if not isinstance(s, RatFunc):
        return NO if s == 0 else YES
    rest = s.num.monic()
    for a in assumptions or ():
        while rest.degree >= a.degree > 0:
            q, r = rest.divmod(a)
            if not r.is_zero():
                break
            rest = q
    if rest.is_const():
        return YES
    return Conditional(rest.monic())


def evaluate_at(s: Scalar, value, assumptions: AssumptionSet | None = None) -> Fraction:
    value = Fraction(value)
    if assumptions is not None:
        bad = assumptions.violated_by(value)
        if bad is not None:
            raise AssumptionViolated(f"{bad} vanishes at {value}")
    if not isinstance(s, RatFunc):
        return Fraction(s)
    d = s.den(value)
    if d == 0:
        raise PoleAtValue(f"denominator {s.den} vanishes at {value}")
    return s.num(value) / d


# -- partial factorization ----------------------------------------------


@dataclass(frozen=True)
class PartialFactorization:
    """``unit * prod(f**m for f, m in factors + remainder)`` equals the input.

    ``factors`` holds monic linear factors from rational roots and monic
    quadratics without rational roots (irreducible over Q).  ``remainder``
    holds square-free parts that were not split further.
    """

    unit: Fraction
    factors: list[tuple[Poly, int]]
    remainder: list[tuple[Poly, int]]

    @property
    def has_remainder(self) -> bool:
        return bool(self.remainder)

    def expand(self) -> Poly:
        var = None
        for f, _ in self.factors + self.remainder:
            var = f.var
        acc = Poly((self.unit,), var)
        for f, m in self.factors + self.remainder:
            acc = acc * f**m
        return acc


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm; returns monic square-free a_i with p ~ prod a_i**i."""
    out = []
    if p.degree <= 0:
        return out
    f = p.monic()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.divmod(a)[0]
    c = fp.divmod(a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.divmod(a)[0]
        c = d.divmod(a)[0]
        d = c - b.derivative()
        i += 1
    return out


_DIVISOR_LIMIT = 10**10


def _divisors(n: int) -> list[int] | None:
    n = abs(n)
    if n > _DIVISOR_LIMIT:
        return None
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction] | None:
    """Distinct rational roots, or None if coefficients are too large to search."""
    if p.degree <= 0:
        return []
    denom = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * denom) for c in p.coeffs]
    roots = []
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    ints = ints[shift:]
    if len(ints) == 1:
        return roots
    ps, qs = _divisors(ints[0]), _divisors(ints[-1])
    if ps is None or qs is None:
        return None
    q = Poly(ints, p.var)
    seen = set()
    for a in ps:
        for b in qs:
            for r in (Fraction(a, b), Fraction(-a, b)):
                if r not in seen:
                    seen.add(r)
                    if q(r) == 0:
                        roots.append(r)
    return sorted(roots)


def factor_partial(p: Poly) -> PartialFactorization:
    if p.is_zero():
        raise ScalarError("cannot factor the zero polynomial")
    unit = p.lead
    factors: list[tuple[Poly, int]] = []
    remainder: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(p):
        roots = rational_roots(part)
        if roots is None:
            remainder.append((part, mult))
            continue
        rest = part
        for r in roots:
            lin = Poly((-r, 1), p.var)
            factors.append((lin, mult))
            rest = rest.divmod(lin)[0]
        if rest.degree == 2:
            factors.append((rest.monic(), mult))
        elif rest.degree > 2:
            remainder.append((rest.monic(), mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return PartialFactorization(unit, factors, remainder)

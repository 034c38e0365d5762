"""Singular points, the Fuchs criterion, indicial polynomials and exponents."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .arith import Poly, RatFunc, poly_gcd, pole_order, rational_roots, scaled_limit
from .diffop import DiffOp, change_var_infinity
from .errors import IrregularPoint, UnsupportedIrrationalSingularity


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()
Location = Union[Fraction, _Infinity]


class Classification(str, enum.Enum):
    ORDINARY = "ordinary"
    REGULAR_SINGULAR = "regular_singular"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class SingularReport:
    location: Location
    classification: Classification
    indicial: Poly | None = None
    exponents: tuple[Fraction, ...] = ()
    residual: Poly = field(default_factory=lambda: Poly.const(1))

    @property
    def complete(self) -> bool:
        """True when every exponent is rational."""
        return self.residual.degree <= 0


def as_location(a) -> Location:
    if a is INF or (isinstance(a, str) and a.lower() in ("inf", "oo", "infinity")):
        return INF
    return Fraction(a)


def _local(l: DiffOp, alpha: Location) -> tuple[DiffOp, Fraction]:
    """Monic operator and the point at which to examine it."""
    if alpha is INF:
        return change_var_infinity(l)[0], Fraction(0)
    return l.monic(), Fraction(alpha)


def _fuchs(m: DiffOp, a: Fraction) -> Classification:
    n = m.order
    orders = [pole_order(m[i], a) for i in range(n)]
    if all(k <= 0 for k in orders):
        return Classification.ORDINARY
    if all(k <= n - i for i, k in enumerate(orders)):
        return Classification.REGULAR_SINGULAR
    return Classification.IRREGULAR


def fuchs_test(l: DiffOp, alpha) -> Classification:
    if l.order < 1:
        raise ValueError("singularity analysis needs order >= 1")
    m, a = _local(l, as_location(alpha))
    return _fuchs(m, a)


def _finite_singularities(l: DiffOp) -> list[Fraction]:
    m = l.monic()
    den = Poly.const(1)
    for c in m.coeffs[:-1]:
        den = den * (c.den // poly_gcd(den, c.den))
    if den.degree <= 0:
        return []
    roots, residual = rational_roots(den)
    if residual.degree > 0:
        raise UnsupportedIrrationalSingularity(residual)
    return [r for r, _ in roots]


def _indicial(m: DiffOp, a: Fraction) -> Poly:
    n = m.order
    acc = Poly()
    falling = Poly.const(1)  # a(a-1)...(a-i+1)
    for i in range(n + 1):
        b = Fraction(1) if i == n else scaled_limit(m[i], a, n - i)
        if b:
            acc = acc + falling * b
        falling = falling * Poly((-i, 1))
    return acc


def indicial_polynomial(l: DiffOp, alpha) -> Poly:
    loc = as_location(alpha)
    m, a = _local(l, loc)
    if _fuchs(m, a) is Classification.IRREGULAR:
        raise IrregularPoint(f"{loc} is an irregular singular point")
    return _indicial(m, a)


def _expand_roots(p: Poly) -> tuple[tuple[Fraction, ...], Poly]:
    roots, residual = rational_roots(p)
    out = []
    for r, mult in roots:
        out.extend([r] * mult)
    return tuple(sorted(out)), residual


def exponents(l: DiffOp, alpha) -> list[Fraction]:
    """Rational exponents (with multiplicity, ascending).

    Use :func:`analyze_point` to also get the unfactored remainder.
    """
    return list(analyze_point(l, alpha).exponents)


def analyze_point(l: DiffOp, alpha) -> SingularReport:
    loc = as_location(alpha)
    m, a = _local(l, loc)
    cls = _fuchs(m, a)
    if cls is Classification.IRREGULAR:
        raise IrregularPoint(f"{loc} is an irregular singular point")
    ind = _indicial(m, a)
    exps, residual = _expand_roots(ind)
    return SingularReport(loc, cls, ind, exps, residual)


def singular_points(l: DiffOp) -> list[SingularReport]:
    """Reports for every finite rational singular point, then infinity if singular.

    Irregular points get a report with no indicial polynomial.
    """
    if l.order < 1:
        raise ValueError("singularity analysis needs order >= 1")
    out = []
    for a in _finite_singularities(l):
        out.append(_report(l, a))
    rep = _report(l, INF)
    if rep.classification is not Classification.ORDINARY:
        out.append(rep)
    return out


def _report(l: DiffOp, loc: Location) -> SingularReport:
    m, a = _local(l, loc)
    cls = _fuchs(m, a)
    if cls is Classification.IRREGULAR:
        return SingularReport(loc, cls, None, (), Poly.const(1))
    ind = _indicial(m, a)
    exps, residual = _expand_roots(ind)
    return SingularReport(loc, cls, ind, exps, residual)

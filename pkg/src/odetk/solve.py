"""Polynomial and exponential (hyperexponential) solutions of Fuchsian operators."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .arith import Poly, RatFunc, as_ratfunc
from .diffop import DiffOp, apply, polynomial_form, right_divide, twist
from .errors import NonFuchsian
from .singular import INF, Classification, singular_points


@dataclass(frozen=True)
class ExpSolution:
    """z = prod (x - alpha)^a * p with logarithmic derivative u."""

    u: RatFunc
    exponent_choice: tuple[tuple[object, Fraction], ...]
    p: Poly


class Outcome(str, enum.Enum):
    FOUND = "found"
    EMPTY_COMPLETE = "empty_complete"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchStatus:
    outcome: Outcome
    solutions: tuple[ExpSolution, ...] = ()
    skipped: tuple[str, ...] = ()

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


def polynomial_solutions(l: DiffOp, n: int) -> list[Poly]:
    """Echelon basis of the polynomial solutions of degree <= n.

    Basis elements are monic, sorted by degree, and each leading monomial is
    absent from the other elements.
    """
    if n < 0:
        raise ValueError("degree bound must be non-negative")
    if not l:
        raise ValueError("polynomial_solutions of the zero operator")
    lp = polynomial_form(l)
    images = []
    for j in range(n + 1):
        images.append(apply(lp, Poly.monomial(j)).num)
    height = max((len(p) for p in images), default=0)
    rows = [[p[i] for p in images] for i in range(height)]
    basis = _linalg.nullspace(rows, n + 1, Fraction(0), Fraction(1))
    if not basis:
        return []
    # echelonize on the highest degree
    rev = [list(reversed(v)) for v in basis]
    red, piv = _linalg.rref(rev)
    polys = [Poly(list(reversed(r))) for r in red[: len(piv)]]
    return sorted(polys, key=lambda p: p.degree)


def verify_right_factor(l: DiffOp, u) -> bool:
    u = as_ratfunc(u)
    return right_divide(l, DiffOp([-u, 1]))[1].is_zero()


def _log_derivative(p: Poly) -> RatFunc:
    return RatFunc(p.diff(), p)


def exponential_solutions(l: DiffOp) -> SearchStatus:
    """All u in Q(x) with D - u a right factor of l, for Fuchsian l.

    Candidates are z = prod (x - a_i)^{e_i} P(x) where e_i runs over the
    rational exponents at the finite singular points and deg P is fixed by an
    exponent at infinity.
    """
    if l.order < 1:
        raise ValueError("exponential_solutions needs order >= 1")
    reports = singular_points(l)
    finite = []
    at_inf = None
    skipped = []
    for rep in reports:
        if rep.classification is Classification.IRREGULAR:
            raise NonFuchsian(f"{rep.location} is an irregular singular point")
        if rep.location is INF:
            at_inf = rep
        else:
            finite.append(rep)
        if not rep.complete:
            skipped.append(f"irrational exponents at {rep.location}: roots of {rep.residual}")
    if at_inf is None:
        inf_exps = [Fraction(i) for i in range(l.order)]  # ordinary at infinity
    else:
        inf_exps = sorted(set(at_inf.exponents))
    finite.sort(key=lambda r: r.location)
    choices = [sorted(set(r.exponents)) for r in finite]
    x = Poly.x()

    found: list[ExpSolution] = []
    seen: set[RatFunc] = set()
    twisted: dict[tuple, DiffOp] = {}
    # infinity is enumerated first, then the finite points in increasing order
    for e_inf in inf_exps:
        for combo in itertools.product(*choices):
            deg = -e_inf - sum(combo, Fraction(0))
            if deg.denominator != 1 or deg < 0:
                continue
            if combo not in twisted:
                u0 = RatFunc()
                for rep, e in zip(finite, combo):
                    if e:
                        u0 = u0 + RatFunc(Poly.const(e), x - rep.location)
                twisted[combo] = (u0, twist(l, u0))
            u0, lt = twisted[combo]
            for p in polynomial_solutions(lt, int(deg)):
                u = u0 + _log_derivative(p)
                if u in seen:
                    continue
                seen.add(u)
                choice = ((INF, e_inf),) + tuple((rep.location, e) for rep, e in zip(finite, combo))
                found.append(ExpSolution(u, choice, p))
    if found:
        return SearchStatus(Outcome.FOUND, tuple(found), tuple(skipped))
    if skipped:
        return SearchStatus(Outcome.INCONCLUSIVE, (), tuple(skipped))
    return SearchStatus(Outcome.EMPTY_COMPLETE)

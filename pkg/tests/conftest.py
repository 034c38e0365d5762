"""Seeded generators shared by the test modules."""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from odetk import DiffOp, Poly, RatFunc  # noqa: E402


def random_poly(rng: random.Random, degree: int, height: int = 5) -> Poly:
    return Poly([Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(degree + 1)])


def random_ratfunc(rng: random.Random, degree: int = 3, poles: bool = True) -> RatFunc:
    num = random_poly(rng, rng.randint(0, degree))
    if not poles or rng.random() < 0.3:
        return RatFunc(num)
    # denominators with rational roots keep singularity analysis in scope
    den = Poly.const(1)
    for _ in range(rng.randint(1, 2)):
        den = den * Poly([-rng.randint(-2, 2), 1])
    return RatFunc(num, den)


def nonzero_ratfunc(rng: random.Random, degree: int = 3, poles: bool = True) -> RatFunc:
    while True:
        f = random_ratfunc(rng, degree, poles)
        if f:
            return f


def random_op(rng: random.Random, max_order: int = 4, degree: int = 3, poles: bool = True,
              order: int | None = None) -> DiffOp:
    n = rng.randint(0, max_order) if order is None else order
    coeffs = [random_ratfunc(rng, degree, poles) for _ in range(n)]
    coeffs.append(nonzero_ratfunc(rng, degree, poles))
    return DiffOp(coeffs)


def rational_lead_op(rng: random.Random, max_order: int = 3, degree: int = 2) -> DiffOp:
    """Random operator whose singular points are all rational."""
    op = random_op(rng, max_order, degree, order=rng.randint(1, max_order))
    lead = RatFunc(Fraction(rng.randint(1, 3)))
    for _ in range(rng.randint(0, 2)):
        lead = lead * RatFunc(Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 2)), 1]))
    return DiffOp(list(op.coeffs[:-1]) + [lead])


def ordinary_point(l: DiffOp, rng: random.Random) -> Fraction:
    """A rational point where every coefficient of the monic form is finite."""
    m = l.monic()
    while True:
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        if all(c.den(a) != 0 for c in m.coeffs):
            return a


def random_poly_op(rng: random.Random, order: int, degree: int = 2) -> DiffOp:
    """Operator with polynomial coefficients and a constant leading term."""
    coeffs = [RatFunc(random_poly(rng, degree)) for _ in range(order)]
    coeffs.append(RatFunc(rng.choice([1, 2, -3])))
    return DiffOp(coeffs)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240607)

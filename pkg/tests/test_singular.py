from fractions import Fraction

import pytest

from conftest import ordinary_point, random_op, rational_lead_op
from odetk import DiffOp, Poly, RatFunc
from odetk.cli import parse
from odetk.diffop import change_var_infinity
from odetk.errors import IrregularPoint, UnsupportedIrrationalSingularity
from odetk.kovacic import symmetric_power, reduce_to_normal_form
from odetk.singular import (
    INF,
    Classification,
    analyze_point,
    exponents,
    fuchs_test,
    indicial_polynomial,
    singular_points,
)

X = RatFunc.x()
D = DiffOp.D()
A = Poly.x()
F = Fraction
KOVACIC = parse("D^2 + 3*(x^2-x+1)/(16*(x-1)^2*x^2)")


def locations(l):
    return [r.location for r in singular_points(l)]


def falling(n: int) -> Poly:
    p = Poly([1])
    for i in range(n):
        p = p * (A - i)
    return p


class TestSingularPoints:
    def test_euler_first_order(self):
        assert locations(X * D - F(2, 3)) == [0, INF]

    def test_kovacic(self):
        reps = singular_points(KOVACIC)
        assert [r.location for r in reps] == [0, 1, INF]
        assert all(r.classification is Classification.REGULAR_SINGULAR for r in reps)

    def test_constant_coefficients(self):
        reps = singular_points(D ** 2)
        assert [r.location for r in reps] == [INF]
        assert reps[0].classification is Classification.REGULAR_SINGULAR

    def test_irrational(self):
        with pytest.raises(UnsupportedIrrationalSingularity) as exc:
            singular_points(D - 1 / (X ** 2 - 2))
        assert exc.value.factor.monic() == Poly([-2, 0, 1])

    def test_airy_irregular_at_infinity(self):
        reps = singular_points(D ** 2 - X)
        assert [r.location for r in reps] == [INF]
        assert reps[0].classification is Classification.IRREGULAR
        assert reps[0].indicial is None


class TestFuchs:
    def test_euler_irregular(self):
        l = D ** 2 + (1 / X + 1 / X ** 2) * D - 1 / X ** 3
        assert fuchs_test(l, 0) is Classification.IRREGULAR

    def test_kovacic_regular(self):
        assert fuchs_test(KOVACIC, 0) is Classification.REGULAR_SINGULAR

    def test_ordinary(self):
        for a in (0, F(1, 2), -7):
            assert fuchs_test(D ** 2, a) is Classification.ORDINARY

    def test_infinity_consistency(self, rng):
        for _ in range(50):
            l = random_op(rng, 3, 2)
            if l.order < 1:
                continue
            t_op, _ = change_var_infinity(l)
            assert fuchs_test(l, INF) is fuchs_test(t_op, 0)
            assert fuchs_test(l, "inf") is fuchs_test(l, INF)


class TestIndicial:
    def test_kovacic(self):
        assert indicial_polynomial(KOVACIC, 0) == A ** 2 - A + F(3, 16)

    def test_ordinary(self):
        l = D ** 3 + X * D + 1
        assert indicial_polynomial(l, F(2, 5)) == falling(3)

    def test_first_order(self):
        assert indicial_polynomial(X * D - 3, 0) == A - 3

    def test_irregular(self):
        with pytest.raises(IrregularPoint):
            indicial_polynomial(D ** 2 - X, INF)

    def test_degree_is_order(self, rng):
        for _ in range(30):
            l = rational_lead_op(rng)
            for r in singular_points(l):
                if r.classification is not Classification.IRREGULAR:
                    assert r.indicial.degree == l.order


class TestExponents:
    def test_kovacic(self):
        assert exponents(KOVACIC, 0) == [F(1, 4), F(3, 4)]

    def test_symmetric_square(self):
        s, _ = reduce_to_normal_form(KOVACIC)
        l2 = symmetric_power(s, 2)
        assert exponents(l2, 0) == [F(1, 2), F(1), F(3, 2)]
        assert exponents(l2, 1) == [F(1, 2), F(1), F(3, 2)]
        assert exponents(l2, INF) == [F(-3, 2), F(-1), F(-1, 2)]

    def test_irrational_residual(self):
        # x^2 y'' + y = 0 at 0: a^2 - a + 1 has no rational roots
        r = analyze_point(D ** 2 + 1 / X ** 2, 0)
        assert r.exponents == () and not r.complete
        assert r.residual.monic() == A ** 2 - A + 1

    def test_ordinary_points(self, rng):
        for _ in range(50):
            l = random_op(rng, 4, 3, order=rng.randint(1, 4))
            a = ordinary_point(l, rng)
            assert fuchs_test(l, a) is Classification.ORDINARY
            assert exponents(l, a) == [F(i) for i in range(l.order)]

    def test_multiplicity(self):
        # Euler operator x^2 D^2 - x D + 1: (a - 1)^2
        l = X ** 2 * D ** 2 - X * D + 1
        assert exponents(l, 0) == [F(1), F(1)]

from fractions import Fraction

import pytest

from conftest import random_op, random_poly
from odetk import DiffOp, Poly, RatFunc
from odetk.arith import derivative, wronskian
from odetk.cli import parse
from odetk.diffop import apply, lclm
from odetk.errors import NonFuchsian
from odetk.kovacic import reduce_to_normal_form, symmetric_power
from odetk.solve import Outcome, exponential_solutions, polynomial_solutions, verify_right_factor

X = RatFunc.x()
D = DiffOp.D()
P = Poly.x()
KOVACIC = parse("D^2 + 3*(x^2-x+1)/(16*(x-1)^2*x^2)")


class TestPolynomialSolutions:
    def test_d2(self):
        assert polynomial_solutions(D ** 2, 5) == [Poly([1]), P]

    def test_euler(self):
        assert polynomial_solutions(X * D - 3, 5) == [P ** 3]

    def test_none(self):
        assert polynomial_solutions(D - 1, 10) == []

    def test_bound_respected(self):
        assert polynomial_solutions(X * D - 3, 2) == []

    def test_random_annihilators(self, rng):
        # the lclm of D - p'/p for random p has p among its solutions
        for _ in range(10):
            p1, p2 = random_poly(rng, 2), random_poly(rng, 1)
            if p1.degree < 1 or p2.degree < 1:
                continue
            l = lclm(D - derivative(RatFunc(p1)) / p1, D - derivative(RatFunc(p2)) / p2)
            basis = polynomial_solutions(l, 4)
            assert len(basis) == 2
            for p in basis:
                assert apply(l, p) == 0
            assert wronskian([RatFunc(p) for p in basis]) != 0


class TestExponentialSolutions:
    def test_kovacic_symmetric_square(self):
        s, _ = reduce_to_normal_form(KOVACIC)
        st = exponential_solutions(symmetric_power(s, 2))
        assert st.outcome is Outcome.FOUND
        first = st.solutions[0]
        assert first.u == (3 * X - 1) / (2 * X * (X - 1))
        assert dict(first.exponent_choice)[Fraction(0)] == Fraction(1, 2)
        assert dict(first.exponent_choice)[Fraction(1)] == 1
        assert first.p.degree == 0

    def test_d2(self):
        st = exponential_solutions(D ** 2)
        assert st.outcome is Outcome.FOUND
        assert {s.u for s in st.solutions} == {RatFunc(0), 1 / X}

    def test_kovacic_empty(self):
        st = exponential_solutions(KOVACIC)
        assert st.outcome is Outcome.EMPTY_COMPLETE and not st.solutions

    def test_inconclusive(self):
        # exponents at 0 are roots of a^2 - a + 1
        st = exponential_solutions(D ** 2 + 1 / X ** 2)
        assert st.outcome is Outcome.INCONCLUSIVE
        assert st.skipped

    def test_non_fuchsian(self):
        with pytest.raises(NonFuchsian):
            exponential_solutions(D ** 2 - X)

    def test_solutions_verify(self, rng):
        # x^a and (x - 1)^b with b a half-integer: no other combination is hyperexponential
        for _ in range(10):
            a, b = rng.randint(-3, 3), Fraction(2 * rng.randint(-3, 2) + 1, 2)
            l = lclm(D - a / X, D - b / (X - 1))
            st = exponential_solutions(l)
            assert st.outcome is Outcome.FOUND
            assert 1 <= len(st.solutions) <= l.order
            for s in st.solutions:
                assert verify_right_factor(l, s.u)
            us = {s.u for s in st.solutions}
            assert a / X in us and b / (X - 1) in us

    def test_deterministic(self):
        s, _ = reduce_to_normal_form(KOVACIC)
        l = symmetric_power(s, 4)
        assert exponential_solutions(l) == exponential_solutions(l)


class TestVerifyRightFactor:
    def test_d2_has_one_over_x(self):
        assert verify_right_factor(D ** 2, 1 / X)

    def test_not_a_factor(self):
        assert not verify_right_factor(D ** 2, 1)

    def test_random(self, rng):
        for _ in range(10):
            u = RatFunc(random_poly(rng, 1), P - rng.randint(-2, 2))
            l = random_op(rng, 2, 2) * (D - u)
            assert verify_right_factor(l, u)

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odetk import Poly, RatFunc
from odetk.asymptotics import (
    EigenTerm,
    NumericRational,
    TruncSeries,
    borel_pade_laplace,
    euler_series,
    formal_borel,
    gevrey_order,
    inverse_borel,
    laplace_along_ray,
    pade,
    pade_auto,
    stokes_directions,
    stokes_jump,
)
from odetk.errors import DegeneratePade, PoleOnRay, SectorViolation

Z = RatFunc.x()
F = Fraction
PI = math.pi


def e1_scaled(z: float, terms: int = 200) -> float:
    """e^z E_1(z) by the continued fraction 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))."""
    acc = z
    for n in range(terms, 0, -1):
        acc = z + n / (1 + n / acc)
    return 1 / acc


def log1p_series(n: int) -> TruncSeries:
    return TruncSeries([0] + [F((-1) ** (m + 1), m) for m in range(1, n + 1)])


def euler_sum(x: float) -> complex:
    v, _ = borel_pade_laplace(euler_series(20), 1, 0.0, x)
    return v


class TestBorel:
    def test_euler_gives_log(self):
        assert formal_borel(euler_series(12)) == log1p_series(12)

    def test_monomial(self):
        for n in range(9):
            y = TruncSeries([0] * n + [1])
            assert formal_borel(y).coeffs[n] == F(1, math.factorial(n))

    def test_level_two(self):
        b = formal_borel(TruncSeries([0, 0, 1]), 2)
        assert b.coeffs[2] == pytest.approx(1.0)

    @given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=15))
    def test_round_trip_exact(self, cs):
        y = TruncSeries(cs)
        assert inverse_borel(formal_borel(y)) == y
        assert formal_borel(y).exact

    def test_round_trip_level(self):
        y = TruncSeries([1, -2, 3, F(1, 2)])
        back = inverse_borel(formal_borel(y, F(3, 2)), F(3, 2))
        assert np.allclose([complex(v) for v in back.coeffs], [1, -2, 3, 0.5], rtol=1e-14)

    def test_rejects_bad_level(self):
        with pytest.raises(ValueError):
            formal_borel(TruncSeries([1]), 0)


class TestPade:
    def test_geometric(self):
        y = TruncSeries.from_ratfunc(1 / (1 + Z), 6)
        assert y.coeffs == tuple(F((-1) ** n) for n in range(7))
        assert pade(y, 0, 1) == 1 / (1 + Z)

    def test_polynomial(self):
        y = TruncSeries([3, F(1, 2), 0, -7])
        assert pade(y, 3, 0) == RatFunc(Poly([3, F(1, 2), 0, -7]))

    def test_log_2_2(self):
        # den 1 + b1 z + b2 z^2 kills the z^3 and z^4 coefficients of den * log(1+z)
        c = [F(0)] + [F((-1) ** (m + 1), m) for m in range(1, 5)]
        # Cramer on [[c2, c1], [c3, c2]] (b1, b2) = (-c3, -c4)
        det = c[2] * c[2] - c[1] * c[3]
        b1 = (-c[3] * c[2] + c[4] * c[1]) / det
        b2 = (-c[4] * c[2] + c[3] * c[3]) / det
        a = [c[0], c[1] + b1 * c[0], c[2] + b1 * c[1] + b2 * c[0]]
        r = pade(log1p_series(4), 2, 2)
        assert r == RatFunc(Poly(a), Poly([1, b1, b2]))
        assert r == (6 * Z + 3 * Z ** 2) / (6 + 6 * Z + Z ** 2)

    def test_matches_through_order(self, rng):
        for _ in range(10):
            cs = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(9)]
            y = TruncSeries(cs)
            p = rng.randint(0, 4)
            try:
                r = pade(y, p, 8 - p)
            except DegeneratePade:
                continue
            assert TruncSeries.from_ratfunc(r, 8) == y

    def test_degenerate(self):
        # 1 + z^2 has no [0/1] approximant with den(0) = 1 that matches z^1
        with pytest.raises(DegeneratePade):
            pade(TruncSeries([0, 0, 1]), 0, 1)

    def test_auto_recovers_degenerate(self):
        r = pade_auto(TruncSeries([1, 0, 0, 0, 0]))
        assert r == RatFunc(1)

    def test_numeric(self):
        y = TruncSeries([1.0, -1.0, 1.0, -1.0])
        r = pade(y, 1, 1)
        assert isinstance(r, NumericRational)
        assert r(0.5) == pytest.approx(1 / 1.5)

    def test_euler_poles_on_cut(self):
        # log(1+z) has a branch cut on (-inf, -1]; Pade poles line up along it
        # and the nearest one closes in on the branch point as N grows
        gaps = []
        for n in (20, 30, 40):
            r = pade_auto(formal_borel(euler_series(n)))
            poles = np.roots([float(v) for v in r.den.c][::-1])
            assert np.all(np.abs(poles.imag) < 1e-6) and np.all(poles.real < -1)
            gaps.append(min(abs(poles + 1)))
        assert gaps[0] > gaps[1] > gaps[2] and gaps[0] < 0.02


class TestLaplace:
    @pytest.mark.parametrize("x", [0.05, 0.1, 0.5])
    def test_borel_monomials(self, x):
        for n in range(9):
            h = formal_borel(TruncSeries([0] * n + [1]))
            v, err = laplace_along_ray(RatFunc(Poly(list(h.coeffs))), 1, 0.0, x)
            assert abs(v - x ** n) <= 1e-8 * x ** n
            assert err <= 1e-9

    def test_geometric_kernel(self):
        v, err = laplace_along_ray(1 / (1 + Z), 1, 0.0, 0.1)
        assert v.real == pytest.approx(10 * e1_scaled(10.0), rel=1e-10)
        assert x_normalized(v, 0.1) == pytest.approx(0.0915633, abs=5e-8)

    def test_oracle_matches_scipy(self):
        special = pytest.importorskip("scipy.special")
        for z in (2.0, 10.0, 20.0):
            assert e1_scaled(z) == pytest.approx(math.exp(z) * special.exp1(z), rel=1e-12)

    @pytest.mark.parametrize("d,x", [(0.0, 0.3), (1.0, 0.5 * cmath.exp(1j)), (-2.0, 2 * cmath.exp(-2.3j))])
    def test_constant(self, d, x):
        v, _ = laplace_along_ray(RatFunc(1), 1, d, x)
        assert abs(v - 1) < 1e-10

    def test_level_two(self):
        # B_2(x^2) = z^2 / Gamma(2), and L_2 takes it back to x^2
        v, _ = laplace_along_ray(Z ** 2, 2, 0.0, 0.3)
        assert v == pytest.approx(0.09, rel=1e-9)

    def test_pole_on_ray(self):
        with pytest.raises(PoleOnRay):
            laplace_along_ray(1 / (1 + Z), 1, PI, 0.1)

    def test_sector_violation(self):
        with pytest.raises(SectorViolation):
            laplace_along_ray(RatFunc(1), 1, PI / 2, 0.1)

    def test_honest_error(self):
        corpus = [
            (1 / (1 + Z), 1, 0.0, 0.1),
            (1 / (1 + Z), 1, 0.5, 0.3 * cmath.exp(0.2j)),
            (Z ** 5 / 120, 1, 0.0, 0.5),
            (1 / (Z ** 2 + 4), 1, 0.3, 1.0),
            (Z / (1 + Z) ** 2, 2, 0.0, 0.4),
        ]
        for h, k, d, x in corpus:
            for tol in (1e-6, 1e-8, 1e-10):
                v1, e1 = laplace_along_ray(h, k, d, x, tol)
                v2, _ = laplace_along_ray(h, k, d, x, tol / 2)
                assert abs(v1 - v2) <= e1


def x_normalized(v: complex, x: float) -> float:
    return (v * x).real


class TestBorelPadeLaplace:
    @pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
    def test_euler_equation(self, x):
        h = 1e-4 * x
        f = euler_sum(x)
        df = (euler_sum(x + h) - euler_sum(x - h)) / (2 * h)
        assert abs(x ** 2 * df + f - x) <= 1e-6

    def test_euler_value(self):
        assert euler_sum(0.1).real == pytest.approx(e1_scaled(10.0), rel=1e-6)

    def test_polynomial_round_trip(self):
        for p in (Poly([1, -2, F(1, 3), 5]), Poly([0] * 6 + [F(1, 2)]), Poly([F(-3, 7)])):
            y = TruncSeries.from_poly(p)
            for x in (0.1, 0.7):
                v, _ = borel_pade_laplace(y, 1, 0.0, x)
                assert abs(v - float(p(F(x)))) < 1e-9

    def test_pole_on_ray(self):
        with pytest.raises(PoleOnRay):
            borel_pade_laplace(euler_series(20), 1, PI, 0.1)


class TestStokesJump:
    def test_euler_residue(self):
        # the ray at pi + delta minus the ray at pi - delta circles zeta = -1 clockwise
        x = -0.2
        jump, _ = stokes_jump(euler_series(20), 1, PI, x, 0.2)
        expected = -2j * PI * math.exp(1 / x)
        assert abs(jump - expected) <= 1e-4 * abs(expected)

    def test_no_jump_at_zero(self):
        jump, err = stokes_jump(euler_series(20), 1, 0.0, 0.1, 0.2)
        assert abs(jump) <= 1e-9

    def test_convergent_series(self):
        y = TruncSeries([1, 1, F(1, 2), F(1, 6)])
        for d in (0.0, 1.0, PI):
            x = 0.2 * cmath.exp(1j * d)
            jump, err = stokes_jump(y, 1, d, x, 0.1)
            assert abs(jump) <= max(err, 1e-9)


class TestStokesDirections:
    def test_euler(self):
        rep = stokes_directions([EigenTerm(1, 1)])
        assert rep.stokes == pytest.approx((PI / 2, 3 * PI / 2), abs=1e-12)
        assert len(rep.negative_pairs) == 1
        assert rep.negative_pairs[0] == pytest.approx((PI / 2, 3 * PI / 2), abs=1e-12)
        assert rep.singular == pytest.approx((PI,), abs=1e-12)

    def test_airy(self):
        rep = stokes_directions([EigenTerm(F(4, 3), F(3, 2)), EigenTerm(F(-4, 3), F(3, 2))])
        assert rep.singular == pytest.approx((0.0, 2 * PI / 3, 4 * PI / 3), abs=1e-12)

    def test_empty(self):
        rep = stokes_directions([])
        assert rep.stokes == () and rep.negative_pairs == () and rep.singular == ()

    def test_sorted_range(self, rng):
        for _ in range(20):
            terms = [EigenTerm(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                           F(rng.randint(1, 5), rng.randint(1, 3))) for _ in range(rng.randint(1, 3))]
            rep = stokes_directions(terms)
            for vals in (rep.stokes, rep.singular):
                assert list(vals) == sorted(vals)
                assert all(0 <= v < 2 * PI for v in vals)

    def test_negative_on_pairs(self, rng):
        # on some branch of x^-k, c x^-k is real negative along each singular direction
        for _ in range(20):
            t = EigenTerm(cmath.exp(1j * rng.uniform(-3, 3)), F(rng.randint(1, 4), rng.randint(1, 2)))
            for s in stokes_directions([t]).singular:
                vals = [t.c * cmath.exp(-1j * float(t.k) * (s + 2 * PI * j)) for j in range(t.k.denominator)]
                assert min(abs(v + 1) for v in vals) <= 1e-12

    @settings(max_examples=50, deadline=None)
    @given(st.floats(-3.0, 3.0), st.sampled_from([F(1), F(3, 2), F(2), F(1, 2)]))
    def test_rotation_equivariance(self, theta, k):
        base = [EigenTerm(1, k), EigenTerm(-2j, k)]
        rotated = [EigenTerm(t.c * cmath.exp(1j * theta), t.k) for t in base]
        a, b = stokes_directions(base), stokes_directions(rotated)

        def circle_gap(u, v):
            g = abs(u - v) % (2 * PI)
            return min(g, 2 * PI - g)

        for got, old in ((b.singular, a.singular), (b.stokes, a.stokes)):
            assert len(got) == len(old)
            for v in old:
                assert min(circle_gap(g, v + theta / float(k)) for g in got) <= 1e-12


class TestGevrey:
    def test_euler(self):
        assert gevrey_order(euler_series(30)) == pytest.approx(1.0, abs=0.05)

    def test_level_half(self):
        y = TruncSeries([math.factorial(2 * n) for n in range(25)])
        assert gevrey_order(y) == pytest.approx(0.5, abs=0.05)

    def test_convergent(self):
        assert gevrey_order(TruncSeries([1] * 20)) is None

    def test_too_short(self):
        assert gevrey_order(TruncSeries([1, 2])) is None

"""Borel-Pade-Laplace summation of divergent series and Stokes geometry.

The formal side (Borel transform, Pade approximants) is exact over Q when the
Gevrey level is 1. Everything after that is double precision: the Laplace
integral along a ray is computed by adaptive Gauss-Legendre quadrature on the
rotated variable w = (zeta/x)^k, for which the kernel is exp(-w).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import _linalg
from .arith import Poly, RatFunc
from .errors import DegeneratePade, PoleOnRay, SectorViolation

TWO_PI = 2 * math.pi
_GL_ORDER = 20
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)


@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 x + ... + c_N x^N.

    Coefficients are Fractions for exact series and floats (or complex)
    for series that went through a non-integral Borel transform.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        c = tuple(v if isinstance(v, (float, complex)) else Fraction(v) for v in coeffs)
        if not c:
            c = (Fraction(0),)
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (complex(c) if not isinstance(c, Fraction) else c)
        return acc

    @classmethod
    def from_poly(cls, p: Poly, n: int | None = None) -> "TruncSeries":
        """Coefficients of p through x^n.

        The default n = 2 deg p keeps enough known zeros for the
        near-diagonal Pade step to give back p itself.
        """
        n = 2 * max(p.degree, 0) if n is None else n
        return cls([p[i] for i in range(n + 1)])

    @classmethod
    def from_ratfunc(cls, f: RatFunc, n: int) -> "TruncSeries":
        """Taylor coefficients of f at 0 through order n."""
        num, den = f.num, f.den
        if den[0] == 0:
            raise ValueError("rational function has a pole at 0")
        inv0 = 1 / den[0]
        c = []
        for i in range(n + 1):
            acc = num[i] - sum(den[j] * c[i - j] for j in range(1, min(i, den.degree) + 1))
            c.append(acc * inv0)
        return cls(c)


@dataclass(frozen=True)
class EigenTerm:
    """Leading part c * x^(-k) of an exponent q(1/x) in exp(q)."""

    c: complex
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "k", Fraction(self.k))
        if self.c == 0:
            raise ValueError("eigen term coefficient must be nonzero")
        if self.k <= 0:
            raise ValueError("eigen term level must be positive")


@dataclass(frozen=True)
class NumericRational:
    """num(z)/den(z) with floating coefficients, lowest degree first."""

    num: tuple
    den: tuple

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polyval(self.num[::-1], z) / np.polyval(self.den[::-1], z)

    def poles(self) -> np.ndarray:
        return _roots(self.den)


def euler_series(n: int) -> TruncSeries:
    """sum_{m>=0} (-1)^m m! x^(m+1), truncated at x^n."""
    c = [Fraction(0)] * (n + 1)
    for m in range(n):
        c[m + 1] = Fraction((-1) ** m * math.factorial(m))
    return TruncSeries(c)


def formal_borel(y: TruncSeries, k=1) -> TruncSeries:
    """Divide c_n by Gamma(1 + n/k); exact when k == 1."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("Borel level must be positive")
    if k == 1 and y.exact:
        return TruncSeries([c / math.factorial(n) for n, c in enumerate(y.coeffs)])
    return TruncSeries([_num(c) / math.gamma(1 + n / k) for n, c in enumerate(y.coeffs)])


def inverse_borel(y: TruncSeries, k=1) -> TruncSeries:
    k = Fraction(k)
    if k == 1 and y.exact:
        return TruncSeries([c * math.factorial(n) for n, c in enumerate(y.coeffs)])
    return TruncSeries([_num(c) * math.gamma(1 + n / k) for n, c in enumerate(y.coeffs)])


def pade(y: TruncSeries, p: int, q: int):
    """[p/q] Pade approximant with den(0) = 1.

    Returns a RatFunc for exact input and a NumericRational otherwise.
    Raises DegeneratePade when the denominator system is singular.
    """
    if p < 0 or q < 0:
        raise ValueError("Pade degrees must be non-negative")
    n = y.truncation
    if p + q > n:
        raise ValueError(f"[{p}/{q}] needs p + q <= {n}")
    c = y.coeffs
    exact = y.exact

    def coef(i):
        return c[i] if 0 <= i <= n else 0

    # sum_{j=0}^q b_j c_{i-j} = 0 for i = p+1 .. p+q, with b_0 = 1
    if q == 0:
        b = [1]
    else:
        rows = [[coef(i - j) for j in range(1, q + 1)] for i in range(p + 1, p + q + 1)]
        rhs = [-coef(i) for i in range(p + 1, p + q + 1)]
        if exact:
            aug = [r + [v] for r, v in zip(rows, rhs)]
            m, pivots = _linalg.rref(aug, q)
            if pivots != list(range(q)):
                raise DegeneratePade(f"[{p}/{q}] denominator system is singular")
            b = [Fraction(1)] + [m[i][q] for i in range(q)]
        else:
            a = np.array(rows, dtype=complex)
            if np.linalg.matrix_rank(a) < q:
                raise DegeneratePade(f"[{p}/{q}] denominator system is singular")
            b = [1.0] + list(np.linalg.solve(a, np.array(rhs, dtype=complex)))
    a_coef = [sum(b[j] * coef(i - j) for j in range(min(i, q) + 1)) for i in range(p + 1)]
    if exact:
        return RatFunc(Poly(a_coef), Poly(b))
    return NumericRational(tuple(complex(v) for v in a_coef), tuple(complex(v) for v in b))


def pade_auto(y: TruncSeries):
    """Near-diagonal Pade of total degree N; q drops on degenerate systems."""
    n = y.truncation
    q = n // 2
    while True:
        try:
            return pade(y, n - q, q)
        except DegeneratePade:
            if q == 0:
                raise
            q -= 1


def _num(v) -> complex | float:
    if isinstance(v, Fraction):
        return float(v)
    return v


def _roots(c: Sequence) -> np.ndarray:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return np.array([], dtype=complex)
    return np.roots(np.array(c[::-1], dtype=complex))


def _as_callable(h) -> tuple[Callable, np.ndarray]:
    """Vectorised evaluator plus the list of poles (if known)."""
    if isinstance(h, RatFunc):
        num = np.array([float(v) for v in h.num.c][::-1] or [0.0])
        den = np.array([float(v) for v in h.den.c][::-1])
        return (lambda z: np.polyval(num, z) / np.polyval(den, z)), _roots(h.den.c)
    if isinstance(h, NumericRational):
        return h, h.poles()
    if isinstance(h, Poly):
        num = np.array([float(v) for v in h.c][::-1] or [0.0])
        return (lambda z: np.polyval(num, z)), np.array([], dtype=complex)
    if isinstance(h, TruncSeries):
        num = np.array([complex(_num(v)) for v in h.coeffs][::-1])
        return (lambda z: np.polyval(num, z)), np.array([], dtype=complex)
    if callable(h):
        return (lambda z: np.asarray(h(z), dtype=complex)), np.array([], dtype=complex)
    v = complex(h)
    return (lambda z: np.full(np.shape(z), v)), np.array([], dtype=complex)


def _reduce_angle(a: float) -> float:
    """Representative in (-pi, pi]."""
    a = math.remainder(a, TWO_PI)
    return math.pi if a == -math.pi else a


def check_ray(poles: np.ndarray, d: float, rtol: float = 1e-8) -> None:
    direction = cmath.exp(1j * d)
    for z in poles:
        t = (z * direction.conjugate()).real  # projection onto the ray
        if t < 0:
            dist = abs(z)
        else:
            dist = abs(z - t * direction)
        if dist <= rtol * max(1.0, abs(z)):
            raise PoleOnRay(f"pole at {z:.6g} lies on the ray arg = {d:.6g}")


def _gl(f: Callable, a: float, b: float) -> complex:
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return half * complex(np.dot(_GL_WEIGHTS, f(mid + half * _GL_NODES)))


def _adaptive(f: Callable, a: float, b: float, eps: float, depth: int = 0) -> tuple[complex, float]:
    whole = _gl(f, a, b)
    m = 0.5 * (a + b)
    left, right = _gl(f, a, m), _gl(f, m, b)
    err = abs(left + right - whole)
    if err <= eps or depth >= 40:
        return left + right, err
    lv, le = _adaptive(f, a, m, eps / 2, depth + 1)
    rv, re = _adaptive(f, m, b, eps / 2, depth + 1)
    return lv + rv, le + re


def laplace_along_ray(h, k, d: float, x: complex, tol: float = 1e-10) -> tuple[complex, float]:
    """Integral of h(zeta) exp(-(zeta/x)^k) d((zeta/x)^k) along arg(zeta) = d.

    Returns (value, error estimate). The estimate combines the quadrature
    error of every panel with a bound for the truncated tail. The absolute
    target is ``tol``, relaxed to 1e-13 times the running value for tiny
    integrands.
    """
    k = Fraction(k)
    x = complex(x)
    d = float(d)
    if x == 0:
        raise SectorViolation("x must be nonzero")
    func, poles = _as_callable(h)
    check_ray(poles, d)
    phi = _reduce_angle(float(k) * (d - cmath.phase(x)))
    cphi = math.cos(phi)
    if cphi <= 1e-12:
        raise SectorViolation(f"Re((zeta/x)^k) does not grow along arg = {d:.6g} for x = {x}")
    rot = cmath.exp(1j * phi)
    ray = cmath.exp(1j * d)
    ax = abs(x)
    kf = float(k)

    def integrand(rho):
        rho = np.asarray(rho, dtype=float)
        zeta = ax * np.power(rho, 1.0 / kf) * ray
        return rot * func(zeta) * np.exp(-rho * rot)

    # panels [0, 1], [1, 2], [2, 4], ... in the decay variable rho cos(phi)
    scale = 1.0 / cphi
    total, err = 0j, 0.0
    a, b = 0.0, scale
    last_peak = math.inf
    for _ in range(200):
        eps = max(tol, 1e-13 * abs(total))
        v, e = _adaptive(integrand, a, b, eps / 4)
        total += v
        err += e
        peak = float(np.max(np.abs(integrand(np.linspace(a, b, 9)[1:]))))
        end_val = abs(complex(integrand(np.array([b]))[0]))
        # once the integrand is decreasing, int_b^inf |f| <= |f(b)| * scale * C
        tail = end_val * scale * 2.0
        if b >= 40 * scale and end_val <= peak and peak <= last_peak and tail <= max(tol, 1e-13 * abs(total)) / 2:
            return total, err + tail
        last_peak = peak
        a, b = b, 2 * b if b >= 1 else b + scale
    raise ArithmeticError("Laplace integral did not converge")


def borel_pade_laplace(y: TruncSeries, k, d: float, x: complex, tol: float = 1e-10) -> tuple[complex, float]:
    """Laplace transform of the Pade continuation of the Borel transform."""
    h = pade_auto(formal_borel(y, k))
    return laplace_along_ray(h, k, d, x, tol)


def stokes_jump(y: TruncSeries, k, d: float, x: complex, delta: float, tol: float = 1e-10) -> tuple[complex, float]:
    """Sum along d + delta minus sum along d - delta."""
    h = pade_auto(formal_borel(y, k))
    up, e1 = laplace_along_ray(h, k, d + delta, x, tol)
    down, e2 = laplace_along_ray(h, k, d - delta, x, tol)
    return up - down, e1 + e2


@dataclass(frozen=True)
class DirectionReport:
    stokes: tuple[float, ...]
    negative_pairs: tuple[tuple[float, float], ...]
    singular: tuple[float, ...]


_ANGLE_EPS = 1e-12


def _mod2pi(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    if a < 0:
        a += TWO_PI
    if a >= TWO_PI - _ANGLE_EPS or abs(a) < _ANGLE_EPS:
        a = 0.0
    return a


def _dedupe(vals) -> list[float]:
    out = []
    for v in sorted(vals):
        if not out or v - out[-1] > 1e-10:
            out.append(v)
    if len(out) > 1 and out[0] + TWO_PI - out[-1] <= 1e-10:
        out.pop()
    return out


def stokes_directions(terms: Sequence[EigenTerm]) -> DirectionReport:
    """Directions in [0, 2pi) where exp(c x^-k) changes dominance.

    Stokes directions solve Re(c x^-k) = 0, negative pairs bound the sectors
    where Re(c x^-k) < 0, and singular directions bisect those sectors.
    """
    stokes, pairs, singular = [], [], []
    for t in terms:
        gamma = cmath.phase(t.c)
        kf = float(t.k)
        p = t.k.numerator
        # c x^-k has argument gamma - k*theta; the p branches of x^-k fill the circle
        for j in range(2 * p):
            stokes.append(_mod2pi((gamma - math.pi / 2 - math.pi * j) / kf))
        half = math.pi / (2 * kf)
        for j in range(p):
            s = _mod2pi((gamma - math.pi - TWO_PI * j) / kf)
            singular.append(s)
            pairs.append((s, half))
    singular = _dedupe(singular)
    seen = []
    for s, half in sorted(pairs):
        pair = (_mod2pi(s - half), _mod2pi(s + half))
        if not any(abs(pair[0] - a) <= 1e-10 and abs(pair[1] - b) <= 1e-10 for a, b in seen):
            seen.append(pair)
    return DirectionReport(tuple(_dedupe(stokes)), tuple(sorted(seen)), tuple(singular))


def gevrey_order(y: TruncSeries, start: int = 2) -> float | None:
    """Advisory estimate of k from a least-squares fit of log|c_n| on log n!.

    Returns None when too few nonzero coefficients are available.
    """
    pts = [(n, math.log(abs(_num(c)))) for n, c in enumerate(y.coeffs) if n >= start and c != 0]
    if len(pts) < 4:
        return None
    # log|c_n| ~ (1/k) log n! + n log A + b log n + const
    a = np.array([[math.lgamma(n + 1), n, math.log(n), 1.0] for n, _ in pts])
    b = np.array([v for _, v in pts])
    slope = np.linalg.lstsq(a, b, rcond=None)[0][0]
    if slope <= 1e-9:
        return None
    return 1.0 / slope

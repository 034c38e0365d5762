"""Exact arithmetic over Q: dense polynomials and reduced rational functions.

Scalars are :class:`fractions.Fraction`.  ``Poly`` stores its coefficients
lowest degree first; the zero polynomial is the empty tuple and has degree
``-inf``.  ``RatFunc`` is always kept with ``gcd(num, den) = 1`` and a monic
denominator, so structural equality is value equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import flint

from ._linalg import det
from .errors import PoleTooDeep, ZeroDenominator

Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def _scaled_ints(c: tuple) -> tuple[list[int], int]:
    den = 1
    for v in c:
        d = v.denominator
        if d != 1 and den % d:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [v.numerator for v in c], 1
    return [v.numerator * (den // v.denominator) for v in c], den


class Poly:
    """Univariate polynomial with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_frac(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c: tuple) -> "Poly":
        p = object.__new__(cls)
        p.c = c
        return p

    @classmethod
    def const(cls, a: Scalar) -> "Poly":
        return cls((a,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, a: Scalar = 1) -> "Poly":
        return cls([0] * n + [a])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # -- queries -----------------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1 if self.c else -math.inf

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else ZERO

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __getitem__(self, i: int) -> Fraction:
        return self.c[i] if 0 <= i < len(self.c) else ZERO

    def __len__(self) -> int:
        return len(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly.const(other).c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.c))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return poly_str(self)

    def __call__(self, v):
        acc = ZERO if isinstance(v, (int, Fraction)) else 0
        for a in reversed(self.c):
            acc = acc * v + a
        return acc

    # -- ring operations ---------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-a for a in self.c))

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly._raw(tuple(a * other for a in self.c))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        if len(a) == 1 or len(b) == 1:
            k, p = (a[0], b) if len(a) == 1 else (b[0], a)
            return Poly._raw(tuple(v * k for v in p))
        # integer convolution over a common denominator
        ia, da = _scaled_ints(a)
        ib, db = _scaled_ints(b)
        out = [0] * (len(ia) + len(ib) - 1)
        for i, u in enumerate(ia):
            if u:
                for j, v in enumerate(ib):
                    if v:
                        out[i + j] += u * v
        den = da * db
        return Poly._raw(tuple(Fraction(v, den) for v in out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = len(other.c) - 1
        inv = 1 / other.c[-1]
        if len(r) - 1 < db:
            return Poly(), self
        q = [ZERO] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db] * inv
            q[k] = t
            if t:
                for j, b in enumerate(other.c):
                    r[k + j] -= t * b
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if not self.c or self.c[-1] == 1:
            return self
        inv = 1 / self.c[-1]
        return Poly._raw(tuple(a * inv for a in self.c))

    def diff(self) -> "Poly":
        return Poly._raw(tuple(i * a for i, a in enumerate(self.c) if i))

    def shift(self, a: Scalar) -> "Poly":
        """Return p(x + a) (Taylor shift)."""
        a = _frac(a)
        out = list(self.c)
        n = len(out)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += a * out[j + 1]
        return Poly(out)

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n p(1/x); n defaults to deg p."""
        if not self.c:
            return self
        d = len(self.c) - 1
        n = d if n is None else n
        return Poly([0] * (n - d) + list(reversed(self.c)))

    def content(self) -> Fraction:
        """Positive rational c with p/c primitive in Z[x]."""
        if not self.c:
            return ONE
        den = 1
        for a in self.c:
            den = den * a.denominator // math.gcd(den, a.denominator)
        g = 0
        for a in self.c:
            g = math.gcd(g, int(a * den))
        return Fraction(g, den)

    def primitive(self) -> list[int]:
        """Integer coefficients of the primitive part with positive leading term."""
        if not self.c:
            return []
        return _signed_primitive(self)[1]

    def multiplicity(self, a: Scalar) -> int:
        """Order of vanishing of p at x = a (p must be nonzero)."""
        if not self.c:
            raise ValueError("multiplicity of a root of the zero polynomial")
        a = _frac(a)
        k, p = 0, self
        lin = Poly((-a, 1))
        while True:
            q, r = p.divmod(lin)
            if r:
                return k
            k += 1
            p = q


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero iff both inputs are zero)."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly.const(1)
    g = flint.fmpz_poly(a.primitive()).gcd(flint.fmpz_poly(b.primitive()))
    return Poly([int(v) for v in g.coeffs()]).monic()


def _signed_primitive(p: Poly) -> tuple[Fraction, list[int]]:
    """(c, q) with p = c * q, q primitive in Z[x] with positive leading term."""
    ints, den = _scaled_ints(p.c)
    g = 0
    for v in ints:
        g = math.gcd(g, v)
        if g == 1:
            break
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [v // g for v in ints]


def poly_gcd_cofactors(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, a/g, b/g) with g the monic gcd; a and b must be nonzero."""
    if a.degree == 0 or b.degree == 0:
        return Poly.const(1), a, b
    ca, ia = _signed_primitive(a)
    cb, ib = _signed_primitive(b)
    fa, fb = flint.fmpz_poly(ia), flint.fmpz_poly(ib)
    h = fa.gcd(fb)
    hc = [int(v) for v in h.coeffs()]
    lh = hc[-1]
    g = Poly._raw(tuple(Fraction(v, lh) for v in hc))
    return g, _scaled(fa // h, lh * ca), _scaled(fb // h, lh * cb)


def _scaled(p, m: Fraction) -> Poly:
    """m * p for an integer polynomial p, one Fraction per coefficient."""
    n, d = m.numerator, m.denominator
    if d == 1:
        return Poly._raw(tuple(Fraction(int(v) * n) for v in p.coeffs()))
    return Poly._raw(tuple(Fraction(int(v) * n, d) for v in p.coeffs()))


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    t0, t1 = Poly(), Poly.const(1)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors f_i with p = lc * prod f_i^i."""
    if p.degree <= 0:
        return []
    f = p.monic()
    out = []
    df = f.diff()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    i = 1
    while b.degree > 0:
        d = c - b.diff()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


def rational_roots(p: Poly) -> tuple[list[tuple[Fraction, int]], Poly]:
    """Rational roots of ``p`` with multiplicities, plus the unfactored rest.

    The residual satisfies ``p == residual * prod((x - r)**m)`` exactly, so
    it keeps the leading coefficient of ``p``.
    """
    if not p:
        raise ValueError("rational_roots of the zero polynomial")
    found = []
    if p.degree > 0:
        # linear factors over Z are exactly the rational roots
        _, factors = flint.fmpz_poly(p.primitive()).factor()
        for f, mult in factors:
            if f.degree() == 1:
                b, a = (int(v) for v in f.coeffs())
                found.append((Fraction(-b, a), mult))
    found.sort()
    residual = p
    for r, m in found:
        residual = residual // (Poly((-r, 1)) ** m)
    return found, residual


# --------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced quotient num/den of polynomials over Q, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(1)
            return
        if den.degree > 0 and num.degree > 0:
            _, num, den = poly_gcd_cofactors(num, den)
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def x(cls) -> "RatFunc":
        return cls._raw(Poly.x(), Poly.const(1))

    @classmethod
    def const(cls, a: Scalar) -> "RatFunc":
        return cls(Poly.const(a))

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not a constant")
        return self.num[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.num[0] == other
        if isinstance(other, Poly):
            return self.is_poly() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num.c, self.den.c))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        return ratfunc_str(self)

    def __call__(self, v):
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at {v}")
        return self.num(v) / d

    # -- field operations --------------------------------------------------
    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        b, d = self.den, other.den
        if b.degree == 0 and d.degree == 0:
            return RatFunc._raw(self.num + other.num, b)
        if b.degree == 0:
            return RatFunc._raw(self.num * d + other.num, d)
        if d.degree == 0:
            return RatFunc._raw(self.num + other.num * b, b)
        if b == d:
            return RatFunc(self.num + other.num, b)
        g, b1, d1 = poly_gcd_cofactors(b, d)
        if g.degree == 0:
            return RatFunc._raw(self.num * d + other.num * b, b * d)
        t = self.num * d1 + other.num * b1
        if not t:
            return RatFunc()
        if t.degree > 0:
            _, t, g = poly_gcd_cofactors(t, g)
        den = b1 * d1 * g
        inv = 1 / den.lc
        return RatFunc._raw(t * inv, den * inv)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc()
            return RatFunc._raw(self.num * _frac(other), self.den)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc()
        # cross-cancel before multiplying
        _, n1, d2 = poly_gcd_cofactors(self.num, other.den)
        _, n2, d1 = poly_gcd_cofactors(other.num, self.den)
        n = n1 * n2
        d = d1 * d2
        inv = 1 / d.lc
        return RatFunc._raw(n * inv, d * inv)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        inv = 1 / self.num.lc
        return RatFunc._raw(self.den * inv, self.num * inv)

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def diff(self) -> "RatFunc":
        return derivative(self)

    def substitute_inverse(self) -> "RatFunc":
        """f(1/x)."""
        if not self.num:
            return self
        dn, dd = self.num.degree, self.den.degree
        n, d = self.num.reverse(), self.den.reverse()
        if dd >= dn:
            n = n * Poly.monomial(dd - dn)
        else:
            d = d * Poly.monomial(dn - dd)
        return RatFunc(n, d)


def _coerce(v) -> RatFunc | None:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFunc._raw(Poly.const(v), Poly.const(1))
    if isinstance(v, Poly):
        return RatFunc._raw(v, Poly.const(1))
    return None


def as_ratfunc(v) -> RatFunc:
    f = _coerce(v)
    if f is None:
        raise TypeError(f"cannot interpret {v!r} as a rational function")
    return f


def normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduce num/den to lowest terms with a monic denominator."""
    return RatFunc(num, den)


def derivative(f: RatFunc) -> RatFunc:
    if f.den.degree == 0:
        return RatFunc._raw(f.num.diff(), f.den)
    # (n/d)' = (n'd - nd')/d^2; only gcd(d, d') can cancel
    n, d = f.num, f.den
    dd = d.diff()
    _, dg, ddg = poly_gcd_cofactors(d, dd)
    num = n.diff() * dg - n * ddg
    return RatFunc(num, dg * d)


def pole_order(f: RatFunc, alpha: Scalar) -> int:
    """Pole order of f at alpha; negative values are orders of zeros."""
    if not f.num:
        # the zero function vanishes to infinite order
        return -math.inf
    return f.den.multiplicity(alpha) - f.num.multiplicity(alpha)


def scaled_limit(f: RatFunc, alpha: Scalar, m: int) -> Fraction:
    """Value of (x - alpha)^m * f at x = alpha."""
    if not f.num:
        return ZERO
    alpha = _frac(alpha)
    k = pole_order(f, alpha)
    if k > m:
        raise PoleTooDeep(f"pole of order {k} at {alpha} exceeds {m}")
    if k < m:
        return ZERO
    lin = Poly((-alpha, 1))
    num, den = f.num, f.den
    if k >= 0:
        den = den // lin ** k
    else:
        num = num // lin ** (-k)
    return num(alpha) / den(alpha)


def wronskian(fs: Sequence[RatFunc]) -> RatFunc:
    if not fs:
        raise ValueError("wronskian of an empty list")
    rows = [list(map(as_ratfunc, fs))]
    for _ in range(len(fs) - 1):
        rows.append([derivative(f) for f in rows[-1]])
    return det(rows)


# --------------------------------------------------------------------------
# formatting


def frac_str(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def poly_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p.c) - 1, -1, -1):
        a = p.c[i]
        if not a:
            continue
        neg = a < 0
        a = abs(a)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = frac_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{frac_str(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _is_atomic(p: Poly) -> bool:
    nz = [a for a in p.c if a]
    return len(nz) == 1 and (p.degree == 0 or nz[0] == 1) and nz[0] > 0


def ratfunc_str(f: RatFunc, var: str = "x") -> str:
    if f.den.degree == 0:
        return poly_str(f.num, var)
    n = poly_str(f.num, var)
    d = poly_str(f.den, var)
    if not _is_atomic(f.num):
        n = f"({n})"
    if not _is_atomic(f.den):
        d = f"({d})"
    return f"{n}/{d}"

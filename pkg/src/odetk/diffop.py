"""The Ore ring Q(x)[D] of linear differential operators.

``DiffOp`` holds coefficients c_0..c_n (c_i multiplies D^i, coefficients on
the left).  Products follow D*a = a*D + a'.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .arith import Poly, RatFunc, as_ratfunc, derivative
from .errors import DivisionByZeroOperator

_ZERO = RatFunc()
_ONE = RatFunc(1)


class DiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_ratfunc(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def D(cls, n: int = 1) -> "DiffOp":
        return cls([0] * n + [1])

    @classmethod
    def scalar(cls, a) -> "DiffOp":
        return cls([a])

    # -- queries -----------------------------------------------------------
    @property
    def order(self) -> int:
        """Order; -1 for the zero operator."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __getitem__(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffOp):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, RatFunc, Poly)):
            return self.coeffs == DiffOp([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DiffOp({self})"

    def __str__(self) -> str:
        from .cli.printer import format_op

        return format_op(self)

    def monic(self) -> "DiffOp":
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return DiffOp([c * inv for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == 1

    # -- arithmetic --------------------------------------------------------
    def __neg__(self) -> "DiffOp":
        return DiffOp([-c for c in self.coeffs])

    def __add__(self, other) -> "DiffOp":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "DiffOp":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DiffOp":
        return (-self) + other

    def __mul__(self, other) -> "DiffOp":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other) -> "DiffOp":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return multiply(other, self)

    def __pow__(self, n: int) -> "DiffOp":
        out = DiffOp([1])
        for _ in range(n):
            out = out * self
        return out

    def left_scale(self, a: RatFunc) -> "DiffOp":
        """a * L."""
        return DiffOp([a * c for c in self.coeffs])

    def __call__(self, f) -> RatFunc:
        return apply(self, f)


def _coerce(v) -> DiffOp | None:
    if isinstance(v, DiffOp):
        return v
    if isinstance(v, (int, Fraction, RatFunc, Poly)):
        return DiffOp([v])
    return None


def _d_times(coeffs: list) -> list:
    """Coefficients of D * L given those of L."""
    out = [_ZERO] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        if c:
            out[j] = out[j] + derivative(c)
            out[j + 1] = out[j + 1] + c
    return out


def multiply(l1: DiffOp, l2: DiffOp) -> DiffOp:
    if not l1 or not l2:
        return DiffOp()
    acc = [_ZERO] * (l1.order + l2.order + 1)
    cur = list(l2.coeffs)  # D^i * l2
    for i, a in enumerate(l1.coeffs):
        if i:
            cur = _d_times(cur)
        if a:
            for j, c in enumerate(cur):
                if c:
                    acc[j] = acc[j] + a * c
    return DiffOp(acc)


def right_divide(l2: DiffOp, l1: DiffOp) -> tuple[DiffOp, DiffOp]:
    """(Q, R) with l2 = Q*l1 + R and ord R < ord l1."""
    if not l1:
        raise DivisionByZeroOperator("right division by the zero operator")
    n = l1.order
    inv = l1.lc.inverse()
    q = [_ZERO] * max(l2.order - n + 1, 0)
    r = list(l2.coeffs)
    # D^d * l1, built incrementally from the top degree down
    shifts = [list(l1.coeffs)]
    for _ in range(len(q) - 1):
        shifts.append(_d_times(shifts[-1]))
    while len(r) - 1 >= n:
        d = len(r) - 1 - n
        t = r[-1] * inv
        q[d] = t
        for j, c in enumerate(shifts[d]):
            if c:
                r[j] = r[j] - t * c
        while r and not r[-1]:
            r.pop()
    return DiffOp(q), DiffOp(r)


def gcrd(l1: DiffOp, l2: DiffOp) -> DiffOp:
    if not l1 and not l2:
        raise ValueError("gcrd of two zero operators")
    a, b = l1, l2
    while b:
        a, b = b, right_divide(a, b)[1]
        if b:
            b = b.monic()
    return a.monic()


def xgcrd(l1: DiffOp, l2: DiffOp):
    """Extended right Euclid.

    Returns (G, S, T, U, V) with S*l1 + T*l2 = G (the gcrd, not normalized)
    and U*l1 + V*l2 = 0 where U*l1 is a least common left multiple.
    """
    r0, r1 = l1, l2
    s0, s1 = DiffOp([1]), DiffOp()
    t0, t1 = DiffOp(), DiffOp([1])
    while r1:
        q, r = right_divide(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0, s1, t1


def lclm(l1: DiffOp, l2: DiffOp) -> DiffOp:
    if not l1 or not l2:
        raise ValueError("lclm requires nonzero operators")
    if l1.order == 0:
        return l2.monic()
    if l2.order == 0:
        return l1.monic()
    # first Q(x)-linear relation among (D^k mod l1, D^k mod l2), k = 0, 1, ...
    a, b = l1.monic(), l2.monic()
    n1, n2 = a.order, b.order
    width = n1 + n2
    ra = [_ONE] + [_ZERO] * (n1 - 1)
    rb = [_ONE] + [_ZERO] * (n2 - 1)
    basis = []  # (pivot, reduced vector, combination of D^0..D^k)
    for k in range(width + 1):
        vec = ra + rb
        comb_ = [_ZERO] * k + [_ONE]
        for piv, row, rc in basis:
            f = vec[piv]
            if f:
                vec = [v - f * w if w else v for v, w in zip(vec, row)]
                comb_ = [c - f * (rc[i] if i < len(rc) else _ZERO) for i, c in enumerate(comb_)]
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            return DiffOp(comb_).monic()
        inv = vec[piv].inverse()
        basis.append((piv, [v * inv for v in vec], [c * inv for c in comb_]))
        ra, rb = _d_mod(ra, a), _d_mod(rb, b)
    raise AssertionError("unreachable: order of the lclm is at most n1 + n2")


def _d_mod(r: list, m: DiffOp) -> list:
    """Coefficients of D * r reduced modulo the monic operator m."""
    n = m.order
    out = [derivative(c) for c in r] + [_ZERO]
    for i, c in enumerate(r):
        if c:
            out[i + 1] = out[i + 1] + c
    top = out.pop()
    if top:
        for i in range(n):
            if m[i]:
                out[i] = out[i] - top * m[i]
    return out


def adjoint(l: DiffOp) -> DiffOp:
    """Formal adjoint sum (-1)^j D^j a_j."""
    acc = DiffOp()
    for j, a in enumerate(l.coeffs):
        if not a:
            continue
        # D^j * a = sum_k C(j,k) a^(k) D^(j-k)
        terms = [_ZERO] * (j + 1)
        der = a
        for k in range(j + 1):
            if k:
                der = derivative(der)
            terms[j - k] = der * comb(j, k)
        t = DiffOp(terms)
        acc = acc + (t if j % 2 == 0 else -t)
    return acc


def apply(l: DiffOp, f) -> RatFunc:
    f = as_ratfunc(f)
    acc = _ZERO
    cur = f
    for i, c in enumerate(l.coeffs):
        if i:
            cur = derivative(cur)
        if c and cur:
            acc = acc + c * cur
    return acc


def twist(l: DiffOp, u) -> DiffOp:
    """Substitute D -> D + u.

    If u = z'/z this is the operator y -> z^{-1} L(z y).  Writing u = N/Q,
    z^(k)/z = P_k / Q^k with P_0 = 1 and P_{k+1} = Q P_k' - k Q' P_k + N P_k;
    the coefficient of D^j is then sum_{i >= j} C(i, j) c_i P_{i-j} / Q^{i-j}.
    """
    u = as_ratfunc(u)
    if not u or not l:
        return l
    n = l.order
    num, q = u.num, u.den
    dq = q.diff()
    p = [Poly.const(1)]
    for k in range(n):
        pk = p[-1]
        p.append(q * pk.diff() - dq * pk * k + num * pk)
    qpow = [Poly.const(1)]
    for _ in range(n):
        qpow.append(qpow[-1] * q)
    pf = polynomial_form(l)
    out = []
    for j in range(n + 1):
        acc = Poly()
        for i in range(j, n + 1):
            c = pf.coeffs[i].num
            if c:
                acc = acc + c * p[i - j] * qpow[n - i + j] * comb(i, j)
        out.append(acc)
    # l = (lc(l) / lc(pf)) * pf and pf's leading polynomial is monic
    scale = l.lc / pf.lc
    return DiffOp([RatFunc(c, qpow[n]) * scale for c in out])


def change_var_infinity(l: DiffOp) -> tuple[DiffOp, RatFunc]:
    """Rewrite L in the coordinate t = 1/x.

    Uses x -> 1/t and D_x -> -t^2 D_t.  Returns (M, c) where M is monic in
    D_t and c*M is the substituted operator; the variable of M is again
    called ``x`` but stands for t.
    """
    if not l:
        return l, _ONE
    n = l.order
    # (-t^2 D)^i = sum_j e[i][j] D^j with polynomial e[i][j]
    mt2 = Poly((0, 0, -1))
    e = [[Poly.const(1)]]
    for i in range(n):
        prev = e[-1]
        nxt = [Poly() for _ in range(len(prev) + 1)]
        for j, p in enumerate(prev):
            if p:
                nxt[j] = nxt[j] + mt2 * p.diff()
                nxt[j + 1] = nxt[j + 1] + mt2 * p
        e.append(nxt)
    pf = polynomial_form(l)
    # c_i(1/t) = rev(c_i) / t^deg(c_i); scale everything by t^K
    k = max(c.num.degree for c in pf.coeffs if c)
    out = [Poly() for _ in range(n + 1)]
    for i, c in enumerate(pf.coeffs):
        if not c:
            continue
        sub = c.num.reverse() * Poly.monomial(k - c.num.degree)
        for j, p in enumerate(e[i]):
            if p:
                out[j] = out[j] + sub * p
    lead = out[n]
    monic = DiffOp([RatFunc(p, lead) for p in out])
    # unit factor: substituted operator of l itself, whose leading coefficient is
    # lc(l)(1/t) * (-t^2)^n
    unit = l.lc.substitute_inverse() * RatFunc(Poly.monomial(2 * n, (-1) ** n))
    return monic, unit


def polynomial_form(l: DiffOp) -> DiffOp:
    """Left multiple of L with polynomial coefficients sharing no common factor."""
    from .arith import poly_gcd

    if not l:
        return l
    den = Poly.const(1)
    for c in l.coeffs:
        den = den * (c.den // poly_gcd(den, c.den))
    polys = [c.num * (den // c.den) for c in l.coeffs]
    g = Poly()
    for p in polys:
        g = poly_gcd(g, p) if g else p.monic()
    out = [p // g for p in polys]
    lc = out[-1]
    # fix sign/scale: make leading polynomial monic
    inv = 1 / lc.lc
    return DiffOp([RatFunc(p * inv) for p in out])

"""Liouvillian solutions of second-order equations y'' = s y.

The decision runs over the symmetric powers of index 1, 2, 4, 6, 12 and looks
for an exponential solution z of each; u = z'/z then determines the minimal
polynomial of the logarithmic derivative of a solution of y'' = s y.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import _linalg
from .arith import RatFunc, as_ratfunc, derivative
from .diffop import DiffOp, twist
from .errors import InconsistentCertificate
from .solve import Outcome, exponential_solutions, verify_right_factor

INDICES = (1, 2, 4, 6, 12)

_ZERO = RatFunc()
_ONE = RatFunc(1)


class GroupLabel(str, enum.Enum):
    REDUCIBLE_TRIANGULAR = "REDUCIBLE_TRIANGULAR"
    IMPRIMITIVE_D = "IMPRIMITIVE_D"
    TETRAHEDRAL_A4 = "TETRAHEDRAL_A4"
    OCTAHEDRAL_S4 = "OCTAHEDRAL_S4"
    ICOSAHEDRAL_A5 = "ICOSAHEDRAL_A5"
    SL2 = "SL2"


LABELS = {
    1: GroupLabel.REDUCIBLE_TRIANGULAR,
    2: GroupLabel.IMPRIMITIVE_D,
    4: GroupLabel.TETRAHEDRAL_A4,
    6: GroupLabel.OCTAHEDRAL_S4,
    12: GroupLabel.ICOSAHEDRAL_A5,
}


@dataclass(frozen=True)
class LiouvillianCertificate:
    """Minimal-polynomial certificate.

    ``a`` holds the raw recursion values a_m, ..., a_0 (a_m = 1); the
    polynomial itself is sum_i a_i / (m - i)! * Y^i, see :meth:`coefficients`.
    """

    t: int
    u: RatFunc
    a: tuple[RatFunc, ...]
    group_label: GroupLabel

    def coefficients(self) -> list[RatFunc]:
        """Coefficients of P(Y) from Y^m down to Y^0."""
        m = self.t
        return [ai * Fraction(1, factorial(m - i)) for ai, i in zip(self.a, range(m, -1, -1))]


class Decision(str, enum.Enum):
    LIOUVILLIAN = "LIOUVILLIAN"
    NOT_LIOUVILLIAN = "NOT_LIOUVILLIAN"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class DecisionOutcome:
    decision: Decision
    certificate: LiouvillianCertificate | None = None
    reasons: tuple[str, ...] = ()
    s: RatFunc | None = None

    @property
    def group_label(self) -> GroupLabel | None:
        if self.certificate is not None:
            return self.certificate.group_label
        if self.decision is Decision.NOT_LIOUVILLIAN:
            return GroupLabel.SL2
        return None


def reduce_to_normal_form(l: DiffOp) -> tuple[RatFunc, RatFunc]:
    """(s, shift) with twist(monic(l), shift) == D^2 - s.

    For monic l = D^2 + a1 D + a0 the shift is -a1/2, so that
    s = a1^2/4 + a1'/2 - a0.
    """
    if l.order != 2:
        raise ValueError("normal form reduction needs a second-order operator")
    m = l.monic()
    shift = m[1] * Fraction(-1, 2)
    n = twist(m, shift)
    assert not n[1]
    return -n[0], shift


def symmetric_power(s, m: int) -> DiffOp:
    """Monic operator of order m + 1 annihilating y^m for y'' = s y.

    Tracks d^i/dx^i (y^m) as a combination of y^(m-j) y'^j, substituting
    y'' = s y, then solves for the first linear dependency.
    """
    if m < 1:
        raise ValueError("symmetric power index must be >= 1")
    s = as_ratfunc(s)
    vec = [_ONE] + [_ZERO] * m
    rows = [vec]
    for _ in range(m + 1):
        cur = rows[-1]
        nxt = [_ZERO] * (m + 1)
        for j, c in enumerate(cur):
            if not c:
                continue
            nxt[j] = nxt[j] + derivative(c)
            if j < m:
                nxt[j + 1] = nxt[j + 1] + c * (m - j)
            if j > 0:
                nxt[j - 1] = nxt[j - 1] + c * s * j
        rows.append(nxt)
    # rows[i] has its last nonzero entry at position i, so the first m + 1
    # rows are triangular; write rows[m+1] = sum_i w_i rows[i]
    basis = rows[: m + 1]
    upper = [[basis[i][j] for i in range(m + 1)] for j in range(m + 1)]
    w = _linalg.solve_triangular_upper(upper, rows[m + 1])
    return DiffOp([-c for c in w] + [_ONE])


def minimal_polynomial(u, s, m: int) -> list[RatFunc]:
    """Raw coefficients a_m, ..., a_0 of the minimal-polynomial certificate.

    a_m = 1, a_{m-1} = -u and
    a_{i-1} = -a_i' - u a_i - (m - i)(i + 1) s a_{i+1},
    which must end with a_{-1} = 0.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    u, s = as_ratfunc(u), as_ratfunc(s)
    a = {m: _ONE, m + 1: _ZERO}
    for i in range(m, -1, -1):
        a[i - 1] = -derivative(a[i]) - u * a[i] - s * a[i + 1] * ((m - i) * (i + 1))
    if a[-1]:
        raise InconsistentCertificate(f"recursion does not close: a_-1 = {a[-1]}")
    return [a[i] for i in range(m, -1, -1)]


def verify_certificate(cert: LiouvillianCertificate, s) -> bool:
    s = as_ratfunc(s)
    if cert.t not in INDICES or cert.group_label is not LABELS.get(cert.t):
        return False
    try:
        a = minimal_polynomial(cert.u, s, cert.t)
    except InconsistentCertificate:
        return False
    if tuple(a) != tuple(cert.a):
        return False
    return verify_right_factor(symmetric_power(s, cert.t), cert.u)


def decide_normal_form(s) -> DecisionOutcome:
    """Run the t-chain on y'' = s y."""
    s = as_ratfunc(s)
    reasons = []
    for t in INDICES:
        status = exponential_solutions(symmetric_power(s, t))
        if status.outcome is Outcome.FOUND:
            u = status.solutions[0].u
            a = minimal_polynomial(u, s, t)
            cert = LiouvillianCertificate(t, u, tuple(a), LABELS[t])
            return DecisionOutcome(Decision.LIOUVILLIAN, cert, tuple(reasons), s)
        if status.outcome is Outcome.INCONCLUSIVE:
            reasons.extend(f"t={t}: {r}" for r in status.skipped)
    if reasons:
        return DecisionOutcome(Decision.INCONCLUSIVE, None, tuple(reasons), s)
    return DecisionOutcome(Decision.NOT_LIOUVILLIAN, None, (), s)


def liouvillian_decide(l: DiffOp) -> DecisionOutcome:
    """Decide whether the second-order equation l(y) = 0 has liouvillian solutions.

    Raises NonFuchsian when a symmetric power has an irregular singular point.
    """
    s, _ = reduce_to_normal_form(l)
    return decide_normal_form(s)

"""First-order systems Y' = A Y over Q(x).

Matrices are tuples of row tuples of ``RatFunc``.  The Hom construction
flattens its n1 x n2 unknown column-major.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import _linalg
from .arith import Poly, RatFunc, as_ratfunc, derivative
from .diffop import DiffOp
from .errors import SingularGauge

_ZERO = RatFunc()
_ONE = RatFunc(1)

Matrix = tuple[tuple[RatFunc, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(as_ratfunc(v) for v in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(_ZERO for _ in range(m)) for _ in range(n))


@dataclass(frozen=True)
class LinearSystem:
    """The system Y' = a Y."""

    a: Matrix

    def __post_init__(self):
        a = _freeze(self.a)
        n = len(a)
        if n < 1 or any(len(r) != n for r in a):
            raise ValueError("system matrix must be square with n >= 1")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.a) + "]"


@dataclass(frozen=True)
class GaugeMap:
    """Change of variables Y = b Ybar."""

    b: Matrix

    def __post_init__(self):
        b = _freeze(self.b)
        n = len(b)
        if n < 1 or any(len(r) != n for r in b):
            raise ValueError("gauge matrix must be square")
        if not _linalg.det(b):
            raise SingularGauge("gauge matrix has zero determinant")
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.b)

    def inverse(self) -> "GaugeMap":
        return GaugeMap(_inv(self.b))


def _inv(m) -> Matrix:
    inv = _linalg.inverse(m, _ZERO, _ONE)
    if inv is None:
        raise SingularGauge("matrix is not invertible")
    return _freeze(inv)


def _mul(a, b) -> Matrix:
    return _freeze(_linalg.matmul(a, b, _ZERO))


def _sub(a, b) -> Matrix:
    return tuple(tuple(u - v for u, v in zip(ra, rb)) for ra, rb in zip(a, b))


def _transpose(a) -> Matrix:
    return tuple(zip(*a))


def _kron(a, b) -> Matrix:
    n, m = len(a), len(b)
    return tuple(
        tuple(a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)) for i in range(n * m)
    )


def companion(l: DiffOp) -> LinearSystem:
    if l.order < 1:
        raise ValueError("companion matrix needs an operator of order >= 1")
    l = l.monic()
    n = l.order
    rows = []
    for i in range(n - 1):
        rows.append([_ONE if j == i + 1 else _ZERO for j in range(n)])
    rows.append([-l[j] for j in range(n)])
    return LinearSystem(rows)


def gauge(system: LinearSystem, g: GaugeMap) -> LinearSystem:
    """A -> B^{-1} A B - B^{-1} B'."""
    if g.n != system.n:
        raise ValueError("gauge dimension mismatch")
    b = g.b
    binv = _inv(b)
    db = tuple(tuple(derivative(v) for v in r) for r in b)
    return LinearSystem(_sub(_mul(binv, _mul(system.a, b)), _mul(binv, db)))


def direct_sum(s1: LinearSystem, s2: LinearSystem) -> LinearSystem:
    n1, n2 = s1.n, s2.n
    rows = [list(r) + [_ZERO] * n2 for r in s1.a]
    rows += [[_ZERO] * n1 + list(r) for r in s2.a]
    return LinearSystem(rows)


def tensor(s1: LinearSystem, s2: LinearSystem) -> LinearSystem:
    """A1 (x) I + I (x) A2."""
    i1, i2 = identity(s1.n), identity(s2.n)
    k1, k2 = _kron(s1.a, i2), _kron(i1, s2.a)
    return LinearSystem(tuple(tuple(u + v for u, v in zip(r1, r2)) for r1, r2 in zip(k1, k2)))


def dual(s: LinearSystem) -> LinearSystem:
    return LinearSystem(tuple(tuple(-v for v in r) for r in _transpose(s.a)))


def hom(s1: LinearSystem, s2: LinearSystem) -> LinearSystem:
    """Y' = Y A2^T - A1^T Y on n1 x n2 matrices Y, flattened column-major.

    With vec stacking columns, vec(Y A2^T) = (A2 (x) I_n1) vec(Y) and
    vec(A1^T Y) = (I_n2 (x) A1^T) vec(Y).
    """
    left = _kron(s2.a, identity(s1.n))
    right = _kron(identity(s2.n), _transpose(s1.a))
    return LinearSystem(_sub(left, right))


def commutation_permutation(n1: int, n2: int) -> list[int]:
    """perm with vec_rowmajor(Y)[i] = vec_colmajor(Y)[perm[i]] for n1 x n2 Y."""
    return [j * n1 + i for i in range(n1) for j in range(n2)]


def permute(s: LinearSystem, perm: Sequence[int]) -> LinearSystem:
    return LinearSystem(tuple(tuple(s.a[perm[i]][perm[j]] for j in range(s.n)) for i in range(s.n)))


def _krylov(a: Matrix, v: list[RatFunc]) -> list[list[RatFunc]]:
    """Rows v, v' + vA, ... (n + 1 of them) for the row vector v."""
    n = len(a)
    rows = [list(v)]
    for _ in range(n):
        prev = rows[-1]
        nxt = []
        for j in range(n):
            s = derivative(prev[j])
            for i in range(n):
                if prev[i] and a[i][j]:
                    s = s + prev[i] * a[i][j]
            nxt.append(s)
        rows.append(nxt)
    return rows


def _candidates(n: int):
    """Deterministic stream of candidate cyclic vectors with polynomial entries."""
    x = Poly.x()
    for i in range(n):
        yield [_ONE if j == i else _ZERO for j in range(n)]
    yield [RatFunc(x ** j) for j in range(n)]
    rng = random.Random(20240611)
    degree = 1
    while True:
        for _ in range(4 * n):
            yield [
                RatFunc(Poly([rng.randint(-3, 3) for _ in range(degree + 1)]))
                for _ in range(n)
            ]
        degree += 1


def cyclic_vector(system: LinearSystem) -> tuple[DiffOp, GaugeMap]:
    """Monic L and gauge B with gauge(A, B) == companion(L).

    For a row vector v the scalar z = v Y satisfies z^(i) = v_i Y with
    v_0 = v and v_{i+1} = v_i' + v_i A.  When M = (v_0; ...; v_{n-1}) is
    invertible, Ybar = M Y is a companion system and B = M^{-1}.
    """
    a = system.a
    n = system.n
    for v in _candidates(n):
        rows = _krylov(a, v)
        m = rows[:n]
        minv = _linalg.inverse(m, _ZERO, _ONE)
        if minv is None:
            continue
        # v_n = w M  =>  z^(n) = sum_i w_i z^(i)
        w = _linalg.matmul([rows[n]], minv, _ZERO)[0]
        l = DiffOp([-c for c in w] + [_ONE])
        return l, GaugeMap(minv)
    raise AssertionError("unreachable: cyclic vectors are dense")

"""Small Clifford algebras over diagonal metrics and 2x2 matrices with
Clifford entries.

Elements are stored densely: coefficient ``i`` belongs to the blade whose
bit mask is ``i`` (bit ``j`` set means ``e_j`` is a factor).  With n <= 4
there are at most 16 blades, so the multiplication table is tiny and is
cached per signature.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .tolerance import get_epsilon, is_less_than_epsilon

MAX_DIM = 4


@dataclass(frozen=True)
class Metric:
    """Diagonal signature (e_i^2 = sigma[i])."""

    sigma: tuple

    def __post_init__(self):
        sig = tuple(float(s) for s in self.sigma)
        if len(sig) < 1:
            raise ValueError("metric needs at least one dimension")
        if not all(np.isfinite(sig)):
            raise ValueError("metric entries must be finite")
        object.__setattr__(self, "sigma", sig)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __len__(self):
        return len(self.sigma)

    def array(self) -> np.ndarray:
        return np.array(self.sigma, dtype=float)

    @classmethod
    def elliptic(cls, n=2):
        return cls((-1.0,) * n)

    @classmethod
    def parabolic(cls):
        return cls((-1.0, 0.0))

    @classmethod
    def hyperbolic(cls):
        return cls((-1.0, 1.0))

    def __repr__(self):
        return "Metric(%s)" % ", ".join("%g" % s for s in self.sigma)


def as_metric(x) -> Metric:
    if isinstance(x, Metric):
        return x
    return Metric(tuple(x))


def default_cycle_metric(point_metric) -> Metric:
    """Cycle space signature: -chi(-sigma_i) with chi the Heaviside sign."""
    pm = as_metric(point_metric)
    return Metric(tuple(-1.0 if -s >= 0 else 1.0 for s in pm.sigma))


@lru_cache(maxsize=None)
def _tables(sigma: tuple):
    n = len(sigma)
    size = 1 << n
    sign = np.zeros((size, size))
    for a in range(size):
        for b in range(size):
            # swaps needed to bring the product into canonical order
            swaps = 0
            for j in range(n):
                if b >> j & 1:
                    swaps += bin(a >> (j + 1)).count("1")
            s = -1.0 if swaps % 2 else 1.0
            common = a & b
            for j in range(n):
                if common >> j & 1:
                    s *= sigma[j]
            sign[a, b] = s
    idx = np.arange(size)
    xor = idx[:, None] ^ idx[None, :]
    grades = np.array([bin(i).count("1") for i in range(size)])
    return sign, xor, grades


class CliffordElement:
    """Immutable multivector of Cl(sigma)."""

    __slots__ = ("coeffs", "metric")

    def __init__(self, coeffs, metric):
        metric = as_metric(metric)
        if metric.n > MAX_DIM:
            raise ValueError("dimension %d exceeds %d" % (metric.n, MAX_DIM))
        c = np.array(coeffs, dtype=complex).reshape(-1)
        if c.size != 1 << metric.n:
            raise ValueError("expected %d blade coefficients" % (1 << metric.n))
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite Clifford coefficient")
        c.flags.writeable = False
        self.coeffs = c
        self.metric = metric

    # constructors
    @classmethod
    def scalar(cls, value, metric):
        metric = as_metric(metric)
        c = np.zeros(1 << metric.n, dtype=complex)
        c[0] = value
        return cls(c, metric)

    @classmethod
    def vector(cls, values, metric):
        metric = as_metric(metric)
        values = list(values)
        if len(values) != metric.n:
            raise ValueError("vector length does not match the metric")
        c = np.zeros(1 << metric.n, dtype=complex)
        for i, v in enumerate(values):
            c[1 << i] = v
        return cls(c, metric)

    @classmethod
    def unit(cls, i, metric):
        metric = as_metric(metric)
        e = [0] * metric.n
        e[i] = 1
        return cls.vector(e, metric)

    def _check(self, other):
        if self.metric != other.metric:
            raise ValueError("metric mismatch: %r vs %r" % (self.metric, other.metric))

    def _lift(self, other):
        if isinstance(other, CliffordElement):
            self._check(other)
            return other
        return CliffordElement.scalar(other, self.metric)

    def __add__(self, other):
        other = self._lift(other)
        return CliffordElement(self.coeffs + other.coeffs, self.metric)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return CliffordElement(self.coeffs - other.coeffs, self.metric)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return CliffordElement(-self.coeffs, self.metric)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return CliffordElement(self.coeffs * other, self.metric)

    def __rmul__(self, other):
        return CliffordElement(self.coeffs * other, self.metric)

    def __truediv__(self, other):
        return CliffordElement(self.coeffs / other, self.metric)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(other, self.metric)
        return self.metric == other.metric and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.metric, self.coeffs.tobytes()))

    def is_close(self, other, tol=None) -> bool:
        other = self._lift(other)
        tol = get_epsilon() if tol is None else tol
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) < tol)

    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def vector_part(self) -> np.ndarray:
        return np.array([self.coeffs[1 << i] for i in range(self.metric.n)])

    def grades(self) -> np.ndarray:
        return _tables(self.metric.sigma)[2]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                blade = "".join("e%d" % j for j in range(self.metric.n) if i >> j & 1)
                terms.append("%s%s" % (_fmt(c), "*" + blade if blade else ""))
        return " + ".join(terms) if terms else "0"


def _fmt(c):
    c = complex(c)
    return "%g" % c.real if c.imag == 0 else "(%g%+gj)" % (c.real, c.imag)


def clifford_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._check(y)
    sign, xor, _ = _tables(x.metric.sigma)
    prod = np.outer(x.coeffs, y.coeffs) * sign
    out = np.zeros_like(x.coeffs)
    np.add.at(out, xor, prod)
    return CliffordElement(out, x.metric)


def reversion(x: CliffordElement) -> CliffordElement:
    r = x.grades()
    return CliffordElement(x.coeffs * (-1.0) ** (r * (r - 1) // 2), x.metric)


def conjugation(x: CliffordElement) -> CliffordElement:
    r = x.grades()
    return CliffordElement(x.coeffs * (-1.0) ** (r * (r + 1) // 2), x.metric)


def grade_part(x: CliffordElement, g: int) -> CliffordElement:
    if not 0 <= g <= x.metric.n:
        raise ValueError("grade %d out of range" % g)
    mask = x.grades() == g
    return CliffordElement(np.where(mask, x.coeffs, 0), x.metric)


def clifford_inverse(x: CliffordElement) -> CliffordElement:
    """Two-sided inverse, found by solving x*y = 1 as a linear system."""
    sign, xor, _ = _tables(x.metric.sigma)
    size = x.coeffs.size
    # column b of L holds the coefficients of x * blade_b
    L = np.zeros((size, size), dtype=complex)
    for b in range(size):
        L[xor[:, b], b] += sign[:, b] * x.coeffs
    rhs = np.zeros(size, dtype=complex)
    rhs[0] = 1
    scale = max(np.max(np.abs(x.coeffs)), 1e-300)
    if abs(np.linalg.det(L / scale)) < get_epsilon():
        raise ZeroDivisionError("Clifford element is not invertible: %r" % x)
    y = CliffordElement(np.linalg.solve(L, rhs), x.metric)
    if not clifford_mul(y, x).is_close(1, 1e3 * get_epsilon()):
        raise ZeroDivisionError("Clifford element has no two-sided inverse: %r" % x)
    return y


@dataclass(frozen=True)
class FSCMatrix:
    """2x2 matrix [[a, b], [c, d]] with Clifford entries."""

    a: CliffordElement
    b: CliffordElement
    c: CliffordElement
    d: CliffordElement

    @property
    def metric(self):
        return self.a.metric

    def __matmul__(self, o):
        return FSCMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                         self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def star(self):
        return FSCMatrix(conjugation(self.d), conjugation(self.b),
                         conjugation(self.c), conjugation(self.a))

    def bar(self):
        return FSCMatrix(reversion(self.d), -reversion(self.b),
                         -reversion(self.c), reversion(self.a))

    def pseudodeterminant(self) -> CliffordElement:
        return self.a * reversion(self.d) - self.b * reversion(self.c)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_entries(cls, entries, metric):
        """Build from four Clifford elements or scalars."""
        metric = as_metric(metric)
        vals = []
        for e in entries:
            if isinstance(e, CliffordElement):
                if e.metric != metric:
                    raise ValueError("matrix entry uses a different metric")
                vals.append(e)
            else:
                vals.append(CliffordElement.scalar(e, metric))
        return cls(*vals)

    @classmethod
    def identity(cls, metric):
        return cls.from_entries((1, 0, 0, 1), metric)


def _lowering(metric: Metric) -> np.ndarray:
    # factor turning the stored l-coefficients into the Clifford vector of
    # the matrix; it is 1 in the elliptic case (see value_at in cycle.py)
    s = metric.array()
    safe = np.where(s == 0, 1.0, s)
    return np.where(s == 0, 1.0, -1.0 / safe)


def fsc_from_cycle(C, metric) -> FSCMatrix:
    metric = as_metric(metric)
    if C.n != metric.n:
        raise ValueError("cycle dimension does not match the metric")
    lv = CliffordElement.vector(np.asarray(C.l) * _lowering(metric), metric)
    return FSCMatrix(lv, CliffordElement.scalar(C.m, metric),
                     CliffordElement.scalar(C.k, metric), -lv)


def cycle_from_fsc(M: FSCMatrix):
    from .cycle import Cycle

    metric = M.metric
    a, b, c, d = M.entries()
    scale = max(float(np.max(np.abs(np.concatenate([e.coeffs for e in M.entries()])))), 1e-300)
    residual = [a - grade_part(a, 1), b - grade_part(b, 0), c - grade_part(c, 0), a + d]
    worst = max(float(np.max(np.abs(r.coeffs))) for r in residual) / scale
    if not is_less_than_epsilon(worst):
        raise ValueError("matrix is not a cycle (grade residual %.3g)" % worst)
    l = a.vector_part() / _lowering(metric)
    return Cycle(c.scalar_part(), l, b.scalar_part())


def fsc_similarity(M: FSCMatrix, C):
    """The cycle M C M*."""
    metric = M.metric
    return cycle_from_fsc(M @ fsc_from_cycle(C, metric) @ M.star())


def sl2_lift(a, b, c, d, metric=None) -> FSCMatrix:
    """Embed a real 2x2 matrix as [[a, b e0], [-c e0, d]]."""
    metric = Metric.elliptic(2) if metric is None else as_metric(metric)
    if metric.n != 2:
        raise ValueError("sl2 matrices act only in two dimensions")
    vals = []
    for v in (a, b, c, d):
        v = complex(v)
        if not is_less_than_epsilon(v.imag):
            raise ValueError("sl2 matrix must have real entries")
        vals.append(v.real)
    a, b, c, d = vals
    e0 = CliffordElement.unit(0, metric)
    return FSCMatrix(CliffordElement.scalar(a, metric), b * e0, -c * e0,
                     CliffordElement.scalar(d, metric))


def moebius_point(M: FSCMatrix, x: Sequence[float]) -> np.ndarray:
    """Image of the point x under (a x + b)(c x + d)^{-1}."""
    metric = M.metric
    xv = CliffordElement.vector(x, metric)
    num = M.a * xv + M.b
    den = M.c * xv + M.d
    try:
        img = num * clifford_inverse(den)
    except ZeroDivisionError:
        raise ValueError("the point is sent to infinity") from None
    vec = img.vector_part()
    rest = img.coeffs.copy()
    for i in range(metric.n):
        rest[1 << i] = 0
    scale = max(1.0, float(np.max(np.abs(vec))))
    if not is_less_than_epsilon(float(np.max(np.abs(rest))) / scale) or \
            not is_less_than_epsilon(float(np.max(np.abs(vec.imag))) / scale):
        raise ValueError("image is not a real point")
    return vec.real.copy()

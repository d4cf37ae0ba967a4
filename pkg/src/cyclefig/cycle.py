"""Cycles: quadrics stored projectively as (k, l, m).

A cycle in n dimensions is the zero set of

    Q(x) = -k * sum(sigma_i x_i^2) - 2 * sum(l_i x_i) + m

so in the Euclidean plane (sigma = (-1, -1)) it reads
k(u^2 + v^2) - 2lu - 2nv + m = 0.  Coefficients are complex so that
imaginary solutions of quadratic conditions can be carried around.
"""
from typing import Sequence

import numpy as np

from .algebra import Metric, as_metric
from .tolerance import get_epsilon, is_less_than_epsilon


class Cycle:
    """Immutable coefficient vector [k, l_0, ..., l_{n-1}, m]."""

    __slots__ = ("vec",)

    def __init__(self, k, l, m):
        l = np.atleast_1d(np.asarray(l, dtype=complex))
        v = np.concatenate([[complex(k)], l, [complex(m)]])
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite cycle coefficient")
        if not np.any(v != 0):
            raise ValueError("the zero vector is not a cycle")
        v.flags.writeable = False
        self.vec = v

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=complex)
        return cls(v[0], v[1:-1], v[-1])

    @property
    def n(self) -> int:
        return self.vec.size - 2

    @property
    def k(self) -> complex:
        return complex(self.vec[0])

    @property
    def l(self) -> np.ndarray:
        return self.vec[1:-1]

    @property
    def m(self) -> complex:
        return complex(self.vec[-1])

    def __mul__(self, lam):
        return Cycle.from_vector(self.vec * lam)

    __rmul__ = __mul__

    def __neg__(self):
        return Cycle.from_vector(-self.vec)

    def __eq__(self, other):
        return isinstance(other, Cycle) and np.array_equal(self.vec, other.vec)

    def __hash__(self):
        return hash(self.vec.tobytes())

    def is_real(self, eps=None) -> bool:
        """All imaginary parts below epsilon after max-scaling."""
        v = num_normalize(self).vec
        return all(is_less_than_epsilon(x.imag, eps) for x in v)

    def __repr__(self):
        return "Cycle(%s, [%s], %s)" % (_fmt(self.k), ", ".join(_fmt(x) for x in self.l), _fmt(self.m))


def _fmt(z):
    z = complex(z)
    return "%.10g" % z.real if z.imag == 0 else "(%.10g%+.10gj)" % (z.real, z.imag)


def _check_dim(C1, C2):
    if C1.n != C2.n:
        raise ValueError("cycle dimensions differ: %d vs %d" % (C1.n, C2.n))


def cycle_product(C1: Cycle, C2: Cycle, metric) -> complex:
    """<C1, C2> = 2 sum sigma_i l1_i l2_i + k1 m2 + k2 m1 (bilinear, no conjugation)."""
    _check_dim(C1, C2)
    metric = as_metric(metric)
    if metric.n != C1.n:
        raise ValueError("metric dimension does not match the cycles")
    s = metric.array()
    return complex(2 * np.sum(s * C1.l * C2.l) + C1.k * C2.m + C2.k * C1.m)


def value_at(C: Cycle, x: Sequence[float], metric) -> complex:
    metric = as_metric(metric)
    x = np.asarray(x, dtype=float)
    if x.size != C.n or metric.n != C.n:
        raise ValueError("dimension mismatch")
    s = metric.array()
    return complex(-C.k * np.sum(s * x * x) - 2 * np.sum(C.l * x) + C.m)


def _require_finite(C):
    if is_less_than_epsilon(C.k / _scale(C)):
        raise ValueError("flat cycle (k = 0) has no centre or radius")


def _scale(C):
    return float(np.max(np.abs(C.vec)))


def center(C: Cycle, metric=None) -> np.ndarray:
    """Centre of a cycle; without a metric the elliptic convention is used."""
    _require_finite(C)
    metric = Metric.elliptic(C.n) if metric is None else as_metric(metric)
    s = metric.array()
    safe = np.where(s == 0, 1.0, s)
    c = np.where(s == 0, C.l / C.k, -C.l / (C.k * safe))
    return c


def radius_sq(C: Cycle, metric) -> complex:
    _require_finite(C)
    return -cycle_product(C, C, metric) / (2 * C.k ** 2)


def is_zero_radius(C: Cycle, metric) -> bool:
    return is_less_than_epsilon(cycle_product(C, C, metric) / _scale(C) ** 2)


def normalize_projective(C: Cycle) -> Cycle:
    """Divide by the first nonzero among k, m, l_0, l_1, ..."""
    order = [0, C.vec.size - 1] + list(range(1, C.vec.size - 1))
    scale = _scale(C)
    for i in order:
        if not is_less_than_epsilon(C.vec[i] / scale):
            return Cycle.from_vector(C.vec / C.vec[i])
    raise ValueError("cannot normalise a zero cycle")


def normalize_det(C: Cycle, metric) -> Cycle:
    p = cycle_product(C, C, metric)
    if is_less_than_epsilon(p / _scale(C) ** 2):
        raise ValueError("isotropic cycle cannot be det-normalised")
    return Cycle.from_vector(C.vec / np.sqrt(abs(p)))


def normalize_k(C: Cycle) -> Cycle:
    _require_finite(C)
    return Cycle.from_vector(C.vec / C.k)


def num_normalize(C: Cycle) -> Cycle:
    """Divide by the largest modulus and snap tiny real/imaginary parts to 0."""
    v = C.vec / _scale(C)
    eps = get_epsilon()
    re = np.where(np.abs(v.real) < eps, 0.0, v.real)
    im = np.where(np.abs(v.imag) < eps, 0.0, v.imag)
    return Cycle.from_vector(re + 1j * im)


def _cross(C1, C2):
    _check_dim(C1, C2)
    a = C1.vec / _scale(C1)
    b = C2.vec / _scale(C2)
    return np.outer(a, b) - np.outer(b, a)


ROUNDING = 64 * np.finfo(float).eps


def is_projectively_equal(C1: Cycle, C2: Cycle) -> bool:
    """Proportional coefficient vectors, up to floating point rounding only."""
    return bool(np.max(np.abs(_cross(C1, C2))) <= ROUNDING)


def is_almost_equal(C1: Cycle, C2: Cycle) -> bool:
    return bool(np.max(np.abs(_cross(C1, C2))) < get_epsilon())


def from_center_radius_sq(c: Sequence[float], r2, metric) -> Cycle:
    metric = as_metric(metric)
    c = np.asarray(c, dtype=float)
    if c.size != metric.n:
        raise ValueError("centre dimension does not match the metric")
    s = metric.array()
    l = np.where(s == 0, c, -s * c)
    m = -r2 - np.sum(s * l * l)
    return Cycle(1, l, m)


def point_cycle(x: Sequence[float], metric) -> Cycle:
    """Zero-radius cycle at x, as produced by the figure's point construction.

    The point is orthogonal (in the cycle metric) to the ghost cycles
    (0, e_i, 2 x_i) and self-orthogonal in the point metric.
    """
    from .algebra import default_cycle_metric

    metric = as_metric(metric)
    cm = default_cycle_metric(metric)
    x = np.asarray(x, dtype=float)
    l = -x / cm.array()
    m = -np.sum(metric.array() * l * l)
    return Cycle(1, l, m)


def real_line(n: int = 2) -> Cycle:
    l = np.zeros(n)
    l[-1] = 1
    return Cycle(0, l, 0)


def infinity(n: int = 2) -> Cycle:
    return Cycle(0, np.zeros(n), 1)

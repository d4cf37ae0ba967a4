"""Relations between an unknown cycle U and a parent cycle P.

A relation expands into a disjunction of branches.  Each branch is a
conjunction of items, an item being one of

* :class:`Residual` -- a polynomial of degree <= 2 in the coefficients of U
  that has to vanish,
* :class:`Predicate` -- a yes/no test applied to a candidate solution,
* a :class:`~cyclefig.cycle.Cycle` produced directly (Moebius maps).

Residuals act on the coefficient vector ``u = [k, l_0, ..., l_{n-1}, m]``.
"""
import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Optional

import numpy as np

from .algebra import CliffordElement, FSCMatrix, as_metric, fsc_from_cycle, \
    cycle_from_fsc, fsc_similarity, sl2_lift
from .cycle import Cycle, cycle_product, is_almost_equal, is_projectively_equal, \
    normalize_det, normalize_k, num_normalize, real_line
from .tolerance import get_epsilon, is_less_than_epsilon


class RelationKind(enum.Enum):
    ORTHOGONAL = "orthogonal"
    F_ORTHOGONAL = "f_orthogonal"
    DIFFERENT = "different"
    ADIFFERENT = "adifferent"
    TANGENT = "tangent"
    TANGENT_I = "tangent_i"
    TANGENT_O = "tangent_o"
    ANGLE = "angle"
    STEINER_POWER = "steiner_power"
    TANGENTIAL_DISTANCE = "tangential_distance"
    CROSS_T_DISTANCE = "cross_t_distance"
    PRODUCT_SIGN = "product_sign"
    ONLY_REALS = "only_reals"
    MOEBIUS = "moebius"
    SL2 = "sl2"


SCALAR_KINDS = {RelationKind.ANGLE, RelationKind.STEINER_POWER, RelationKind.TANGENTIAL_DISTANCE,
                RelationKind.CROSS_T_DISTANCE, RelationKind.PRODUCT_SIGN, RelationKind.ONLY_REALS}
MATRIX_KINDS = {RelationKind.MOEBIUS, RelationKind.SL2}
SELF_KINDS = {RelationKind.ORTHOGONAL, RelationKind.PRODUCT_SIGN, RelationKind.ONLY_REALS}


@dataclass(frozen=True)
class RelationSpec:
    kind: RelationKind
    parent: str
    use_cycle_metric: bool = True
    parameter: Any = None

    def __post_init__(self):
        kind = RelationKind(self.kind)
        object.__setattr__(self, "kind", kind)
        p = self.parameter
        if kind in MATRIX_KINDS:
            if p is None:
                p = (1, 0, 0, 1)
            if isinstance(p, FSCMatrix):
                p = p.entries()
            p = tuple(p)
            if len(p) != 4:
                raise ValueError("%s needs four matrix entries" % kind.value)
        elif kind in SCALAR_KINDS:
            if p is None:
                p = 1 if kind == RelationKind.PRODUCT_SIGN else 0
            if isinstance(p, (list, tuple, FSCMatrix)):
                raise ValueError("%s takes a scalar parameter" % kind.value)
        elif p is not None:
            raise ValueError("%s takes no parameter" % kind.value)
        object.__setattr__(self, "parameter", p)

    def with_parameter(self, p):
        return RelationSpec(self.kind, self.parent, self.use_cycle_metric, p)


# convenience constructors mirroring the usual defaults
def orthogonal(key, cm=True):
    return RelationSpec(RelationKind.ORTHOGONAL, key, cm)


def f_orthogonal(key, cm=True):
    return RelationSpec(RelationKind.F_ORTHOGONAL, key, cm)


def different(key, cm=True):
    return RelationSpec(RelationKind.DIFFERENT, key, cm)


def adifferent(key, cm=True):
    return RelationSpec(RelationKind.ADIFFERENT, key, cm)


def tangent(key, cm=True):
    return RelationSpec(RelationKind.TANGENT, key, cm)


def tangent_i(key, cm=True):
    return RelationSpec(RelationKind.TANGENT_I, key, cm)


def tangent_o(key, cm=True):
    return RelationSpec(RelationKind.TANGENT_O, key, cm)


def angle(key, cos_angle, cm=True):
    return RelationSpec(RelationKind.ANGLE, key, cm, cos_angle)


def steiner_power(key, power, cm=True):
    return RelationSpec(RelationKind.STEINER_POWER, key, cm, power)


def tangential_distance(key, distance, cm=True):
    return RelationSpec(RelationKind.TANGENTIAL_DISTANCE, key, cm, distance)


def cross_t_distance(key, distance, cm=True):
    return RelationSpec(RelationKind.CROSS_T_DISTANCE, key, cm, distance)


def real_cycle(key, cm=False, sign=1):
    """Real (non-imaginary) cycle filter, checked in the point metric by default."""
    return RelationSpec(RelationKind.PRODUCT_SIGN, key, cm, sign)


def product_sign(key, sign=1, cm=True):
    return RelationSpec(RelationKind.PRODUCT_SIGN, key, cm, sign)


def only_reals(key, cm=True):
    return RelationSpec(RelationKind.ONLY_REALS, key, cm)


def moebius(key, matrix, cm=True):
    return RelationSpec(RelationKind.MOEBIUS, key, cm, matrix)


def sl2(key, a, b, c, d, cm=True):
    return RelationSpec(RelationKind.SL2, key, cm, (a, b, c, d))


@dataclass(frozen=True)
class Residual:
    """r(u) = u^T quad u + lin . u + const, with quad symmetric or None."""

    lin: np.ndarray
    const: complex = 0j
    quad: Optional[np.ndarray] = None
    label: str = ""

    @property
    def is_linear(self) -> bool:
        return self.quad is None or not np.any(self.quad)

    def __call__(self, u) -> complex:
        u = np.asarray(u, dtype=complex)
        r = self.lin @ u + self.const
        if self.quad is not None:
            r = r + u @ self.quad @ u
        return complex(r)


@dataclass(frozen=True)
class Predicate:
    test: Callable[[Cycle], bool]
    label: str = ""

    def __call__(self, C: Cycle) -> bool:
        return bool(self.test(C))


@dataclass
class ConditionBranches:
    branches: list = field(default_factory=list)

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)


def product_form(P: Cycle, metric) -> np.ndarray:
    """Vector w with <U, P> = w . u."""
    s = as_metric(metric).array()
    return np.concatenate([[P.m], 2 * s * P.l, [P.k]]).astype(complex)


def gram(n: int, metric) -> np.ndarray:
    """Matrix G with <U, U> = u^T G u."""
    s = as_metric(metric).array()
    G = np.zeros((n + 2, n + 2), dtype=complex)
    G[0, -1] = G[-1, 0] = 1
    G[1:-1, 1:-1] = np.diag(2 * s)
    return G


def _k_selector(n):
    e = np.zeros(n + 2, dtype=complex)
    e[0] = 1
    return e


def _norm_eq(n, metric, nu):
    # <U,U> - nu = 0
    return Residual(np.zeros(n + 2, dtype=complex), -complex(nu), gram(n, metric), "<U,U>=%+d" % nu)


def _lin_eq(P, metric, rhs, extra=None, label=""):
    # <U,P> + extra . u - rhs = 0
    w = product_form(P, metric)
    if extra is not None:
        w = w + extra
    return Residual(w, -complex(rhs), None, label)


TANGENT_MODES = ("signed", "abs")


def touch_root(nu, pp, mode="signed") -> complex:
    """Square root used by the linearised tangency.

    With <U,U> = nu the tangency (<U,P>)^2 = <U,U><P,P> becomes
    <U,P> = +-sqrt(nu <P,P>).  In "signed" mode the principal complex root
    is taken, so a branch whose sign nu does not match the parent gives
    complex rather than spurious real solutions.  "abs" mode uses
    sqrt(|<P,P>|) in every branch; its extra solutions with <U,U> of the
    wrong sign are imaginary-radius cycles that are not tangent.
    """
    if mode == "abs":
        return complex(np.sqrt(abs(pp)))
    if mode != "signed":
        raise ValueError("unknown tangent mode %r" % mode)
    return complex(np.sqrt(complex(nu * pp)))


def _tangent_branches(P, metric, n, signs, mode="signed"):
    pp = cycle_product(P, P, metric)
    out = []
    for s in signs:
        for nu in (-1, 1):
            out.append([_norm_eq(n, metric, nu),
                        _lin_eq(P, metric, s * touch_root(nu, pp, mode), label="tangent")])
    return out


def _moebius_matrix(entries, metric):
    vals = []
    for e in entries:
        if isinstance(e, CliffordElement):
            if e.metric.n != metric.n:
                raise ValueError("Moebius matrix entry has the wrong dimension")
            vals.append(CliffordElement(e.coeffs, metric))
        elif isinstance(e, dict) and "vector" in e:
            vals.append(CliffordElement.vector([_complex(v) for v in e["vector"]], metric))
        elif isinstance(e, dict) and "blades" in e:
            c = np.zeros(1 << metric.n, dtype=complex)
            for mask, v in e["blades"].items():
                mask = int(mask)
                if not 0 <= mask < c.size:
                    raise ValueError("blade mask %d out of range" % mask)
                c[mask] = _complex(v)
            vals.append(CliffordElement(c, metric))
        else:
            vals.append(CliffordElement.scalar(_complex(e), metric))
    return FSCMatrix(*vals)


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    return complex(v)


def expand(spec: RelationSpec, parent_cycles, point_metric, cycle_metric, n=None,
           tangent_mode="signed") -> ConditionBranches:
    """Branches for U related to every value of the parent.

    ``parent_cycles`` is None for a relation of the node to itself.
    """
    pm, cm = as_metric(point_metric), as_metric(cycle_metric)
    metric = cm if spec.use_cycle_metric else pm
    n = metric.n if n is None else n
    kind = spec.kind
    if parent_cycles is None:
        if kind not in SELF_KINDS:
            raise ValueError("relation %s cannot refer to its own node" % kind.value)
        if kind == RelationKind.ORTHOGONAL:
            return ConditionBranches([[_norm_eq(n, metric, 0)]])
        return ConditionBranches([[_predicate(spec, None, metric)]])
    parent_cycles = list(parent_cycles)
    if not parent_cycles:
        raise ValueError("parent %r has no cycles" % spec.parent)
    res = ConditionBranches()
    for P in parent_cycles:
        res.branches.extend(_expand_one(spec, P, metric, n, tangent_mode))
    return res


def _expand_one(spec, P, metric, n, mode="signed"):
    kind = spec.kind
    p = spec.parameter
    if kind == RelationKind.ORTHOGONAL:
        return [[_lin_eq(P, metric, 0, label="orthogonal")]]
    if kind == RelationKind.F_ORTHOGONAL:
        return [[_f_orthogonal_eq(P, metric, n)]]
    if kind == RelationKind.TANGENT:
        return _tangent_branches(P, metric, n, (1, -1), mode)
    if kind == RelationKind.TANGENT_O:
        return _tangent_branches(P, metric, n, (1,), mode)
    if kind == RelationKind.TANGENT_I:
        return _tangent_branches(P, metric, n, (-1,), mode)
    if kind == RelationKind.ANGLE:
        Pn = normalize_det(P, metric)
        return [[_lin_eq(Pn, metric, p, label="angle"), _norm_eq(n, metric, nu)] for nu in (-1, 1)]
    if kind in (RelationKind.STEINER_POWER, RelationKind.TANGENTIAL_DISTANCE, RelationKind.CROSS_T_DISTANCE):
        if kind == RelationKind.TANGENTIAL_DISTANCE:
            power, sign = complex(p) ** 2, 1
        elif kind == RelationKind.CROSS_T_DISTANCE:
            power, sign = complex(p) ** 2, -1
        else:
            power, sign = complex(p), 1
        C = normalize_k(P)
        root = np.sqrt(abs(cycle_product(C, C, metric)))
        extra = -power * _k_selector(n)
        return [[_lin_eq(C, metric, -sign * root, extra, label=kind.value), _norm_eq(n, metric, nu)]
                for nu in (-1, 1)]
    if kind == RelationKind.MOEBIUS:
        return [[fsc_similarity(_moebius_matrix(p, metric), P)]]
    if kind == RelationKind.SL2:
        return [[fsc_similarity(sl2_lift(*p, metric=metric), P)]]
    return [[_predicate(spec, P, metric)]]


def _f_orthogonal_eq(P, metric, n):
    # <P U P, R> is linear in U: assemble it column by column
    R = real_line(n)
    FP = fsc_from_cycle(P, metric)
    w = np.zeros(n + 2, dtype=complex)
    for j in range(n + 2):
        e = np.zeros(n + 2, dtype=complex)
        e[j] = 1
        X = cycle_from_fsc(FP @ fsc_from_cycle(Cycle.from_vector(e), metric) @ FP)
        w[j] = cycle_product(X, R, metric)
    return Residual(w, 0j, None, "f_orthogonal")


def _predicate(spec, P, metric):
    kind = spec.kind
    if kind == RelationKind.DIFFERENT:
        return Predicate(lambda U: not is_projectively_equal(U, P), "different")
    if kind == RelationKind.ADIFFERENT:
        return Predicate(lambda U: not is_almost_equal(U, P), "adifferent")
    if kind == RelationKind.PRODUCT_SIGN:
        sign = spec.parameter
        return Predicate(lambda U: product_sign_holds(U, metric, sign), "product_sign")
    if kind == RelationKind.ONLY_REALS:
        return Predicate(lambda U: U.is_real(), "only_reals")
    raise ValueError("unsupported relation %s" % kind.value)


def product_sign_holds(U: Cycle, metric, sign=1) -> bool:
    """sign * (<U,U> - eps) < 0 for a real self-product, evaluated on num_normalize(U)."""
    p = cycle_product(num_normalize(U), num_normalize(U), metric)
    if not is_less_than_epsilon(p.imag):
        return False
    return bool((complex(sign) * (p.real - get_epsilon())).real < 0)


def branch_product(expanded):
    """Lazy cross product over a list of ConditionBranches."""
    return product(*[b.branches for b in expanded])


# checks and measures on stored cycles

def check_orthogonal(C1, C2, metric) -> complex:
    return cycle_product(C1, C2, metric)


def check_f_orthogonal(C1, C2, metric) -> complex:
    FP = fsc_from_cycle(C2, metric)
    X = cycle_from_fsc(FP @ fsc_from_cycle(C1, metric) @ FP)
    return cycle_product(X, real_line(C1.n), metric)


def check_tangent(C1, C2, metric) -> complex:
    return cycle_product(C1, C2, metric) ** 2 - cycle_product(C1, C1, metric) * cycle_product(C2, C2, metric)


def angle_is(C1, C2, metric) -> complex:
    return cycle_product(normalize_det(C1, metric), normalize_det(C2, metric), metric)


def power_is(C1, C2, metric, sign=1) -> complex:
    a, b = normalize_k(C1), normalize_k(C2)
    return cycle_product(a, b, metric) + sign * np.sqrt(abs(cycle_product(a, a, metric) * cycle_product(b, b, metric)))


def sq_t_distance_is(C1, C2, metric) -> complex:
    return power_is(C1, C2, metric, 1)


def sq_cross_t_distance_is(C1, C2, metric) -> complex:
    return power_is(C1, C2, metric, -1)


CHECKS = {
    "orthogonal": check_orthogonal,
    "f_orthogonal": check_f_orthogonal,
    "tangent": check_tangent,
}

MEASURES = {
    "angle": angle_is,
    "power": power_is,
    "sq_t_distance": sq_t_distance_is,
    "sq_cross_t_distance": sq_cross_t_distance_is,
    "product": cycle_product,
}

"""Solve for an unknown cycle from linear conditions plus one quadratic.

The unknowns are ordered [m, l_0, ..., l_{n-1}, k].  Linear residuals are
reduced to row echelon form with this column order kept fixed, so the free
variables are the trailing non-pivot columns.  The first nonlinear residual
is then solved as a quadratic in one free variable, and every further
nonlinear residual is only checked on the candidates.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .cycle import Cycle, is_almost_equal, is_projectively_equal, num_normalize
from .relations import Predicate, Residual
from .tolerance import get_epsilon, is_less_than_epsilon

__all__ = ["SolutionSet", "evaluate_cycle", "unique_cycle", "is_less_than_epsilon",
           "layout_permutation", "solve_linear"]


@dataclass
class SolutionSet:
    cycles: List[Cycle] = field(default_factory=list)
    underdetermined: bool = False
    free_count: int = 0
    raw: List[Cycle] = field(default_factory=list)  # unscaled solutions aligned with cycles

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def layout_permutation(n: int) -> np.ndarray:
    """Indices into the storage vector [k, l, m] giving the layout [m, l, k]."""
    return np.array([n + 1] + list(range(1, n + 1)) + [0])


def unique_cycle(cycles: Sequence[Cycle]) -> List[Cycle]:
    """Keep the first cycle of each class of (almost) projectively equal ones."""
    out = []
    for C in cycles:
        if not any(is_projectively_equal(C, D) or is_almost_equal(C, D) for D in out):
            out.append(C)
    return out


@dataclass
class LinearSolution:
    particular: np.ndarray  # u0
    nullspace: np.ndarray  # columns, one per free variable
    free: list  # layout indices of the free variables


def solve_linear(A, b, nvars: int) -> Optional[LinearSolution]:
    """All solutions of A x = b as x0 + N t; None if inconsistent.

    Rows are equilibrated, pivots are searched down each column in the
    fixed column order, entries below epsilon count as zero.
    """
    eps = get_epsilon()
    A = np.array(A, dtype=complex).reshape(-1, nvars)
    b = np.array(b, dtype=complex).reshape(-1)
    rows = []
    for i in range(A.shape[0]):
        scale = np.max(np.abs(A[i])) if A.shape[1] else 0.0
        if scale < eps:
            if abs(b[i]) >= eps:
                return None
            continue
        rows.append(np.concatenate([A[i], [b[i]]]) / scale)
    M = np.array(rows, dtype=complex).reshape(-1, nvars + 1)
    pivots = []
    r = 0
    for c in range(nvars):
        if r >= M.shape[0]:
            break
        p = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[p, c]) < eps:
            continue
        M[[r, p]] = M[[p, r]]
        M[r] = M[r] / M[r, c]
        for i in range(M.shape[0]):
            if i != r and M[i, c] != 0:
                M[i] = M[i] - M[i, c] * M[r]
        pivots.append(c)
        r += 1
    for i in range(r, M.shape[0]):
        if abs(M[i, -1]) >= eps:
            return None
    free = [c for c in range(nvars) if c not in pivots]
    x0 = np.zeros(nvars, dtype=complex)
    N = np.zeros((nvars, len(free)), dtype=complex)
    for i, c in enumerate(pivots):
        x0[c] = M[i, -1]
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, c in enumerate(pivots):
            N[c, j] = -M[i, f]
    return LinearSolution(x0, N, free)


def _to_layout(res: Residual, perm):
    lin = res.lin[perm]
    quad = None if res.quad is None else res.quad[np.ix_(perm, perm)]
    return Residual(lin, res.const, quad, res.label)


def _holds(res: Residual, u) -> bool:
    eps = get_epsilon()
    r = res(u)
    au = np.abs(u)
    size = abs(res.const) + np.abs(res.lin) @ au
    if res.quad is not None:
        size += au @ np.abs(res.quad) @ au
    return abs(r) < eps * max(1.0, size)


def _snap(u):
    eps = get_epsilon()
    re = np.where(np.abs(u.real) < eps, 0.0, u.real)
    im = np.where(np.abs(u.imag) < eps, 0.0, u.imag)
    return re + 1j * im


def evaluate_cycle(conditions, n: int, predicates: Sequence[Predicate] = ()) -> SolutionSet:
    """Solve the conjunction of residuals (and filter by predicates).

    ``conditions`` may mix :class:`Residual` and :class:`Predicate` items.
    """
    nv = n + 2
    perm = layout_permutation(n)
    preds = list(predicates)
    lin_rows, lin_rhs, nonlin = [], [], []
    for item in conditions:
        if isinstance(item, Predicate):
            preds.append(item)
        elif isinstance(item, Residual):
            r = _to_layout(item, perm)
            if r.is_linear:
                lin_rows.append(r.lin)
                lin_rhs.append(-r.const)
            else:
                nonlin.append(r)
        else:
            raise TypeError("unexpected condition item %r" % (item,))

    sol = solve_linear(np.array(lin_rows).reshape(-1, nv), lin_rhs, nv)
    if sol is None:
        return SolutionSet()
    x0, N, free = sol.particular, sol.nullspace, sol.free

    candidates, leftover = _candidates(x0, N, free, nonlin)
    if candidates is None:
        return SolutionSet()

    cycles, raw = [], []
    for u in candidates:
        if all(_holds(r, u) or _holds(r, _snap(u)) for r in nonlin[1:]):
            if is_less_than_epsilon(np.max(np.abs(u))):
                continue
            store = np.empty(nv, dtype=complex)
            store[perm] = u
            R = Cycle.from_vector(store)
            C = num_normalize(R)
            if all(p(C) for p in preds) and not any(
                    is_projectively_equal(C, D) or is_almost_equal(C, D) for D in cycles):
                cycles.append(C)
                raw.append(R)
    return SolutionSet(cycles, leftover > 0, leftover, raw)


def _scaled(A, B, C):
    """The quadratic A t^2 + B t + C with its largest coefficient of modulus 1.

    The equation is homogeneous in (A, B, C), so the epsilon tests below
    are made on this scale-free form.
    """
    s = max(abs(A), abs(B), abs(C))
    return (A / s, B / s, C / s) if s > 0 else (A, B, C)


def _candidates(x0, N, free, nonlin):
    """Candidate layout vectors and the number of unresolved free variables."""
    nfree = len(free)
    if not nonlin:
        if nfree == 0:
            return [x0], 0
        if nfree == 1 and is_less_than_epsilon(np.max(np.abs(x0))):
            # homogeneous: the single free variable cancels projectively
            return [N[:, 0]], 0
        return [x0 + N.sum(axis=1)], nfree
    if nfree == 0:
        # fully determined by the linear block, the quadratic is only checked
        return ([x0] if _holds(nonlin[0], x0) or _holds(nonlin[0], _snap(x0)) else []), 0

    q = nonlin[0]
    Q = q.quad if q.quad is not None else np.zeros((len(x0), len(x0)))
    H = N.T @ Q @ N
    H = (H + H.T) / 2
    g = 2 * (x0 @ Q @ N) + q.lin @ N
    c0 = x0 @ Q @ x0 + q.lin @ x0 + q.const

    def point(t):
        return x0 + N @ t

    for i in range(nfree):
        # every other free variable is set to 1; the first of them is the
        # reference construction's pinned variable, any further ones stay undetermined
        t = np.ones(nfree, dtype=complex)
        t[i] = 0
        A, B, C = _scaled(H[i, i], g[i] + 2 * (H[i] @ t), c0 + g @ t + t @ H @ t)
        if is_less_than_epsilon(A):
            continue
        D = B * B - 4 * A * C
        leftover = max(nfree - 2, 0)
        if is_less_than_epsilon(D) or (not is_less_than_epsilon(B) and is_less_than_epsilon(A / B)):
            if is_less_than_epsilon(D):
                roots = [-B / (2 * A)]
            else:
                roots = [-C / B]
        else:
            sq = np.sqrt(complex(D))
            roots = [(-B + sq) / (2 * A), (-B - sq) / (2 * A)]
        out = []
        for v in roots:
            tt = t.copy()
            tt[i] = v
            out.append(point(tt))
        return out, leftover

    # not quadratic in any single free variable
    if nfree > 1:
        leftover = nfree - 2
        out = []
        for a, b in ((0, 1), (1, 0)):
            # set t_a = 1 and solve the now linear residual for t_b
            t = np.ones(nfree, dtype=complex)
            t[b] = 0
            coef = g[b] + 2 * (H[b] @ t)
            rest = c0 + g @ t + t @ H @ t
            if is_less_than_epsilon(coef):
                continue
            t[b] = -rest / coef
            out.append(point(t))
        return out, leftover
    A, B, C = _scaled(H[0, 0], g[0], c0)
    # paranoia: the residual must be affine in the single free variable
    if not is_less_than_epsilon(A) or is_less_than_epsilon(B):
        return [], 0
    return [point(np.array([-C / B]))], 0

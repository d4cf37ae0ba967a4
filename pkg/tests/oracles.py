"""Independent oracles used by the tests (plain complex arithmetic, mpmath)."""
import mpmath
import numpy as np

from cyclefig.cycle import Cycle


def circle_through(points) -> Cycle:
    """Euclidean circle (or line) k|x|^2 - 2 l.x + m = 0 through three points."""
    A = np.array([[x * x + y * y, -2 * x, -2 * y, 1.0] for x, y in points])
    _, _, vh = np.linalg.svd(A)
    v = vh[-1]
    return Cycle(v[0], v[1:3], v[3])


def sl2_map(a, b, c, d, z):
    return (a * z + b) / (c * z + d)


def circle_samples(center, r, count=3, phase=0.3):
    return [complex(center[0], center[1]) + r * np.exp(1j * (phase + 2 * np.pi * i / count)) for i in range(count)]


def elliptic_point_cycle(x, y) -> Cycle:
    return Cycle(1, [x, y], x * x + y * y)


def projective_distance(a, b) -> float:
    """Largest 2x2 minor of the max-scaled coefficient vectors (0 iff proportional)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.max(np.abs(a))
    b = b / np.max(np.abs(b))
    return float(np.max(np.abs(np.outer(a, b) - np.outer(b, a))))


def quadratic_oracle(x0, d, quad, lin, const, eps=1e-8, dps=160):
    """Roots along the line x0 + t d of u^T quad u + lin.u + const, at high precision.

    Applies the same regime rules as the solver on the quadratic scaled to a
    largest coefficient of modulus 1 (double root for a vanishing
    discriminant, single root when the equation is almost linear).
    """
    with mpmath.workdps(dps):
        mp = lambda z: mpmath.mpc(complex(z).real, complex(z).imag)
        x0 = [mp(v) for v in x0]
        d = [mp(v) for v in d]
        n = len(x0)
        Q = [[mp(quad[i][j]) for j in range(n)] for i in range(n)]
        L = [mp(v) for v in lin]

        def form(u, w):
            return mpmath.fsum(u[i] * Q[i][j] * w[j] for i in range(n) for j in range(n))

        a = form(d, d)
        b = 2 * form(x0, d) + mpmath.fsum(L[i] * d[i] for i in range(n))
        c = form(x0, x0) + mpmath.fsum(L[i] * x0[i] for i in range(n)) + mp(const)
        s = max(abs(a), abs(b), abs(c))
        if s > 0:
            a, b, c = a / s, b / s, c / s
        if abs(a) < eps:
            roots = [] if abs(b) < eps else [-c / b]
        else:
            D = b * b - 4 * a * c
            if abs(D) < eps:
                roots = [-b / (2 * a)]
            elif abs(b) >= eps and abs(a / b) < eps:
                roots = [-c / b]
            else:
                s = mpmath.sqrt(D)
                roots = [(-b + s) / (2 * a), (-b - s) / (2 * a)]
        return [np.array([complex(x0[i] + t * d[i]) for i in range(n)]) for t in roots]


def line_oracle(A, b, dps=160):
    """Solutions of three linear equations in storage order [k, l0, l1, m] as x0 + t d with d_k = 1."""
    with mpmath.workdps(dps):
        mp = lambda z: mpmath.mpc(complex(z).real, complex(z).imag)
        M = mpmath.matrix([[mp(A[i][j]) for j in range(1, 4)] for i in range(3)])
        rhs = mpmath.matrix([mp(b[i]) for i in range(3)])
        col = mpmath.matrix([-mp(A[i][0]) for i in range(3)])
        y0 = mpmath.lu_solve(M, rhs)
        y1 = mpmath.lu_solve(M, col)
        x0 = [complex(0)] + [complex(y0[i]) for i in range(3)]
        d = [complex(1)] + [complex(y1[i]) for i in range(3)]
        return x0, d


REGIMES = ("generic", "double", "almost_linear", "flat_on_line")


def solver_instance(rng, regime):
    """Three linear equations plus one quadratic in the coefficients of a planar cycle.

    Returns (A, b, quad, lin, const) in storage order; the quadratic is
    shaped so that, along the solution line, it has the requested regime.
    """
    A = rng.normal(size=(3, 4))
    b = rng.normal(size=3)
    x0, d = line_oracle(A, b, dps=30)
    x0, d = np.array(x0), np.array(d)
    if regime == "generic":
        quad = rng.normal(size=(4, 4))
        quad = (quad + quad.T) / 2
        lin = rng.normal(size=4)
        const = rng.normal()
    elif regime == "double":
        g = rng.normal(size=4)
        h = rng.normal()
        quad = np.outer(g, g)
        lin = -2 * h * g
        const = h * h
    elif regime == "almost_linear":
        S = rng.normal(size=(4, 4))
        S = (S + S.T) / 2
        quad = 1e-13 * S / abs(d @ S @ d)
        lin = rng.normal(size=4)
        const = rng.normal()
    elif regime == "flat_on_line":
        w = rng.normal(size=4)
        v = rng.normal(size=4)
        v = v - (v @ d) / (d @ d) * d  # v . d = 0
        quad = (np.outer(w, v) + np.outer(v, w)) / 2
        lin = rng.normal(size=4)
        const = rng.normal()
    else:
        raise ValueError(regime)
    return A, b, quad, lin, const


def run_instance(instance):
    from cyclefig.relations import Residual
    from cyclefig.solver import evaluate_cycle

    A, b, quad, lin, const = instance
    conds = [Residual(A[i].astype(complex), complex(-b[i])) for i in range(3)]
    conds.append(Residual(lin.astype(complex), complex(const), quad.astype(complex)))
    return conds, evaluate_cycle(conds, 2)


def match_oracle(instance):
    """Largest relative distance between solver and oracle roots; inf on a count mismatch."""
    A, b, quad, lin, const = instance
    x0, d = line_oracle(A, b)
    expected = quadratic_oracle(x0, d, quad, lin, const)
    got = [R.vec for R in run_instance(instance)[1].raw]
    if len(got) != len(expected):
        return float("inf")
    worst = 0.0
    for e in expected:
        dist = [np.max(np.abs(g - e)) / max(1.0, np.max(np.abs(e))) for g in got]
        i = int(np.argmin(dist))
        worst = max(worst, dist[i])
        got.pop(i)
    return worst

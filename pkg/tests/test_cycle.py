import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cyclefig.algebra import Metric
from cyclefig.cycle import (Cycle, center, cycle_product, from_center_radius_sq, infinity, is_almost_equal,
                            is_projectively_equal, is_zero_radius, normalize_det, normalize_k,
                            normalize_projective, num_normalize, point_cycle, radius_sq, real_line, value_at)
from cyclefig.relations import check_tangent

E2 = Metric.elliptic(2)
H2 = Metric.hyperbolic()
coef = st.floats(-10, 10, allow_nan=False)
cycles2 = st.tuples(coef, coef, coef, coef).filter(lambda t: max(map(abs, t)) > 1e-3).map(
    lambda t: Cycle(t[0], [t[1], t[2]], t[3]))
scales = st.one_of(st.floats(1e-6, 1e6), st.floats(-1e6, -1e-6))


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        Cycle(0, [0, 0], 0)


def test_cycle_product_examples():
    assert cycle_product(Cycle(1, [0, 0], -1), real_line(2), E2) == 0
    A = Cycle(1, [7, 1], 46)
    assert cycle_product(A, A, E2) == pytest.approx(-8)
    C = Cycle(2.5, [1, -3], 4)
    assert cycle_product(infinity(2), C, E2) == pytest.approx(2.5)
    with pytest.raises(ValueError):
        cycle_product(Cycle(1, [0, 0], -1), Cycle(1, [0, 0, 0], -1), E2)


def test_value_at_examples():
    assert value_at(Cycle(1, [0, 0], -1), [1, 0], E2) == 0
    assert value_at(Cycle(1, [0, 0], -1), [0, 0], E2) == -1
    # Q = -k sum(sigma x^2) - 2 l.x + m, so the real line reads -2v in any metric
    assert value_at(real_line(2), [0.3, 0.7], H2) == pytest.approx(-1.4)


def test_center_and_radius():
    A = Cycle(1, [7, 1], 46)
    assert np.allclose(center(A), [7, 1]) and radius_sq(A, E2) == pytest.approx(4)
    B = Cycle(2, [2, 0], -2)
    assert np.allclose(center(B), [1, 0]) and radius_sq(B, E2) == pytest.approx(2)
    x, y = 0.3, -1.7
    assert is_zero_radius(Cycle(1, [x, y], x * x + y * y), E2)
    with pytest.raises(ValueError):
        center(real_line(2))


def test_normalizations():
    assert normalize_projective(Cycle(2, [0, 0], -2)) == Cycle(1, [0, 0], -1)
    D = normalize_det(Cycle(1, [0, 0], -1), E2)
    assert np.allclose(D.vec, [2 ** -0.5, 0, 0, -2 ** -0.5])
    assert cycle_product(D, D, E2) == pytest.approx(-1)
    assert np.allclose(num_normalize(Cycle(1e-12, [1, 0], 3)).vec, [0, 1 / 3, 0, 1])
    assert num_normalize(Cycle(1e-12, [1, 0], 3)).k == 0
    assert normalize_k(Cycle(4, [2, 2], 8)) == Cycle(1, [0.5, 0.5], 2)
    with pytest.raises(ValueError):
        normalize_det(point_cycle([1, 2], E2), E2)
    with pytest.raises(ValueError):
        normalize_k(real_line(2))


def test_equality():
    assert is_projectively_equal(Cycle(1, [0, 0], -1), Cycle(2, [0, 0], -2))
    C1, C2 = Cycle(1, [0, 0], -1), Cycle(1, [0, 0], -1 + 1e-9)
    assert is_almost_equal(C1, C2) and not is_projectively_equal(C1, C2)
    assert not is_almost_equal(Cycle(1, [1, 0], 0), Cycle(1, [0, 1], 0))


def test_from_center_radius_sq():
    assert from_center_radius_sq([7, 1], 4, E2) == Cycle(1, [7, 1], 46)
    assert from_center_radius_sq([0, 0], 1, E2) == Cycle(1, [0, 0], -1)
    S = from_center_radius_sq([1, 1, 1], 0.75, Metric.elliptic(3))
    assert np.allclose(S.vec, [1, 1, 1, 1, 2.25])


@given(cycles2, cycles2, scales)
def test_product_symmetric_bilinear(C1, C2, lam):
    for m in (E2, H2):
        p = cycle_product(C1, C2, m)
        assert p == pytest.approx(cycle_product(C2, C1, m))
        assert cycle_product(lam * C1, C2, m) == pytest.approx(lam * p, rel=1e-9, abs=1e-6)


def _orthogonal_pair(rng):
    C1 = Cycle(1, rng.uniform(-1, 1, 2), rng.uniform(-2, 0))
    k2, l2 = rng.uniform(-1, 1), rng.uniform(-1, 1, 2)
    m2 = -(2 * np.sum(np.array(E2.sigma) * C1.l.real * l2) + k2 * C1.m.real) / C1.k.real
    return C1, Cycle(k2, l2, m2)


@given(st.integers(0, 10 ** 6), scales, scales)
def test_predicates_projectively_invariant(seed, lam, mu):
    rng = np.random.default_rng(seed)
    C1, C2 = _orthogonal_pair(rng)
    assert is_almost_equal(C1 * lam, C1)
    rel = lambda a, b: abs(cycle_product(a, b, E2)) / (np.max(np.abs(a.vec)) * np.max(np.abs(b.vec))) < 1e-8
    assert rel(C1, C2) and rel(lam * C1, mu * C2)
    T1 = Cycle(1, [0, 0], -1)
    T2 = Cycle(0, [1, 0], 2)  # tangent line u = 1
    tan = lambda a, b: abs(check_tangent(a, b, E2)) / (np.max(np.abs(a.vec)) * np.max(np.abs(b.vec))) ** 2 < 1e-8
    assert tan(T1, T2) and tan(lam * T1, mu * T2)
    P = point_cycle(rng.uniform(-3, 3, 2), E2)
    assert is_zero_radius(P, E2) and is_zero_radius(lam * P, E2)
    assert not is_zero_radius(lam * C1, E2)


@pytest.mark.parametrize("metric", [E2, H2])
def test_incidence_consistency(metric):
    rng = np.random.default_rng(11)
    for _ in range(200):
        x = rng.uniform(-3, 3, 2)
        P = point_cycle(x, metric)
        C = Cycle(rng.uniform(-1, 1), rng.uniform(-1, 1, 2), rng.uniform(-1, 1))
        on = Cycle(C.k, C.l, C.m - value_at(C, x, metric))
        assert abs(value_at(on, x, metric)) < 1e-9
        assert abs(cycle_product(on, P, metric)) < 10 * 1e-8 * max(1, np.max(np.abs(on.vec)) * np.max(np.abs(P.vec)))
        off = Cycle(C.k, C.l, on.m + 0.5)
        assert abs(cycle_product(off, P, metric)) > 1e-3


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.01, 10))
def test_center_radius_round_trip(a, b, r2):
    C = from_center_radius_sq([a, b], r2, E2)
    assert np.allclose(center(C, E2), [a, b], atol=1e-8)
    assert radius_sq(C, E2) == pytest.approx(r2, abs=1e-8 * max(1, a * a + b * b))
    H = from_center_radius_sq([a, b], r2, H2)
    assert np.allclose(center(H, H2), [a, b], atol=1e-8)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spherical_ta import (Iterate, PointSet, SolverConfig, Status, check_eps_property,
                          composite_iterate, exact_oracle, solve, solve_spherical_ta, solve_ta,
                          verify_witness, worst_case_delta_bound)
from spherical_ta.spherical import to_spherical


def test_config_defaults_and_validation():
    cfg = SolverConfig(epsilon=0.1)
    assert cfg.iteration_cap == 10 * 100 + 1000
    with pytest.raises(ValueError):
        SolverConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        SolverConfig(epsilon=1.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(pivot_rule="random")


# envelope
def test_delta_bound_values():
    assert worst_case_delta_bound(0) == 1.0
    assert worst_case_delta_bound(3) == pytest.approx(0.5)
    eps = 0.04
    k = math.ceil(1 / eps)
    assert worst_case_delta_bound(k) == pytest.approx(0.19612, abs=5e-6)
    assert worst_case_delta_bound(k) <= math.sqrt(eps)


def test_delta_bound_recurrence_small():
    t = 1.0
    for k in range(1, 200):
        t = t / (1 + t)
        assert worst_case_delta_bound(k) ** 2 == pytest.approx(t, rel=1e-13)


def test_delta_bound_negative():
    with pytest.raises(ValueError):
        worst_case_delta_bound(-1)


# vanilla TA
def test_ta_midpoint():
    out = solve_ta([[1.0, 0.0], [-1.0, 0.0]], [0.0, 0.0], SolverConfig(epsilon=0.01))
    assert out.status is Status.INSIDE
    assert out.residual == pytest.approx(0.0, abs=1e-15)
    assert out.iterations <= 2


def test_ta_witness():
    s = PointSet([[1.0, 0.0], [1.0, 1.0]])
    out = solve_ta(s, [0.0, 0.0])
    assert out.status is Status.OUTSIDE
    assert verify_witness([0, 0], out.witness.coords, s)
    assert out.plane.separates([0.0, 0.0], s.points)


def test_ta_query_in_set():
    out = solve_ta([[1.0, 2.0], [0.0, 0.0]], [1.0, 2.0])
    assert out.status is Status.INSIDE and out.iterations == 0
    np.testing.assert_array_equal(out.iterate.weights, [1.0, 0.0])


def test_ta_starts_at_closest_point():
    pts = np.array([[10.0, 0.0], [0.1, 0.0], [-5.0, 0.0]])
    cfg = SolverConfig(epsilon=0.01, record_trace=True)
    out = solve_ta(pts, [0.0, 0.0], cfg)
    assert out.trace.deltas[0] == pytest.approx(0.1 / 10.0)


# spherical TA
def test_spherical_inside():
    raw = [[1.0, 0.0], [0.0, 2.0], [-1.0, -1.0]]
    out = solve_spherical_ta(raw, [0.0, 0.0], SolverConfig(epsilon=0.01))
    assert out.status is Status.INSIDE
    assert out.radius == 2.0
    assert np.linalg.norm(out.iterate.coords) <= 0.01 * 2 + 1e-12
    assert out.iterate.is_valid(PointSet(raw))


def test_spherical_outside():
    raw = np.array([[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]])
    out = solve_spherical_ta(raw, [0.0, 0.0])
    assert out.status is Status.OUTSIDE
    assert np.all(out.plane.evaluate(raw) > 0) and out.plane.evaluate([0, 0]) < 0


def test_spherical_immediate_member():
    out = solve_spherical_ta([[0.0, 1.0], [3.0, 3.0]], [3.0, 3.0])
    assert out.status is Status.INSIDE and out.residual == 0.0


def test_limit_outcome_is_explicit():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(30, 10))
    q = rng.random(30)
    q = (q / q.sum()) @ pts
    out = solve(pts, q, SolverConfig(epsilon=1e-6, max_iterations=3))
    assert out.status is Status.LIMIT
    assert out.iterations == 3
    assert out.iterate.is_valid(PointSet(pts))


def test_unknown_oracle():
    with pytest.raises(ValueError):
        solve([[1.0]], [0.0], oracle="simplex")


@pytest.mark.parametrize("oracle", ["spherical", "ta"])
@pytest.mark.parametrize("rule", ["greedy", "first"])
def test_compiled_and_python_paths_agree(oracle, rule):
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(40, 6))
    q = rng.random(40)
    q = (q / q.sum()) @ pts
    fast = solve(pts, q, SolverConfig(epsilon=0.01, pivot_rule=rule), oracle=oracle)
    slow = solve(pts, q, SolverConfig(epsilon=0.01, pivot_rule=rule, record_trace=True),
                 oracle=oracle)
    assert fast.status is slow.status is Status.INSIDE
    if rule == "greedy":
        assert fast.iterations == slow.iterations
        np.testing.assert_allclose(fast.iterate.weights, slow.iterate.weights, atol=1e-12)


@given(st.integers(0, 10**6), st.sampled_from(["spherical", "ta"]),
       st.sampled_from(["greedy", "first"]))
def test_outcome_soundness(seed, oracle, rule):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(2, 6)), int(rng.integers(3, 15))
    pts = rng.normal(size=(n, m))
    p = rng.normal(size=m)
    cfg = SolverConfig(epsilon=0.01, pivot_rule=rule)
    out = solve(pts, p, cfg, oracle=oracle)
    s = PointSet(pts)
    assert out.iterate.is_valid(s)
    if out.status is Status.INSIDE:
        R = np.linalg.norm(pts - p, axis=1).max()
        assert np.linalg.norm(out.iterate.weights @ pts - p) <= 0.01 * R + 1e-9
    elif out.status is Status.OUTSIDE:
        assert out.plane.separates(p, pts)
        assert not exact_oracle(pts, p).inside


@given(st.integers(0, 10**6))
def test_trace_monotone_and_under_envelope(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(30, 5))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    cfg = SolverConfig(epsilon=0.01, record_trace=True)
    out = solve_spherical_ta(pts, np.zeros(5), cfg)
    d = np.asarray(out.trace.deltas)
    assert np.all(np.diff(d) < 0)
    assert np.all(d <= worst_case_delta_bound(np.arange(len(d))) + 1e-12)


# eps-property
def test_eps_property_antipodal():
    s = PointSet([[0.0, 1.0], [1.0, 0.0]])
    assert check_eps_property([0.0, -0.5], s, 0.01) == 0


def test_eps_property_absent():
    # the only pivot sits at distance 1 from p'
    s = PointSet([[1.0, 0.0], [0.0, 1.0]])
    pp = np.array([0.5, 0.5]) / np.sqrt(0.5) * 0.2
    assert check_eps_property(pp, s, 0.1) is None


@given(st.floats(0.05, 0.95))
def test_eps_property_antipodal_range(delta):
    s = PointSet([[0.0, 1.0]])
    eps = min(0.9, (1 + delta) ** 2 - 1)
    if delta > eps:
        assert check_eps_property([0.0, -delta], s, eps) == 0


def test_eps_property_requires_norm_above_eps():
    with pytest.raises(ValueError):
        check_eps_property([0.001, 0.0], PointSet([[1.0, 0.0]]), 0.01)


def test_eps_property_prefers_farthest():
    s = PointSet([[1.0, 0.0], [0.0, 1.0], [-0.6, 0.8]])
    assert check_eps_property([0.0, -0.5], s, 0.01) == 1


def _ball_instance(rng, m, n, radius):
    # unit directions whose hull contains the ball of the given radius
    pts = rng.normal(size=(n, m))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return np.vstack([pts, np.eye(m), -np.eye(m)])


def test_eps_property_fast_path_reduction():
    rng = np.random.default_rng(1)
    pts = _ball_instance(rng, 3, 40, 0.5)
    eps = 0.01
    cfg = SolverConfig(epsilon=eps, enable_eps_property=True, record_trace=True)
    out = solve_spherical_ta(pts, np.zeros(3), cfg)
    assert out.status is Status.INSIDE
    d = np.asarray(out.trace.deltas)
    flags = out.trace.eps_property_flags
    bound = (math.sqrt(2) - 1) ** 2 * eps**2 - 1e-12
    for k, flag in enumerate(flags):
        if flag and d[k] <= math.sqrt(eps):
            assert d[k] ** 2 - d[k + 1] ** 2 >= bound


def test_fast_path_agrees_on_verdict():
    rng = np.random.default_rng(5)
    for _ in range(10):
        pts = rng.normal(size=(12, 4))
        p = rng.normal(size=4) * 0.5
        a = solve_spherical_ta(pts, p, SolverConfig(epsilon=0.01))
        b = solve_spherical_ta(pts, p, SolverConfig(epsilon=0.01, enable_eps_property=True))
        assert a.status is b.status


# composite iterate
def test_composite_antipodal_pair_reduces():
    s = PointSet([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
    it = Iterate(np.array([0.5, 0.5]), np.array([0.5, 0.0, 0.5]))
    out = composite_iterate(it, s, 0.01, SolverConfig(epsilon=0.01))
    assert out.status == "reduced"
    assert out.iterate.coords @ out.iterate.coords <= 0.5 - 0.004**2
    assert out.iterations <= 5
    np.testing.assert_allclose(out.iterate.weights @ s.points, out.iterate.coords, atol=1e-12)


def test_composite_genuine_witness():
    s = PointSet(np.array([[1.0, 0.2], [1.0, -0.2]]) / np.hypot(1, 0.2))
    it = Iterate.at_vertex(s, 0)
    out = composite_iterate(it, s, 0.01, SolverConfig(epsilon=0.01))
    assert out.status == "witness"
    assert verify_witness([0, 0], out.iterate.coords, s)


def test_composite_limit():
    rng = np.random.default_rng(2)
    pts = rng.normal(size=(20, 8))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    inst = to_spherical(pts, np.zeros(8))
    it = Iterate.at_vertex(inst.unit_points, 0)
    cfg = SolverConfig(epsilon=1e-4, composite_cap_factor=1)
    out = composite_iterate(it, inst.unit_points, 0.9, cfg, _budget=1)
    assert out.status in ("limit", "reduced")
    assert out.iterations <= 1

import numpy as np
import pytest

from polycalc.lp import (
    INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, solve_lp,
)

INF = float("inf")
TOL = 1e-7


def test_simple_vertex():
    s = solve_lp(LpProblem(c=[-1, -1], B=[[1, 1]], b=[1], l=[0, 0]))
    assert s.status == OPTIMAL
    assert s.objective == pytest.approx(-1.0, abs=1e-9)


def test_infeasible_bounds_vs_row():
    s = solve_lp(LpProblem(c=[0], B=[[1]], a=[1], u=[0]))
    assert s.status == INFEASIBLE


def test_inverted_bounds_infeasible():
    s = solve_lp(LpProblem(c=[0], l=[3], u=[1]))
    assert s.status == INFEASIBLE


def test_unbounded_with_ray():
    s = solve_lp(LpProblem(c=[-1], l=[0]))
    assert s.status == UNBOUNDED
    assert s.ray[0] > 0


def test_equality_rows_free_vars():
    s = solve_lp(LpProblem(c=[1, 1], B=[[1, -1], [1, 1]], a=[2, 4], b=[2, 4]))
    assert s.status == OPTIMAL
    assert np.allclose(s.x, [3, 1], atol=1e-9)


def test_fixed_variable():
    s = solve_lp(LpProblem(c=[5], l=[2], u=[2]))
    assert s.status == OPTIMAL
    assert s.objective == pytest.approx(10.0)


def test_row_dual_sign():
    # min x st x >= 1 (row): dual of the row is 1, rc of x is 0
    s = solve_lp(LpProblem(c=[1], B=[[1]], a=[1]))
    assert s.status == OPTIMAL
    assert s.row_duals[0] == pytest.approx(1.0, abs=1e-9)
    assert s.reduced_costs[0] == pytest.approx(0.0, abs=1e-9)


def test_no_rows_box_only():
    s = solve_lp(LpProblem(c=[1, -2], l=[-1, -1], u=[1, 1]))
    assert s.status == OPTIMAL
    assert np.allclose(s.x, [-1, 1])
    assert s.objective == pytest.approx(-3.0)


def test_degenerate_cube_corner():
    # many redundant rows through one corner
    B = [[1, 0], [0, 1], [1, 1], [1, 2], [2, 1]]
    s = solve_lp(LpProblem(c=[-1, -1], B=B, b=[1, 1, 2, 3, 3], l=[0, 0]))
    assert s.status == OPTIMAL
    assert s.objective == pytest.approx(-2.0, abs=1e-9)


def _random_problem(rng):
    n = int(rng.integers(1, 7))
    m = int(rng.integers(0, 9))
    B = rng.normal(size=(m, n))
    c = rng.normal(size=n)

    def bounds(k):
        lo = rng.normal(size=k) - 1.0
        hi = lo + np.abs(rng.normal(size=k)) * 2
        lo[rng.random(k) < 0.3] = -INF
        hi[rng.random(k) < 0.3] = INF
        return lo, hi

    a, b = bounds(m)
    l, u = bounds(n)
    if n and rng.random() < 0.2:
        j = rng.integers(n)
        l[j] = u[j] = rng.normal()
    if m and rng.random() < 0.2:
        i = rng.integers(m)
        a[i] = b[i] = rng.normal()
    return LpProblem(c=c, B=B, a=a, b=b, l=l, u=u)


def test_random_battery_duality_and_feasibility():
    # strong duality, primal feasibility and complementary slackness on
    # 200 random instances with mixed finite and infinite bounds
    rng = np.random.default_rng(7)
    seen = {OPTIMAL: 0, INFEASIBLE: 0, UNBOUNDED: 0}
    for _ in range(200):
        p = _random_problem(rng)
        s = solve_lp(p)
        seen[s.status] += 1
        if s.status == OPTIMAL:
            _check_optimal(p, s)
        elif s.status == UNBOUNDED:
            _check_ray(p, s)
    # the generator must exercise all three outcomes
    assert min(seen.values()) > 10


def _check_optimal(p, s):
    x = s.x
    r = p.B @ x if p.m else np.zeros(0)
    if p.m:
        assert np.max(p.a - r) <= TOL and np.max(r - p.b) <= TOL
    assert np.max(p.l - x) <= TOL and np.max(x - p.u) <= TOL
    y, rc = s.row_duals, s.reduced_costs
    dual = 0.0
    for i in range(p.m):
        if y[i] > TOL:
            assert np.isfinite(p.a[i])
            assert abs(r[i] - p.a[i]) <= TOL  # slackness
            dual += p.a[i] * y[i]
        elif y[i] < -TOL:
            assert np.isfinite(p.b[i])
            assert abs(r[i] - p.b[i]) <= TOL
            dual += p.b[i] * y[i]
    for j in range(p.n):
        if rc[j] > TOL:
            assert np.isfinite(p.l[j])
            assert abs(x[j] - p.l[j]) <= TOL
            dual += p.l[j] * rc[j]
        elif rc[j] < -TOL:
            assert np.isfinite(p.u[j])
            assert abs(x[j] - p.u[j]) <= TOL
            dual += p.u[j] * rc[j]
    assert abs(dual - s.objective) <= 1e-7 * (1 + abs(s.objective))


def _check_ray(p, s):
    ray = s.ray
    assert p.c @ ray < -1e-9
    r = p.B @ ray if p.m else np.zeros(0)
    for i in range(p.m):
        if p.a[i] > -INF:
            assert r[i] >= -TOL
        if p.b[i] < INF:
            assert r[i] <= TOL
    for j in range(p.n):
        if p.l[j] > -INF:
            assert ray[j] >= -TOL
        if p.u[j] < INF:
            assert ray[j] <= TOL


def test_determinism():
    rng = np.random.default_rng(11)
    p = _random_problem(rng)
    s1 = solve_lp(p)
    s2 = solve_lp(p)
    assert s1.status == s2.status
    if s1.status == OPTIMAL:
        assert s1.x.tobytes() == s2.x.tobytes()
        assert s1.iterations == s2.iterations

"""Single-panel discretizations, dense solve, and off-grid evaluation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebfred.fredholm_solver import (
    SingularMatrixError,
    dense_solve,
    discretize_semismooth,
    discretize_smooth,
    relative_sup_error,
    schur_product,
    solve_fredholm,
    solve_system,
)
from chebfred.kernel_catalog import catalog_lookup
from chebfred.spectral_core import cheb_grid, inverse_cosine_matrix


def test_dense_solve_identity():
    rhs = np.array([3.0, -1.0, 2.0])
    x, rcond, warn = dense_solve(np.eye(3), rhs)
    assert x == pytest.approx(rhs)
    assert rcond == pytest.approx(1.0)
    assert not warn


def test_dense_solve_diagonal():
    x, _, _ = dense_solve(np.array([[2.0, 0.0], [0.0, 4.0]]), np.array([2.0, 8.0]))
    assert x == pytest.approx([1.0, 2.0])


def test_dense_solve_round_trip():
    rng = np.random.default_rng(7)
    a = np.eye(20) + 0.1 * rng.standard_normal((20, 20))
    x = rng.standard_normal(20)
    recovered, _, warn = dense_solve(a, a @ x)
    assert np.max(np.abs(recovered - x)) < 1e-11
    assert not warn


def test_dense_solve_singular_raises():
    with pytest.raises(SingularMatrixError):
        dense_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 2.0]))


def test_dense_solve_near_singular_warns():
    a = np.array([[1.0, 0.0], [0.0, 1e-15]])
    x, rcond, warn = dense_solve(a, np.array([1.0, 1e-15]))
    assert warn
    assert rcond < 1e-12
    assert x == pytest.approx([1.0, 1.0])


def test_dense_solve_rejects_nonfinite_matrix():
    a = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        dense_solve(a, np.array([1.0, 1.0]))


def test_schur_product_small_cases():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert schur_product(a, np.eye(2)) == pytest.approx(np.diag([1.0, 4.0]))
    b = np.array([[5.0, 6.0], [7.0, 8.0]])
    assert schur_product(a, b) == pytest.approx(np.array([[5.0, 12.0], [21.0, 32.0]]))
    with pytest.raises(ValueError):
        schur_product(a, np.ones((2, 3)))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_schur_vector_action_identity(seed):
    # (A o B) c equals the diagonal of A diag(c) B^T
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, (5, 5))
    b = rng.uniform(-1.0, 1.0, (5, 5))
    c = rng.uniform(-1.0, 1.0, 5)
    lhs = schur_product(a, b) @ c
    rhs = np.diag(a @ np.diag(c) @ b.T)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_smooth_rule_zero_kernel():
    grid = cheb_grid(8, -1.0, 1.0)
    system = discretize_smooth(lambda t, s: t * 0.0 + s * 0.0, grid, 1.0, np.cos)
    assert system.matrix == pytest.approx(np.eye(9))
    assert system.kind == "smooth"
    sol = solve_system(system)
    assert sol.node_values == pytest.approx(np.cos(grid.nodes))


def test_smooth_rule_constant_kernel_constant_solution():
    # x + integral over [-1,1] of x = 1 forces the constant solution 1/3
    grid = cheb_grid(10, -1.0, 1.0)
    system = discretize_smooth(lambda t, s: np.ones(np.broadcast(t, s).shape), grid, 1.0, lambda t: np.ones_like(t))
    sol = solve_system(system)
    assert sol.node_values == pytest.approx(np.full(11, 1.0 / 3.0), abs=1e-13)
    assert sol.evaluate(0.77) == pytest.approx(1.0 / 3.0, abs=1e-13)


def test_semismooth_rule_zero_branches():
    grid = cheb_grid(6, 0.0, 2.0)
    zero = lambda t, s: t * 0.0 + s * 0.0
    system = discretize_semismooth(
        type("K", (), {"eval_lower": staticmethod(zero), "eval_upper": staticmethod(zero)})(),
        grid,
        0.5,
        np.sin,
    )
    assert system.kind == "semismooth"
    sol = solve_system(system)
    assert sol.node_values == pytest.approx(np.sin(grid.nodes))


@pytest.mark.parametrize("n", [4, 16, 64])
def test_smooth_and_split_rules_agree_on_smooth_kernel(n):
    # with identical branches the two discretizations coincide
    kernel = lambda t, s: np.exp(t * s)
    grid = cheb_grid(n, -1.0, 1.0)
    rhs = lambda t: np.cosh(t)
    sys_a = discretize_smooth(kernel, grid, 0.4, rhs)
    sys_b = discretize_semismooth(kernel, grid, 0.4, rhs)
    rng = np.random.default_rng(n)
    v = rng.uniform(-1.0, 1.0, n + 1)
    num = np.max(np.abs(sys_a.matrix @ v - sys_b.matrix @ v))
    assert num / np.max(np.abs(sys_b.matrix @ v)) < 1e-12
    xa = solve_system(sys_a).node_values
    xb = solve_system(sys_b).node_values
    assert np.max(np.abs(xa - xb)) < 1e-13


def test_sign_jump_problem_spectral_accuracy():
    problem = catalog_lookup("example1")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 16)
    err = relative_sup_error(sol.node_values, problem.solution(sol.nodes))
    assert err < 1e-13


def test_difference_kernel_problem_spectral_accuracy():
    problem = catalog_lookup("example2")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 16)
    err = relative_sup_error(sol.node_values, problem.solution(sol.nodes))
    assert err < 1e-12


@pytest.mark.parametrize("name", ["example1", "example2"])
def test_error_decreases_until_rounding_floor(name):
    problem = catalog_lookup(name)
    errors = []
    for n in (4, 8, 12, 16, 20):
        sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, n)
        errors.append(relative_sup_error(sol.node_values, problem.solution(sol.nodes)))
    assert errors[-1] < 1e-12
    for prev, cur in zip(errors, errors[1:]):
        assert cur < prev or cur < 1e-12


def test_assembled_operator_matches_trapezium_quadrature():
    # (A - I) x / lam reproduces the split integrals of the exact solution
    problem = catalog_lookup("example2")
    grid = cheb_grid(16, problem.a, problem.b)
    system = discretize_semismooth(problem.kernel, grid, problem.lam, problem.rhs)
    x_exact = problem.solution(grid.nodes)
    integrals = (system.matrix - np.eye(17)) @ x_exact / problem.lam
    kern, x = problem.kernel, problem.solution
    for i, ti in enumerate(grid.nodes):
        s_left = np.linspace(problem.a, ti, 10**5 + 1)
        s_right = np.linspace(ti, problem.b, 10**5 + 1)
        oracle = np.trapezoid(kern.eval_lower(ti, s_left) * x(s_left), s_left) + np.trapezoid(
            kern.eval_upper(ti, s_right) * x(s_right), s_right
        )
        assert abs(integrals[i] - oracle) < 1e-6


def test_rhs_accepts_arrays_and_validates():
    grid = cheb_grid(4, -1.0, 1.0)
    kernel = lambda t, s: t * 0.0 + s * 0.0
    vals = np.arange(5.0)
    system = discretize_smooth(kernel, grid, 1.0, vals)
    assert system.rhs == pytest.approx(vals)
    with pytest.raises(ValueError):
        discretize_smooth(kernel, grid, 1.0, np.arange(4.0))
    with pytest.raises(ValueError):
        discretize_smooth(kernel, grid, 1.0, np.array([1.0, np.inf, 0.0, 0.0, 0.0]))


def test_evaluate_reproduces_node_values():
    problem = catalog_lookup("example1")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 12)
    nodes = sol.nodes
    assert sol.evaluate(nodes) == pytest.approx(sol.node_values, abs=1e-12)


def test_evaluate_off_grid_accuracy():
    problem = catalog_lookup("example1")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 16)
    assert abs(sol.evaluate(0.123) - np.exp(-0.123)) < 1e-11


def test_evaluate_constant_interpolant():
    grid = cheb_grid(7, 0.0, 3.0)
    values = np.full(8, 4.5)
    coeffs = inverse_cosine_matrix(7) @ values
    from chebfred.fredholm_solver import ChebSolution

    sol = ChebSolution(grids=(grid,), values=(values,), coeffs=(coeffs,), rcond=1.0, cond_warning=False)
    for t in (0.0, 0.1, 1.7, 3.0):
        assert sol.evaluate(t) == pytest.approx(4.5, abs=1e-12)


def test_evaluate_rejects_exterior_points():
    problem = catalog_lookup("example1")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 8)
    with pytest.raises(ValueError):
        sol.evaluate(1.5)
    with pytest.raises(ValueError):
        sol.evaluate(np.array([0.0, -2.0]))


def test_evaluate_near_boundary_probe():
    # measured, not bounded: interpolant error close to the interval ends for
    # the boundary-singular kernel, printed for the record
    problem = catalog_lookup("example3")
    sol = solve_fredholm(problem.kernel, problem.a, problem.b, problem.lam, problem.rhs, 32)
    probes = np.linspace(-0.999, 0.999, 4001)
    err = np.max(np.abs(sol.evaluate(probes) - problem.solution(probes)))
    print(f"off-grid sup error near the boundary, order 32: {err:.3e}")
    assert np.isfinite(err)


def test_relative_sup_error_conventions():
    assert relative_sup_error(np.array([1.1, 2.0]), np.array([1.0, 2.0])) == pytest.approx(0.05)
    # all-zero reference falls back to the absolute sup norm
    assert relative_sup_error(np.array([0.5, -0.25]), np.zeros(2)) == pytest.approx(0.5)

import numpy as np
import pytest

from scipy.optimize import linprog

from adiabat.simplex import linprog_dense


def test_optimal_vertex():
    res = linprog_dense(np.array([-1.0, -1.0]), np.array([[1.0, 2.0], [3.0, 1.0]]), np.array([4.0, 6.0]))
    assert res.status == "optimal"
    assert res.x == pytest.approx([1.6, 1.2])
    assert res.objective == pytest.approx(-2.8)
    assert res.iterations > 0


def test_no_constraints():
    res = linprog_dense(np.array([1.0, 2.0]), np.zeros((0, 2)), np.zeros(0))
    assert res.status == "optimal"
    assert res.objective == 0.0


def test_infeasible():
    res = linprog_dense(np.array([1.0]), np.array([[1.0], [-1.0]]), np.array([1.0, -2.0]))
    assert res.status == "infeasible"
    assert res.x is None


def test_unbounded():
    res = linprog_dense(np.array([-1.0, 0.0]), np.array([[-1.0, 1.0]]), np.array([1.0]))
    assert res.status == "unbounded"


def test_negative_rhs_needs_phase_one():
    # x + y >= 2, x <= 1.5
    res = linprog_dense(np.array([1.0, 2.0]), np.array([[-1.0, -1.0], [1.0, 0.0]]), np.array([-2.0, 1.5]))
    assert res.status == "optimal"
    assert res.x == pytest.approx([1.5, 0.5])
    assert res.objective == pytest.approx(2.5)


def test_duplicate_rows():
    res = linprog_dense(np.array([1.0]), np.array([[-1.0], [-1.0], [1.0]]), np.array([-1.0, -1.0, 5.0]))
    assert res.status == "optimal"
    assert res.x == pytest.approx([1.0])


def test_degenerate_cycling_example():
    # Cycles under the textbook largest-coefficient rule; Bland's rule terminates
    c = np.array([-0.75, 150.0, -0.02, 6.0])
    A = np.array([
        [0.25, -60.0, -0.04, 9.0],
        [0.5, -90.0, -0.02, 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
    res = linprog_dense(c, A, np.array([0.0, 0.0, 1.0]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-0.05)
    assert np.all(A @ res.x <= np.array([0.0, 0.0, 1.0]) + 1e-9)


def test_iteration_limit():
    res = linprog_dense(np.array([-1.0, -1.0]), np.array([[1.0, 2.0], [3.0, 1.0]]), np.array([4.0, 6.0]), max_iter=0)
    assert res.status == "iteration_limit"
    assert res.x is None


def test_shape_mismatch():
    with pytest.raises(ValueError):
        linprog_dense(np.array([1.0]), np.array([[1.0]]), np.array([1.0, 2.0]))


@pytest.mark.parametrize("seed", range(10))
def test_matches_reference_solver(seed: int):
    rng = np.random.default_rng(seed)
    m, n = 6, 4
    A = rng.uniform(-1.0, 1.0, size=(m, n))
    A[0] = rng.uniform(0.5, 1.0, size=n)  # keeps the problem bounded
    b = rng.uniform(0.5, 2.0, size=m)
    c = rng.uniform(-1.0, 1.0, size=n)

    ours = linprog_dense(c, A, b)
    ref = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")

    assert ours.status == "optimal" and ref.status == 0
    assert ours.objective == pytest.approx(ref.fun, abs=1e-8)
    assert np.all(A @ ours.x <= b + 1e-9)
    assert np.all(ours.x >= -1e-12)


def test_small_infeasibility_beside_large_bounds():
    # x2 >= x1 + 1e-5 and x2 <= x1, next to rows bounding both variables by 1e6
    A = np.array([[1.0, -1.0], [-1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    b = np.array([-1e-5, 0.0, 1e6, 1e6])
    assert linprog_dense(np.array([1.0, 1.0]), A, b).status == "infeasible"

import numpy as np
import pytest
from scipy.optimize import linprog

from aptrig.simplex import LPInfeasibleError, solve_cover_lp


def test_single_constraint_puts_mass_on_best_column():
    A = np.array([[0.5, 2.0, 1.0]])
    value, w, y = solve_cover_lp(A)
    assert value == pytest.approx(0.5)
    assert w[1] == pytest.approx(0.5)
    assert y[0] == pytest.approx(0.5)


def test_two_constraints_hand_solution():
    # cover both rows; the shared column wins
    A = np.array([[1.0, 0.0, 1.0],
                  [0.0, 1.0, 1.0]])
    value, w, _ = solve_cover_lp(A)
    assert value == pytest.approx(1.0)
    assert w[2] == pytest.approx(1.0)


def test_zero_row_is_infeasible():
    with pytest.raises(LPInfeasibleError):
        solve_cover_lp(np.array([[1.0, 2.0], [0.0, 0.0]]))


def test_matches_scipy_on_random_instances(rng):
    for trial in range(30):
        W = int(rng.integers(1, 8))
        J = int(rng.integers(2, 40))
        A = rng.uniform(0.0, 1.0, size=(W, J)) * (rng.uniform(size=(W, J)) < 0.7)
        A[np.arange(W), rng.integers(0, J, W)] += rng.uniform(0.2, 1.0, W)
        value, w, _ = solve_cover_lp(A)
        assert np.all(A @ w >= 1.0 - 1e-9)
        ref = linprog(np.ones(J), A_ub=-A, b_ub=-np.ones(W), method="highs")
        assert ref.status == 0
        assert value == pytest.approx(ref.fun, abs=1e-8)

"""Dense primal simplex with Bland's rule for small covering LPs.

Solves  min 1'w  subject to  A w >= 1, w >= 0  (A nonnegative) through its
dual  max 1'y : A' y <= 1, y >= 0, which is feasible at y = 0, so a single
phase suffices.  The primal weights are read off the optimal reduced costs
of the slack columns.  Bland's pivoting rule guarantees termination, and the
tableau is refactorized from the original data every few dozen pivots so
rounding drift cannot accumulate; these LPs are tiny, so determinism is
preferred over speed.
"""
from __future__ import annotations

import numpy as np

FEAS_TOL = 1e-10
PIVOTS_PER_REFRESH = 50
MAX_REFRESHES = 400


class LPInfeasibleError(RuntimeError):
    """The covering constraints cannot be met (a zero row in A)."""


def solve_cover_lp(A: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Return (value, w, y) for min 1'w : A w >= 1, w >= 0.

    `w` is the optimal weight vector, `y` the optimal dual variables of the
    covering constraints.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.size == 0:
        raise ValueError("constraint matrix must be 2-D and nonempty")
    if np.any(A < -FEAS_TOL):
        raise ValueError("covering LP expects a nonnegative matrix")
    W, J = A.shape
    if np.any(A.max(axis=1) <= FEAS_TOL):
        raise LPInfeasibleError("a covering row has no positive entry")

    # dual in standard min form: min c.x : M x = 1, x >= 0 with x = (y, s)
    M = np.hstack([A.T, np.eye(J)])
    c = np.concatenate([-np.ones(W), np.zeros(J)])
    basis = list(range(W, W + J))

    for _ in range(MAX_REFRESHES):
        B = M[:, basis]
        T = np.linalg.solve(B, M)
        b = np.linalg.solve(B, np.ones(J))
        b = np.where(b < 0.0, 0.0, b)  # clip refactorization dust
        red = c - c[basis] @ T
        progressed = False
        for _ in range(PIVOTS_PER_REFRESH):
            enter = -1
            for j in range(W + J):
                if red[j] < -FEAS_TOL:
                    enter = j
                    break
            if enter < 0:
                break
            col = T[:, enter]
            best_row, best_ratio, best_var = -1, np.inf, None
            for i in range(J):
                if col[i] > FEAS_TOL:
                    ratio = b[i] / col[i]
                    if (ratio < best_ratio - FEAS_TOL
                            or (abs(ratio - best_ratio) <= FEAS_TOL
                                and (best_var is None or basis[i] < best_var))):
                        best_row, best_ratio, best_var = i, ratio, basis[i]
            if best_row < 0:
                raise LPInfeasibleError("unbounded dual: covering LP infeasible")
            piv = T[best_row, enter]
            T[best_row] /= piv
            b[best_row] /= piv
            for i in range(J):
                f = T[i, enter]
                if i != best_row and f != 0.0:
                    T[i] -= f * T[best_row]
                    b[i] -= f * b[best_row]
            red -= red[enter] * T[best_row]
            basis[best_row] = enter
            progressed = True
        else:
            continue  # pivot budget exhausted: refactorize and keep going
        if not progressed:
            break  # a freshly refactorized tableau is already optimal
    else:
        raise RuntimeError("simplex did not terminate within the refresh cap")

    # final answers from a clean factorization of the optimal basis
    B = M[:, basis]
    pi = np.linalg.solve(B.T, c[basis])
    w = np.maximum(-pi, 0.0)
    b = np.linalg.solve(B, np.ones(J))
    y = np.zeros(W)
    for i, var in enumerate(basis):
        if var < W:
            y[var] = max(b[i], 0.0)
    value = float(w.sum())
    slack = A @ w - 1.0
    if np.any(slack < -1e-8):
        raise RuntimeError("simplex returned an infeasible cover")
    return value, w, y

"""Finite-difference solve of the linearized problem, as a cross-check.

Discretizes u'' = -y on a uniform grid with the second-order one-sided
Neumann row (-3 u_0 + 4 u_1 - u_2 = 0) and the integral condition
u_n = alpha * int_0^eta u expressed through trapezoid weights on the
unknowns.  Deliberately shares no quadrature machinery with the
closed-form route: this is the independent side of the comparison.

All truncation terms have regular h^2 leading-order expansions, so a
single Richardson step over grids n and 2n (``extrapolate=True``) lifts
the accuracy to O(h^3) and better.  For that to hold across both grids
eta should fall on a node of the coarse grid.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .errors import ParameterError
from .grid import GridFunction, _eval_vectorized
from .problem import BVPProblem


def _trapezoid_constraint_weights(n: int, h: float, eta: float) -> np.ndarray:
    """Weights w with w @ u ~= int_0^eta u, trapezoid plus a partial cell."""
    w = np.zeros(n + 1)
    k = int(np.floor(eta / h + 1e-9))
    k = min(k, n)
    if k >= 1:
        w[:k + 1] = h
        w[0] = h / 2.0
        w[k] = h / 2.0
    delta = eta - k * h
    if delta > 1e-12 * h and k < n:
        theta = delta / h
        w[k] += (delta / 2.0) * (2.0 - theta)
        w[k + 1] += (delta / 2.0) * theta
    return w


def _fd_once(problem: BVPProblem, y, n: int) -> np.ndarray:
    t_end, alpha, eta = problem.t_end, problem.alpha, problem.eta
    h = t_end / n
    t = np.linspace(0.0, t_end, n + 1)
    y_vals = y(t) if isinstance(y, GridFunction) else _eval_vectorized(y, t)

    rows, cols, data = [], [], []

    def put(i, j, v):
        rows.append(i)
        cols.append(j)
        data.append(v)

    rhs = np.zeros(n + 1)
    put(0, 0, -3.0)
    put(0, 1, 4.0)
    put(0, 2, -1.0)
    for i in range(1, n):
        put(i, i - 1, 1.0)
        put(i, i, -2.0)
        put(i, i + 1, 1.0)
        rhs[i] = -h * h * y_vals[i]
    w = _trapezoid_constraint_weights(n, h, eta)
    for j in np.nonzero(w)[0]:
        put(n, int(j), -alpha * w[j])
    put(n, n, 1.0)

    matrix = scipy.sparse.csc_matrix(
        (data, (rows, cols)), shape=(n + 1, n + 1)
    )
    return scipy.sparse.linalg.spsolve(matrix, rhs)


def solve_linear_fd(
    problem: BVPProblem, y, n: int, extrapolate: bool = True
) -> GridFunction:
    """FD solution of u'' + y = 0 with the problem's boundary conditions.

    ``y`` may be a callable or a GridFunction (read through its
    interpolant).  With ``extrapolate`` the result combines the n and 2n
    grids as (4 u_{2n} - u_n) / 3 at the coarse nodes.
    """
    if n < 8 or n % 2 != 0:
        raise ParameterError(f"need an even grid with n >= 8, got {n}")
    coarse = _fd_once(problem, y, n)
    if not extrapolate:
        return GridFunction(problem.t_end, coarse)
    fine = _fd_once(problem, y, 2 * n)
    return GridFunction(problem.t_end, (4.0 * fine[::2] - coarse) / 3.0)

"""Closed-form solution of the linearized problem and its sign properties.

For forcing y the problem u'' + y = 0, u'(0) = 0, u(T) = alpha *
int_0^eta u has (for alpha*eta != 1) the unique solution

    u(t) = 1/(1 - alpha*eta) * int_0^T (T - s) y(s) ds
         - alpha/(2 (1 - alpha*eta)) * int_0^eta (eta - s)^2 y(s) ds
         - int_0^t (t - s) y(s) ds.

The prefix integrals are accumulated as int_0^t (t-s) y = t * int_0^t y
- int_0^t s y, so one cumulative pass serves every node.  In the regime
0 < alpha < 1/eta and y >= 0 the solution is nonnegative, non-increasing,
concave, and satisfies the cone bound min u >= gamma * max u; for
alpha > 1/eta no nonnegative solution exists and the computed one dips
negative, which ``check_nonexistence_supercritical`` witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .grid import GridFunction, cumulative_simpson, quadrature_weights
from .problem import BVPProblem

DEFAULT_TOL_BC = 1e-8
DEFAULT_TOL_POS = 1e-10
DEFAULT_TOL_CONE = 1e-8


@dataclass(frozen=True)
class LinearSolution:
    """Solution of the linearized problem with its boundary diagnostic.

    ``boundary_defect`` is u(T) - alpha * int_0^eta u recomputed by
    quadrature from the solution samples; for consistent quadratures it
    sits at rounding level.
    """

    u: GridFunction
    u0: float
    boundary_defect: float

    def bc_ok(self, tol: float = DEFAULT_TOL_BC) -> bool:
        return abs(self.boundary_defect) <= tol * max(1.0, self.u.norm())


def solve_linear(problem: BVPProblem, y: GridFunction) -> LinearSolution:
    """Evaluate the closed-form solution of u'' + y = 0 on y's grid.

    y need not be nonnegative; only alpha*eta != 1 is required.
    """
    alpha, eta, t_end = problem.alpha, problem.eta, problem.t_end
    if abs(y.t_end - t_end) > 1e-12 * max(1.0, t_end):
        raise ParameterError(
            f"forcing grid spans [0, {y.t_end}], problem interval is [0, {t_end}]"
        )
    denom = 1.0 - alpha * eta
    if abs(denom) < 1e-12:
        raise ParameterError("alpha * eta = 1: the solution formula degenerates")

    g = y.values
    h = y.h
    t = y.grid()

    s_cum = cumulative_simpson(g, h)
    r_cum = cumulative_simpson(t * g, h)
    w_conv = t * s_cum - r_cum                      # int_0^t (t - s) y(s) ds
    total = w_conv[-1]                              # int_0^T (T - s) y(s) ds

    w_eta = quadrature_weights(t_end, y.n, 0.0, eta)
    q_eta = float(w_eta @ ((eta - t) ** 2 * g))     # int_0^eta (eta - s)^2 y

    u0 = (total - 0.5 * alpha * q_eta) / denom
    vals = u0 - w_conv
    u = GridFunction(t_end, vals)

    defect = float(vals[-1] - alpha * (w_eta @ vals))
    return LinearSolution(u=u, u0=float(u0), boundary_defect=defect)


def check_positivity(u: GridFunction, tol_pos: float = DEFAULT_TOL_POS) -> bool:
    """True iff u >= 0 on the grid up to a relative tolerance."""
    return u.min_value() >= -tol_pos * max(1.0, u.norm())


def check_monotone_decreasing(u: GridFunction, tol: float = DEFAULT_TOL_POS) -> bool:
    """True iff consecutive node values never increase beyond tolerance."""
    return float(np.max(np.diff(u.values))) <= tol * max(1.0, u.norm())


def check_min_bound(u: GridFunction, gamma: float, tol_cone: float = DEFAULT_TOL_CONE) -> bool:
    """Cone lower bound: min u >= gamma * max u, up to a relative tolerance."""
    return u.min_value() >= gamma * u.max_value() - tol_cone * max(1.0, u.norm())


def check_nonexistence_supercritical(problem: BVPProblem, y: GridFunction) -> bool:
    """Witness that alpha > 1/eta admits no nonnegative solution.

    Solves the linearized problem for a nonnegative, not identically zero
    forcing and reports whether the unique solution attains a strictly
    negative value on the grid.  By uniqueness this is the grid-scale
    witness of nonexistence.
    """
    if problem.alpha * problem.eta < 1.0:
        raise ParameterError(
            "nonexistence check requires alpha > 1/eta", field="alpha"
        )
    if not problem.allow_supercritical:
        raise ParameterError(
            "problem was not validated with allow_supercritical", field="alpha"
        )
    if y.min_value() < 0:
        raise ParameterError("forcing must be nonnegative")
    total = float(quadrature_weights(y.t_end, y.n, 0.0, y.t_end) @ y.values)
    if total <= 0:
        raise ParameterError("forcing must not be identically zero")
    sol = solve_linear(problem, y)
    return sol.u.min_value() < -DEFAULT_TOL_POS * max(1.0, sol.u.norm())

"""Positive-solution finder for u'' + a(t) f(u) = 0 with the integral BC.

Two independent realizations of the same object:

* ``apply_A`` evaluates the fixed-point operator

      (A u)(t) = solve_linear with forcing y(s) = a(s) f(u(s)),

  whose fixed points are exactly the solutions of the BVP;

* ``shoot`` integrates the initial value problem u(0) = c, u'(0) = 0 by
  classical fourth-order Runge-Kutta and reports the boundary defect
  g(c) = u_c(T) - alpha * int_0^eta u_c.

``find_solutions`` scans g over initial heights, refines each sign change
by bisection (g can be flat or stiff near blowup, so nothing fancier), and
packages every nontrivial root with full diagnostics.  For a decreasing
positive solution the sup norm equals the shooting parameter c, so the
norm brackets asserted by the existence statements translate directly
into brackets on c.  Picard iteration of A is provided as a cross-check;
for superlinear f the nontrivial fixed point is repelling under plain
iteration and shooting is the reliable route.

A trajectory that escapes the overflow guard, or whose derivative
evaluation stops being finite, has left u >= 0 irrecoverably; then
u(T) < 0 forces g = u(T) - alpha*int u <= u(T)(1 - alpha*eta) < 0, so
scans treat such heights as g = -inf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import verifier
from .constants import ConeConstants, cone_constants
from .errors import BlowupError, NonConvergenceError, ParameterError
from .grid import DEFAULT_GRID_N, GridFunction, quadrature_weights
from .linear import solve_linear
from .problem import BVPProblem

BLOWUP_GUARD = 1e12
DEFAULT_TOL_ROOT = 1e-9
DEFAULT_TOL_FIXEDPOINT = 1e-5
_GEOMETRIC_POINTS = 64
_TRIVIAL_NORM = 1e-10
_BISECT_MAXIT = 110


@dataclass(frozen=True)
class SolutionResult:
    """A candidate solution with the diagnostics that admit or reject it.

    norm is the sup norm (equal to c0 = u(0) for decreasing solutions),
    residual_ode the max central-difference residual of the ODE,
    bc_defect the integral boundary defect, fixedpoint_defect the sup
    distance ||Au - u||, and refinement_factor the measured drop of the
    ODE residual when the step is halved (about 4 for a second-order
    residual stencil on a genuine solution).
    """

    u: GridFunction
    norm: float
    c0: float
    residual_ode: float
    bc_defect: float
    fixedpoint_defect: float
    in_cone: bool
    accepted: bool
    refinement_factor: float | None
    verification: "verifier.VerificationReport"


def apply_A(problem: BVPProblem, u: GridFunction) -> GridFunction:
    """One application of the fixed-point operator on u's grid."""
    t = u.grid()
    y_vals = problem.coeff_values(t) * problem.nonlin_clipped(u.values)
    if not np.all(np.isfinite(y_vals)):
        raise BlowupError("a(t) f(u(t)) is not finite on the grid")
    y = GridFunction(u.t_end, y_vals)
    return solve_linear(problem, y).u


def _rk4_batch(problem: BVPProblem, cs: np.ndarray, n: int) -> np.ndarray:
    """Trajectories u'' = -a(t) f(u) from heights cs; dead ones turn NaN."""
    t_end = problem.t_end
    h = t_end / n
    a_half = problem.coeff_values(np.linspace(0.0, t_end, 2 * n + 1))
    f = problem.nonlin_clipped
    u = np.array(cs, dtype=float)
    v = np.zeros_like(u)
    traj = np.empty((u.size, n + 1))
    traj[:, 0] = u
    with np.errstate(all="ignore"):
        for i in range(n):
            a0 = a_half[2 * i]
            am = a_half[2 * i + 1]
            a1 = a_half[2 * i + 2]
            k1u = v
            k1v = -a0 * f(u)
            k2u = v + 0.5 * h * k1v
            k2v = -am * f(u + 0.5 * h * k1u)
            k3u = v + 0.5 * h * k2v
            k3v = -am * f(u + 0.5 * h * k2u)
            k4u = v + h * k3v
            k4v = -a1 * f(u + h * k3u)
            u = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            dead = ~np.isfinite(u) | ~np.isfinite(v) | (np.abs(u) > BLOWUP_GUARD)
            if dead.any():
                u = np.where(dead, np.nan, u)
                v = np.where(dead, np.nan, v)
            traj[:, i + 1] = u
    return traj


def _defects(problem: BVPProblem, traj: np.ndarray, n: int) -> np.ndarray:
    """g(c) per trajectory row; NaN rows (blowups) become -inf."""
    w_eta = quadrature_weights(problem.t_end, n, 0.0, problem.eta)
    with np.errstate(invalid="ignore"):
        g = traj[:, -1] - problem.alpha * (traj @ w_eta)
    return np.where(np.isfinite(g), g, -np.inf)


def shoot(problem: BVPProblem, c: float, n: int = DEFAULT_GRID_N):
    """Integrate from height c; return (trajectory, boundary defect g(c))."""
    if c < 0:
        raise ParameterError(f"shooting height must be nonnegative, got {c}")
    traj = _rk4_batch(problem, np.array([c]), n)
    if not np.all(np.isfinite(traj[0])):
        raise BlowupError(f"trajectory from c = {c} exceeded the overflow guard")
    g = float(_defects(problem, traj, n)[0])
    return GridFunction(problem.t_end, traj[0]), g


def _scan_heights(c_max: float, n_scan: int) -> np.ndarray:
    geo = np.geomspace(1e-4, c_max, _GEOMETRIC_POINTS)
    lin = np.linspace(c_max / n_scan, c_max, n_scan)
    cs = np.unique(np.concatenate([geo, lin]))
    return cs


def _bisect_batch(problem, lo, hi, sign_lo, n, tol_root):
    """Vectorized bisection on g over many brackets at once."""
    lo = lo.copy()
    hi = hi.copy()
    roots = np.full(lo.shape, np.nan)
    for _ in range(_BISECT_MAXIT):
        todo = np.isnan(roots)
        if not todo.any():
            break
        mid = 0.5 * (lo + hi)
        g_mid = np.full(lo.shape, np.nan)
        traj = _rk4_batch(problem, mid[todo], n)
        g_mid[todo] = _defects(problem, traj, n)
        converged = todo & np.isfinite(g_mid) & (
            np.abs(g_mid) <= tol_root * np.maximum(1.0, mid)
        )
        roots[converged] = mid[converged]
        still = todo & ~converged
        sign_mid = np.where(g_mid > 0, 1.0, -1.0)
        same = still & (sign_mid == sign_lo)
        lo[same] = mid[same]
        hi[still & ~same] = mid[still & ~same]
        exhausted = still & ((hi - lo) <= 1e-14 * np.maximum(1.0, hi))
        roots[exhausted] = 0.5 * (lo + hi)[exhausted]
    return roots[np.isfinite(roots)]


def _package(
    problem: BVPProblem,
    u: GridFunction,
    c0: float,
    consts: ConeConstants | None,
    refinement_factor: float | None,
    tol_fixedpoint: float = DEFAULT_TOL_FIXEDPOINT,
) -> SolutionResult:
    report = verifier.verify(problem, u, consts)
    au = apply_A(problem, u)
    fp_defect = float(np.max(np.abs(au.values - u.values)))
    norm = u.max_value()
    accepted = report.accepted and fp_defect <= tol_fixedpoint * max(1.0, norm)
    return SolutionResult(
        u=u,
        norm=norm,
        c0=c0,
        residual_ode=report.residual_ode,
        bc_defect=report.bc_integral,
        fixedpoint_defect=fp_defect,
        in_cone=report.cone_ok,
        accepted=accepted,
        refinement_factor=refinement_factor,
        verification=report,
    )


def find_solutions(
    problem: BVPProblem,
    c_max: float,
    n_scan: int = 64,
    tol_root: float = DEFAULT_TOL_ROOT,
    n: int = DEFAULT_GRID_N,
    consts: ConeConstants | None = None,
    with_refinement: bool = True,
) -> list[SolutionResult]:
    """Locate positive solutions by scanning and bisecting g(c).

    Returns the packaged roots sorted by norm; an empty list is a legal
    outcome (a missed root never refutes an existence statement).  Roots
    with trajectory norm below 1e-10 are the trivial solution of
    f(0) = 0 problems and are dropped.
    """
    if not c_max > 0:
        raise ParameterError(f"c_max must be positive, got {c_max}")
    if n_scan < 16:
        raise ParameterError(f"n_scan must be at least 16, got {n_scan}")

    cs = _scan_heights(c_max, n_scan)
    g = _defects(problem, _rk4_batch(problem, cs, n), n)
    sign = np.where(g > 0, 1.0, -1.0)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if flips.size == 0:
        return []

    roots = _bisect_batch(
        problem, cs[flips], cs[flips + 1], sign[flips], n, tol_root
    )
    roots = np.sort(roots)
    keep = []
    for c in roots:
        if keep and abs(c - keep[-1]) <= 1e-8 * max(1.0, c):
            continue
        keep.append(float(c))
    if not keep:
        return []

    if consts is None and not problem.supercritical:
        consts = cone_constants(problem)

    heights = np.array(keep)
    traj = _rk4_batch(problem, heights, n)
    factors = [None] * len(keep)
    if with_refinement:
        traj_fine = _rk4_batch(problem, heights, 2 * n)
        for k in range(len(keep)):
            if not np.all(np.isfinite(traj_fine[k])):
                continue
            coarse = verifier.ode_residual(
                problem, GridFunction(problem.t_end, traj[k])
            )
            fine = verifier.ode_residual(
                problem, GridFunction(problem.t_end, traj_fine[k])
            )
            if fine > 0:
                factors[k] = coarse / fine

    results = []
    for k, c in enumerate(keep):
        if not np.all(np.isfinite(traj[k])):
            continue
        u = GridFunction(problem.t_end, traj[k])
        if u.norm() < _TRIVIAL_NORM:
            continue
        results.append(_package(problem, u, c, consts, factors[k]))
    results.sort(key=lambda r: r.norm)
    return results


def picard_iterate(
    problem: BVPProblem,
    u0: GridFunction,
    damping: float = 0.5,
    tol: float = 1e-8,
    maxiter: int = 200,
) -> SolutionResult:
    """Damped fixed-point iteration u <- (1 - damping) u + damping A u.

    Converges only toward attracting fixed points; raises
    NonConvergenceError (carrying the final defect) otherwise, so callers
    can fall back to shooting.
    """
    if not 0.0 < damping <= 1.0:
        raise ParameterError(f"damping must lie in (0, 1], got {damping}")
    u = u0
    defect = np.inf
    for _ in range(maxiter):
        au = apply_A(problem, u)
        defect = float(np.max(np.abs(au.values - u.values)))
        if defect <= tol * max(1.0, u.norm()):
            consts = None if problem.supercritical else cone_constants(problem)
            return _package(problem, u, float(u.values[0]), consts, None)
        u = GridFunction(u.t_end, (1.0 - damping) * u.values + damping * au.values)
    raise NonConvergenceError(
        f"no fixed point after {maxiter} damped iterations (defect {defect:.3e})",
        defect=defect,
    )

"""Independent validation of candidate solutions and prediction reconciling.

``verify`` re-derives every checkable claim about a candidate u directly
from its grid samples: the ODE residual through central second
differences (a route independent of how u was produced), both boundary
conditions, sign, monotonicity, concavity, and cone membership.  It
reports and never throws.

``reconcile`` compares solver output against the existence predictions.
A missing solution yields UNRESOLVED, never a refutation: the statements
assert existence, and a scan can miss a root.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import ConeConstants, cone_constants, cone_membership
from .grid import GridFunction, quadrature_weights
from .problem import BVPProblem

DEFAULT_TOL_BC = 1e-6
DEFAULT_TOL_POS = 1e-10
DEFAULT_TOL_CONE = 1e-8
# Residual scale gate: kinked forcings legitimately spike the stencil
# residual to O(h * slope jump), so the absolute gate only separates
# solutions from garbage; the quantitative statement is the refinement
# factor (halving h divides a genuine residual by about 4).
DEFAULT_RESID_SCALE = 0.05

CONFIRMED = "CONFIRMED"
UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class VerificationReport:
    residual_ode: float
    bc_neumann: float
    bc_integral: float
    positive: bool
    decreasing: bool
    concave: bool
    cone_ok: bool
    norm: float
    bc_ok: bool
    residual_ok: bool

    @property
    def accepted(self) -> bool:
        return (
            self.positive
            and self.decreasing
            and self.concave
            and self.cone_ok
            and self.bc_ok
            and self.residual_ok
        )


def ode_residual(problem: BVPProblem, u: GridFunction) -> float:
    """max |D^2 u + a f(u)| over interior nodes, D^2 central."""
    vals = u.values
    h = u.h
    d2 = (vals[:-2] - 2.0 * vals[1:-1] + vals[2:]) / (h * h)
    t = u.grid()[1:-1]
    y = problem.coeff_values(t) * problem.nonlin_clipped(vals[1:-1])
    return float(np.max(np.abs(d2 + y)))


def verify(
    problem: BVPProblem,
    u: GridFunction,
    consts: ConeConstants | None = None,
    tol_bc: float = DEFAULT_TOL_BC,
    tol_pos: float = DEFAULT_TOL_POS,
    tol_cone: float = DEFAULT_TOL_CONE,
    resid_scale: float = DEFAULT_RESID_SCALE,
) -> VerificationReport:
    """Check every claim about a candidate solution; reports, never throws."""
    vals = u.values
    h = u.h
    norm = u.norm()
    scale = max(1.0, norm)

    residual = ode_residual(problem, u)
    y_all = problem.coeff_values(u.grid()) * problem.nonlin_clipped(vals)
    y_scale = float(np.max(np.abs(y_all))) if np.all(np.isfinite(y_all)) else np.inf
    residual_ok = bool(residual <= resid_scale * max(1.0, y_scale))

    bc_neumann = abs(float(-3.0 * vals[0] + 4.0 * vals[1] - vals[2]) / (2.0 * h))
    w_eta = quadrature_weights(problem.t_end, u.n, 0.0, problem.eta)
    bc_integral = abs(float(vals[-1] - problem.alpha * (w_eta @ vals)))
    bc_ok = bc_neumann <= tol_bc * scale and bc_integral <= tol_bc * scale

    positive = bool(np.min(vals) >= -tol_pos * scale)
    decreasing = bool(np.max(np.diff(vals)) <= tol_pos * scale)
    second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    concave = bool(np.max(second) <= tol_pos * scale)

    if consts is None and not problem.supercritical:
        consts = cone_constants(problem)
    cone_ok = bool(
        consts is not None and cone_membership(u, consts.gamma, tol=tol_cone)
    )

    return VerificationReport(
        residual_ode=residual,
        bc_neumann=bc_neumann,
        bc_integral=bc_integral,
        positive=positive,
        decreasing=decreasing,
        concave=concave,
        cone_ok=cone_ok,
        norm=norm,
        bc_ok=bc_ok,
        residual_ok=residual_ok,
    )


@dataclass(frozen=True)
class ReconcileResult:
    status: str
    checks: tuple

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED


def reconcile(report, found) -> ReconcileResult:
    """Match accepted solution norms against each predicted bracket.

    Every prediction asking for at least ``count`` solutions with norm in
    (lower, upper) is CONFIRMED when enough accepted solutions land
    inside, else UNRESOLVED.  No predictions means vacuously CONFIRMED.
    Adding accepted solutions can only upgrade the verdict.
    """
    norms = [r.norm for r in found if getattr(r, "accepted", False)]
    checks = []
    all_ok = True
    for pred in report.predictions:
        hits = sum(1 for x in norms if pred.lower < x < pred.upper)
        ok = hits >= pred.count
        all_ok = all_ok and ok
        checks.append(
            {
                "theorem": pred.theorem,
                "count": pred.count,
                "lower": pred.lower,
                "upper": pred.upper,
                "hits": hits,
                "status": CONFIRMED if ok else UNRESOLVED,
            }
        )
    return ReconcileResult(
        status=CONFIRMED if all_ok else UNRESOLVED, checks=tuple(checks)
    )

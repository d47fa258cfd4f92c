"""End-to-end orchestration: constants -> hypotheses -> solve -> verify.

Shared by the CLI, the demo scripts, and the acceptance suite.  The
report dictionary is the stable machine-readable schema; its top-level
keys {problem, constants, limits, hypotheses, theorems, solutions,
verification, verdict} are always present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import ConeConstants, cone_constants
from .grid import DEFAULT_GRID_N, DEFAULT_PANELS
from .hypotheses import HYPOTHESES, HypothesisReport, LimitEstimate, Witness, classify
from .problem import BVPProblem
from .shooting import DEFAULT_TOL_ROOT, SolutionResult, find_solutions
from .verifier import ReconcileResult, reconcile

DEFAULT_C_MAX_BARE = 100.0
_C_MAX_PER_RADIUS = 10.0


@dataclass(frozen=True)
class PipelineOptions:
    panels: int = DEFAULT_PANELS
    grid_n: int = DEFAULT_GRID_N
    n_scan: int = 64
    c_max: float | None = None
    tol_root: float = DEFAULT_TOL_ROOT
    with_refinement: bool = True


@dataclass(frozen=True)
class PipelineResult:
    problem: BVPProblem
    constants: ConeConstants
    report: HypothesisReport
    solutions: list
    verdict: ReconcileResult

    @property
    def all_accepted(self) -> bool:
        return all(s.accepted for s in self.solutions)


def default_c_max(witness: Witness | None) -> float:
    """10x the largest witness radius, or 100 when no radius is given."""
    radii = []
    if witness is not None:
        radii = [r for r in (witness.rho1, witness.rho2) if r is not None]
    if not radii:
        return DEFAULT_C_MAX_BARE
    return _C_MAX_PER_RADIUS * max(radii)


def run_pipeline(
    problem: BVPProblem,
    witness: Witness | None = None,
    f0_override: LimitEstimate | None = None,
    finf_override: LimitEstimate | None = None,
    options: PipelineOptions | None = None,
) -> PipelineResult:
    opts = options or PipelineOptions()
    consts = cone_constants(problem, panels=opts.panels)
    report = classify(
        problem, consts, witness=witness,
        f0_override=f0_override, finf_override=finf_override,
    )
    c_max = opts.c_max if opts.c_max is not None else default_c_max(witness)
    solutions = find_solutions(
        problem,
        c_max,
        n_scan=opts.n_scan,
        tol_root=opts.tol_root,
        n=opts.grid_n,
        consts=consts,
        with_refinement=opts.with_refinement,
    )
    verdict = reconcile(report, solutions)
    return PipelineResult(
        problem=problem,
        constants=consts,
        report=report,
        solutions=solutions,
        verdict=verdict,
    )


def _limit_dict(est: LimitEstimate) -> dict:
    return {
        "kind": est.kind.value,
        "value": est.value,
        "samples": [[float(u), float(r)] for u, r in est.evidence],
    }


def _solution_dict(sol: SolutionResult) -> dict:
    return {
        "c0": sol.c0,
        "norm": sol.norm,
        "residual_ode": sol.residual_ode,
        "bc_defect": sol.bc_defect,
        "fixedpoint_defect": sol.fixedpoint_defect,
        "in_cone": sol.in_cone,
        "accepted": sol.accepted,
        "refinement_factor": sol.refinement_factor,
    }


def _verification_dict(sol: SolutionResult) -> dict:
    rep = sol.verification
    return {
        "residual_ode": rep.residual_ode,
        "bc_neumann": rep.bc_neumann,
        "bc_integral": rep.bc_integral,
        "positive": rep.positive,
        "decreasing": rep.decreasing,
        "concave": rep.concave,
        "cone_ok": rep.cone_ok,
        "norm": rep.norm,
        "accepted": rep.accepted,
    }


def result_to_dict(result: PipelineResult, example_id: str | None = None) -> dict:
    """Serialize a pipeline run into the stable report schema."""
    problem = result.problem
    out = {
        "problem": {
            "example": example_id,
            "alpha": problem.alpha,
            "eta": problem.eta,
            "t_end": problem.t_end,
            "coeff": problem.coeff_expr,
            "nonlin": problem.nonlin_expr,
            "allow_supercritical": problem.allow_supercritical,
        },
        "constants": {
            "gamma": result.constants.gamma,
            "lambda1": result.constants.lambda1,
            "lambda2": result.constants.lambda2,
        },
        "limits": {
            "f0": _limit_dict(result.report.f0),
            "finf": _limit_dict(result.report.finf),
        },
        "hypotheses": {name: result.report.holds.get(name) for name in HYPOTHESES},
        "theorems": list(result.report.applicable),
        "predictions": [
            {
                "theorem": p.theorem,
                "count": p.count,
                "lower": p.lower,
                "upper": None if math.isinf(p.upper) else p.upper,
            }
            for p in result.report.predictions
        ],
        "solutions": [_solution_dict(s) for s in result.solutions],
        "verification": [_verification_dict(s) for s in result.solutions],
        "verdict": {
            "status": result.verdict.status,
            "checks": list(result.verdict.checks),
        },
    }
    return out

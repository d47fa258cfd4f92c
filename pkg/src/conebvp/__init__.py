"""Cone-based analysis and solution of the three-point integral BVP

    u''(t) + a(t) f(u(t)) = 0,   u'(0) = 0,   u(T) = alpha int_0^eta u(s) ds.

The package computes the problem's cone constants, classifies the growth
of f to decide which existence statements apply, finds the predicted
positive solutions by shooting, and independently verifies every
checkable property of each candidate.
"""

from .constants import ConeConstants, cone_constants, cone_membership, gamma, lambda1, lambda2
from .errors import (
    BlowupError,
    ConeBVPError,
    ConfigError,
    DegenerateError,
    DomainError,
    NonConvergenceError,
    ParameterError,
    RangeError,
    UnknownExampleError,
)
from .expressions import compile_expression
from .fd import solve_linear_fd
from .grid import DEFAULT_GRID_N, DEFAULT_PANELS, GridFunction, integrate
from .hypotheses import (
    HypothesisReport,
    LimitEstimate,
    LimitKind,
    Prediction,
    Witness,
    check_H4,
    check_H6,
    classify,
    estimate_f0,
    estimate_finf,
)
from .linear import (
    LinearSolution,
    check_min_bound,
    check_monotone_decreasing,
    check_nonexistence_supercritical,
    check_positivity,
    solve_linear,
)
from .pipeline import PipelineOptions, PipelineResult, result_to_dict, run_pipeline
from .problem import BVPProblem, load_problem_config, validate_problem
from .registry import ExampleSpec, example_ids, get_example
from .shooting import SolutionResult, apply_A, find_solutions, picard_iterate, shoot
from .verifier import ReconcileResult, VerificationReport, ode_residual, reconcile, verify

__version__ = "0.1.0"

__all__ = [
    "BVPProblem",
    "BlowupError",
    "ConeBVPError",
    "ConeConstants",
    "ConfigError",
    "DEFAULT_GRID_N",
    "DEFAULT_PANELS",
    "DegenerateError",
    "DomainError",
    "ExampleSpec",
    "GridFunction",
    "HypothesisReport",
    "LimitEstimate",
    "LimitKind",
    "LinearSolution",
    "NonConvergenceError",
    "ParameterError",
    "PipelineOptions",
    "PipelineResult",
    "Prediction",
    "RangeError",
    "ReconcileResult",
    "SolutionResult",
    "UnknownExampleError",
    "VerificationReport",
    "Witness",
    "apply_A",
    "check_H4",
    "check_H6",
    "check_min_bound",
    "check_monotone_decreasing",
    "check_nonexistence_supercritical",
    "check_positivity",
    "classify",
    "compile_expression",
    "cone_constants",
    "cone_membership",
    "estimate_f0",
    "estimate_finf",
    "example_ids",
    "find_solutions",
    "gamma",
    "get_example",
    "integrate",
    "lambda1",
    "lambda2",
    "load_problem_config",
    "ode_residual",
    "picard_iterate",
    "reconcile",
    "result_to_dict",
    "run_pipeline",
    "shoot",
    "solve_linear",
    "solve_linear_fd",
    "validate_problem",
    "verify",
]

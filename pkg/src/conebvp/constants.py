"""Cone constants gamma, Lambda1, Lambda2 and cone membership.

gamma = alpha*eta*(T - eta) / (T - alpha*eta^2) controls the cone

    K = { u >= 0 : min u >= gamma * max u },

and the two thresholds compare the growth of f against the problem:

    Lambda1 = (1 - alpha*eta) / int_0^T (T - s) a(s) ds,
    Lambda2 = (1 - alpha*eta) / ( gamma * [ int_eta^T (T - s) a(s) ds
              + 1/2 int_0^eta (2(T - eta) + alpha (eta^2 - s^2)) a(s) ds ] ).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateError, ParameterError
from .grid import DEFAULT_PANELS, GridFunction, integrate
from .problem import BVPProblem

_DEGENERATE_FLOOR = 1e-14


@dataclass(frozen=True)
class ConeConstants:
    gamma: float
    lambda1: float
    lambda2: float


def gamma(problem: BVPProblem) -> float:
    """Cone ratio alpha*eta*(T - eta) / (T - alpha*eta^2), in (0, 1)."""
    alpha, eta, t_end = problem.alpha, problem.eta, problem.t_end
    if alpha * eta >= 1.0:
        raise ParameterError("gamma requires 0 < alpha < 1/eta", field="alpha")
    denom = t_end - alpha * eta * eta
    if denom <= 0:
        raise ParameterError("T - alpha*eta^2 must be positive")
    return alpha * eta * (t_end - eta) / denom


def lambda1(problem: BVPProblem, panels: int = DEFAULT_PANELS) -> float:
    alpha, eta, t_end = problem.alpha, problem.eta, problem.t_end
    denom = integrate(
        lambda s: (t_end - s) * problem.coeff_values(s), 0.0, t_end, n=2 * panels
    )
    if denom <= _DEGENERATE_FLOOR:
        raise DegenerateError(
            f"int_0^T (T - s) a(s) ds = {denom}: coefficient is effectively zero"
        )
    return (1.0 - alpha * eta) / denom


def lambda2(problem: BVPProblem, panels: int = DEFAULT_PANELS) -> float:
    alpha, eta, t_end = problem.alpha, problem.eta, problem.t_end
    g = gamma(problem)
    tail = integrate(
        lambda s: (t_end - s) * problem.coeff_values(s), eta, t_end, n=2 * panels
    )
    head = integrate(
        lambda s: (2.0 * (t_end - eta) + alpha * (eta * eta - s * s))
        * problem.coeff_values(s),
        0.0,
        eta,
        n=2 * panels,
    )
    bracket = tail + 0.5 * head
    if bracket <= _DEGENERATE_FLOOR:
        raise DegenerateError(
            f"Lambda2 quadrature bracket = {bracket}: coefficient is effectively zero"
        )
    return (1.0 - alpha * eta) / (g * bracket)


def cone_constants(problem: BVPProblem, panels: int = DEFAULT_PANELS) -> ConeConstants:
    return ConeConstants(
        gamma=gamma(problem),
        lambda1=lambda1(problem, panels=panels),
        lambda2=lambda2(problem, panels=panels),
    )


def cone_membership(u: GridFunction, gamma_value: float, tol: float = 1e-8) -> bool:
    """True iff u >= 0 and min u >= gamma * max u, up to a relative tolerance.

    Invariant under positive scaling of u, as a cone test must be.
    """
    slack = tol * max(1.0, u.norm())
    if u.min_value() < -slack:
        return False
    return u.min_value() >= gamma_value * u.max_value() - slack

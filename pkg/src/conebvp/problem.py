"""Problem description and validation.

The model problem is

    u''(t) + a(t) f(u(t)) = 0       on (0, T),
    u'(0) = 0,   u(T) = alpha * int_0^eta u(s) ds,

with 0 < eta < T and, in the standard regime, 0 < alpha < 1/eta.  The
coefficient a must be nonnegative and somewhere strictly positive; the
nonlinearity f must be nonnegative on [0, inf).  Both arrive as opaque
callables, so the sign conditions are checked by sampling (a documented
surrogate for the continuous conditions).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, ParameterError
from .expressions import compile_expression
from .grid import _eval_vectorized

_VALIDATION_POINTS = 1025
# f is probed on a log grid in (0, 1]: probing at exactly 0 would reject
# nonlinearities with a removable singularity at the origin, and the
# solution scale is not known a priori.
_NONLIN_PROBE = np.geomspace(1e-8, 1.0, 257)


@dataclass(frozen=True)
class BVPProblem:
    """Validated parameter set for the three-point integral BVP.

    Immutable; all solver operations treat it as read-only.  The
    ``allow_supercritical`` flag admits alpha > 1/eta, which is only
    useful for nonexistence experiments.
    """

    alpha: float
    eta: float
    t_end: float
    coeff: object
    nonlin: object
    allow_supercritical: bool = False
    coeff_expr: str | None = None
    nonlin_expr: str | None = None

    @property
    def supercritical(self) -> bool:
        return self.alpha * self.eta > 1.0

    def coeff_values(self, t) -> np.ndarray:
        """a(t) on an array of times."""
        return _eval_vectorized(self.coeff, np.asarray(t, dtype=float))

    def nonlin_clipped(self, u) -> np.ndarray:
        """f(max(u, 0)) on an array; f is only defined for u >= 0."""
        u = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            return _eval_vectorized(self.nonlin, np.maximum(u, 0.0))


def validate_problem(
    alpha: float,
    eta: float,
    t_end: float,
    coeff,
    nonlin,
    allow_supercritical: bool = False,
    coeff_expr: str | None = None,
    nonlin_expr: str | None = None,
) -> BVPProblem:
    """Check the standing assumptions and return an immutable problem.

    Raises ParameterError for bad (alpha, eta, T) and DomainError when a
    sampled coefficient or nonlinearity value is negative or non-finite.
    Validating the fields of an already valid problem returns an equal
    problem (the gate is idempotent).
    """
    alpha = float(alpha)
    eta = float(eta)
    t_end = float(t_end)
    if not np.isfinite(t_end) or t_end <= 0:
        raise ParameterError(f"t_end must be positive, got {t_end}", field="t_end")
    if not np.isfinite(eta) or not 0 < eta < t_end:
        raise ParameterError(
            f"eta must lie strictly inside (0, {t_end}), got {eta}", field="eta"
        )
    if not np.isfinite(alpha) or alpha <= 0:
        raise ParameterError(f"alpha must be positive, got {alpha}", field="alpha")
    if abs(alpha * eta - 1.0) < 1e-12:
        raise ParameterError(
            "alpha * eta = 1 makes the boundary functional degenerate",
            field="alpha",
        )
    if alpha * eta > 1.0 and not allow_supercritical:
        raise ParameterError(
            f"alpha = {alpha} >= 1/eta = {1.0 / eta}; "
            "set allow_supercritical for nonexistence experiments",
            field="alpha",
        )

    t_probe = np.linspace(0.0, t_end, _VALIDATION_POINTS)
    a_vals = _eval_vectorized(coeff, t_probe)
    if not np.all(np.isfinite(a_vals)):
        raise DomainError("coefficient a(t) sampled non-finite on [0, T]")
    if np.min(a_vals) < 0:
        t_bad = t_probe[int(np.argmin(a_vals))]
        raise DomainError(f"coefficient a(t) negative at t = {t_bad}")
    if np.max(a_vals) <= 0:
        raise DomainError("coefficient a(t) vanishes on the whole sample grid")

    with np.errstate(all="ignore"):
        f_vals = _eval_vectorized(nonlin, _NONLIN_PROBE)
    if not np.all(np.isfinite(f_vals)):
        raise DomainError("nonlinearity f(u) sampled non-finite on (0, 1]")
    if np.min(f_vals) < 0:
        u_bad = _NONLIN_PROBE[int(np.argmin(f_vals))]
        raise DomainError(f"nonlinearity f(u) negative at u = {u_bad}")

    return BVPProblem(
        alpha=alpha,
        eta=eta,
        t_end=t_end,
        coeff=coeff,
        nonlin=nonlin,
        allow_supercritical=bool(allow_supercritical),
        coeff_expr=coeff_expr,
        nonlin_expr=nonlin_expr,
    )


def load_problem_config(data: dict) -> BVPProblem:
    """Build a problem from a parsed JSON object.

    Required keys: alpha, eta, t_end (numbers) and coeff, nonlin
    (expression strings over t resp. u).  Optional: allow_supercritical.
    Raises ConfigError naming the offending field.
    """
    if not isinstance(data, dict):
        raise ConfigError("problem config must be a JSON object")
    for key in ("alpha", "eta", "t_end", "coeff", "nonlin"):
        if key not in data:
            raise ConfigError(f"missing required key {key!r}", field=key)
    for key in ("alpha", "eta", "t_end"):
        if not isinstance(data[key], (int, float)) or isinstance(data[key], bool):
            raise ConfigError(f"{key} must be a number", field=key)

    try:
        coeff = compile_expression(data["coeff"], "t")
    except ConfigError as exc:
        raise ConfigError(f"coeff: {exc}", field="coeff") from exc
    try:
        nonlin = compile_expression(data["nonlin"], "u")
    except ConfigError as exc:
        raise ConfigError(f"nonlin: {exc}", field="nonlin") from exc

    try:
        return validate_problem(
            data["alpha"],
            data["eta"],
            data["t_end"],
            coeff,
            nonlin,
            allow_supercritical=bool(data.get("allow_supercritical", False)),
            coeff_expr=data["coeff"],
            nonlin_expr=data["nonlin"],
        )
    except ParameterError as exc:
        raise ConfigError(str(exc), field=exc.field) from exc
    except DomainError as exc:
        field = "coeff" if "a(t)" in str(exc) else "nonlin"
        raise ConfigError(str(exc), field=field) from exc

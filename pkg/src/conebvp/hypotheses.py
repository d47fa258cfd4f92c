"""Growth classification of f and the existence-condition engine.

The two growth indicators are the limits of f(u)/u at the ends of the
domain, f0 (u -> 0+) and finf (u -> inf).  Ten conditions H1..H10 gate
eight existence statements:

    Thm3.1  <- H1 (f0 = 0, finf = inf)  or  H2 (f0 = inf, finf = 0)
    Thm4.1  <- H3 (f0 = finf = inf) and H4 (witness rho1, M1)
    Thm4.2  <- H5 (f0 = finf = 0) and H6 (witness rho2, M2)
    Thm5.1  <- H4 and H6 with rho1 != rho2
    Cor5.2  <- H7 (f0 < theta1*Lambda1) and H8 (finf > theta2*Lambda2/gamma)
    Cor5.3  <- H9 (f0 > theta2*Lambda2/gamma) and H10 (finf < theta1*Lambda1)
    Cor5.4  <- H4, H8, H9     (two solutions around rho1)
    Cor5.5  <- H6, H7, H10    (two solutions around rho2)

Undetermined limits leave the affected conditions not-evaluated; a
statement is reported applicable only when every gate is affirmatively
true.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .constants import ConeConstants
from .errors import DomainError, ParameterError
from .problem import BVPProblem

_F0_LADDER = tuple(10.0 ** -k for k in range(1, 11))
_FINF_LADDER = tuple(10.0 ** k for k in range(1, 11))
_SMALL_RATIO = 1e-6
_LARGE_RATIO = 1e6
_AGREE_REL = 0.01
_WITNESS_SAMPLES = 4097
_WITNESS_SLACK = 1e-12

HYPOTHESES = tuple(f"H{k}" for k in range(1, 11))
THEOREMS = ("Thm3.1", "Thm4.1", "Thm4.2", "Thm5.1", "Cor5.2", "Cor5.3", "Cor5.4", "Cor5.5")


class LimitKind(enum.Enum):
    ZERO = "zero"
    FINITE = "finite"
    INFINITE = "infinite"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class LimitEstimate:
    """Classified limit of f(u)/u with the samples that support it.

    ``value`` is set only for FINITE.  ``evidence`` holds (u, f(u)/u)
    pairs; it may be empty when the limit was user-supplied.
    """

    kind: LimitKind
    value: float | None = None
    evidence: tuple = ()

    def __post_init__(self):
        if self.kind is LimitKind.FINITE:
            if self.value is None or not np.isfinite(self.value) or self.value < 0:
                raise ParameterError(
                    f"finite limit needs a finite nonnegative value, got {self.value}"
                )

    @classmethod
    def zero(cls):
        return cls(LimitKind.ZERO)

    @classmethod
    def infinite(cls):
        return cls(LimitKind.INFINITE)

    @classmethod
    def finite(cls, value):
        return cls(LimitKind.FINITE, value=float(value))

    @classmethod
    def undetermined(cls):
        return cls(LimitKind.UNDETERMINED)


@dataclass(frozen=True)
class Witness:
    """User-supplied certificates for the compact-range conditions.

    (rho1, m1) certifies H4: f <= m1*rho1 on [0, rho1] with m1 in
    (0, Lambda1].  (rho2, m2) certifies H6: f >= m2*rho2 on
    [gamma*rho2, rho2] with m2 >= Lambda2.  theta1 in (0, 1] and
    theta2 >= 1 tighten or relax the finite-limit gates H7..H10.
    """

    rho1: float | None = None
    m1: float | None = None
    rho2: float | None = None
    m2: float | None = None
    theta1: float = 1.0
    theta2: float = 1.0

    def __post_init__(self):
        if (self.rho1 is None) != (self.m1 is None):
            raise ParameterError("rho1 and m1 must be supplied together", field="rho1")
        if (self.rho2 is None) != (self.m2 is None):
            raise ParameterError("rho2 and m2 must be supplied together", field="rho2")
        if self.rho1 is not None and not self.rho1 > 0:
            raise ParameterError(f"rho1 must be positive, got {self.rho1}", field="rho1")
        if self.rho2 is not None and not self.rho2 > 0:
            raise ParameterError(f"rho2 must be positive, got {self.rho2}", field="rho2")
        if not 0.0 < self.theta1 <= 1.0:
            raise ParameterError(f"theta1 must lie in (0, 1], got {self.theta1}", field="theta1")
        if not self.theta2 >= 1.0:
            raise ParameterError(f"theta2 must be >= 1, got {self.theta2}", field="theta2")


@dataclass(frozen=True)
class Prediction:
    """At least ``count`` solutions with sup norm inside (lower, upper)."""

    theorem: str
    count: int
    lower: float
    upper: float


@dataclass(frozen=True)
class HypothesisReport:
    f0: LimitEstimate
    finf: LimitEstimate
    holds: dict
    applicable: tuple
    predictions: tuple


def _sample_ratios(problem, ladder):
    """f(u)/u along the ladder; exceptions at a point count as non-finite."""
    pairs = []
    for u in ladder:
        try:
            with np.errstate(all="ignore"):
                val = float(problem.nonlin(u))
        except (OverflowError, ZeroDivisionError, ValueError, FloatingPointError):
            val = float("inf")
        pairs.append((u, val / u if np.isfinite(val) else val))
    return pairs


def _classify_all_finite(ratios):
    last3 = np.array(ratios[-3:])
    mags = np.abs(last3)
    if np.all(mags < _SMALL_RATIO) and mags[0] >= mags[1] >= mags[2] - 1e-300:
        return LimitEstimate(LimitKind.ZERO)
    if np.all(last3 > _LARGE_RATIO) and last3[0] <= last3[1] <= last3[2]:
        return LimitEstimate(LimitKind.INFINITE)
    spread = float(np.max(last3) - np.min(last3))
    scale = max(float(np.max(mags)), 1e-300)
    if spread <= _AGREE_REL * scale:
        return LimitEstimate(LimitKind.FINITE, value=float(ratios[-1]))
    return LimitEstimate(LimitKind.UNDETERMINED)


def estimate_f0(problem: BVPProblem, override: LimitEstimate | None = None) -> LimitEstimate:
    """Classify lim_{u -> 0+} f(u)/u from samples at u = 1e-1 .. 1e-10.

    ZERO when the last three ratios sit below 1e-6 and shrink, INFINITE
    when they sit above 1e6 and grow, FINITE when they agree within 1%,
    UNDETERMINED otherwise.  Non-finite samples raise DomainError.
    """
    if override is not None:
        return override
    pairs = _sample_ratios(problem, _F0_LADDER)
    ratios = [r for _, r in pairs]
    if not all(np.isfinite(ratios)):
        raise DomainError("f returned non-finite values on the u -> 0+ ladder")
    est = _classify_all_finite(ratios)
    return LimitEstimate(est.kind, est.value, evidence=tuple(pairs))


def estimate_finf(problem: BVPProblem, override: LimitEstimate | None = None) -> LimitEstimate:
    """Classify lim_{u -> inf} f(u)/u from samples at u = 1e1 .. 1e10.

    Same rules as estimate_f0, with an overflow guard: when f stops being
    representable partway up the ladder, a plateaued finite prefix (last
    two ratios within 1%) classifies FINITE at the plateau value, and a
    growing prefix classifies INFINITE.
    """
    if override is not None:
        return override
    pairs = _sample_ratios(problem, _FINF_LADDER)
    ratios = [r for _, r in pairs]
    finite = np.isfinite(ratios)
    if np.all(finite):
        est = _classify_all_finite(ratios)
        return LimitEstimate(est.kind, est.value, evidence=tuple(pairs))

    cut = int(np.argmin(finite))
    prefix = ratios[:cut]
    if len(prefix) >= 2:
        a, b = prefix[-2], prefix[-1]
        if abs(b - a) <= _AGREE_REL * max(abs(a), abs(b), 1e-300):
            return LimitEstimate(LimitKind.FINITE, value=float(b), evidence=tuple(pairs))
        tail = prefix[-3:]
        if all(tail[i] <= tail[i + 1] for i in range(len(tail) - 1)):
            return LimitEstimate(LimitKind.INFINITE, evidence=tuple(pairs))
    raise DomainError(
        "f became non-finite on the u -> inf ladder without a classifiable prefix"
    )


def check_H4(problem: BVPProblem, rho1: float, m1: float, consts: ConeConstants) -> bool:
    """f(u) <= m1 * rho1 on [0, rho1], sampled at 4097 uniform points."""
    if not rho1 > 0:
        raise ParameterError(f"rho1 must be positive, got {rho1}", field="rho1")
    if not (0.0 < m1 <= consts.lambda1 * (1.0 + 1e-9) + _WITNESS_SLACK):
        raise ParameterError(
            f"m1 = {m1} outside (0, Lambda1 = {consts.lambda1}]", field="m1"
        )
    us = np.linspace(0.0, rho1, _WITNESS_SAMPLES)
    vals = problem.nonlin_clipped(us)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"f sampled non-finite on [0, {rho1}]")
    return float(np.max(vals)) <= m1 * rho1 + _WITNESS_SLACK


def check_H6(problem: BVPProblem, rho2: float, m2: float, consts: ConeConstants) -> bool:
    """f(u) >= m2 * rho2 on [gamma*rho2, rho2], sampled at 4097 points."""
    if not rho2 > 0:
        raise ParameterError(f"rho2 must be positive, got {rho2}", field="rho2")
    if m2 < consts.lambda2 * (1.0 - 1e-9) - _WITNESS_SLACK:
        raise ParameterError(
            f"m2 = {m2} below Lambda2 = {consts.lambda2}", field="m2"
        )
    us = np.linspace(consts.gamma * rho2, rho2, _WITNESS_SAMPLES)
    vals = problem.nonlin_clipped(us)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"f sampled non-finite on [{consts.gamma * rho2}, {rho2}]")
    return float(np.min(vals)) >= m2 * rho2 - _WITNESS_SLACK


def _is_kind(est, kind):
    """Three-valued test: None when the limit is undetermined."""
    if est.kind is LimitKind.UNDETERMINED:
        return None
    return est.kind is kind


def _all3(*parts):
    if any(p is False for p in parts):
        return False
    if any(p is None for p in parts):
        return None
    return True


def _any3(*parts):
    if any(p is True for p in parts):
        return True
    if any(p is None for p in parts):
        return None
    return False


def classify(
    problem: BVPProblem,
    consts: ConeConstants,
    witness: Witness | None = None,
    f0_override: LimitEstimate | None = None,
    finf_override: LimitEstimate | None = None,
) -> HypothesisReport:
    """Evaluate H1..H10 and list the existence statements whose gates hold.

    Witness-based conditions (H4, H6) stay not-evaluated without the
    corresponding (rho, m) pair; undetermined limits leave their
    conditions not-evaluated rather than false.
    """
    if problem.supercritical:
        raise ParameterError("classification requires 0 < alpha < 1/eta", field="alpha")
    w = witness or Witness()
    f0 = estimate_f0(problem, f0_override)
    finf = estimate_finf(problem, finf_override)

    holds = {}
    holds["H1"] = _all3(_is_kind(f0, LimitKind.ZERO), _is_kind(finf, LimitKind.INFINITE))
    holds["H2"] = _all3(_is_kind(f0, LimitKind.INFINITE), _is_kind(finf, LimitKind.ZERO))
    holds["H3"] = _all3(_is_kind(f0, LimitKind.INFINITE), _is_kind(finf, LimitKind.INFINITE))
    holds["H5"] = _all3(_is_kind(f0, LimitKind.ZERO), _is_kind(finf, LimitKind.ZERO))
    holds["H4"] = (
        check_H4(problem, w.rho1, w.m1, consts) if w.rho1 is not None else None
    )
    holds["H6"] = (
        check_H6(problem, w.rho2, w.m2, consts) if w.rho2 is not None else None
    )

    upper_gate = w.theta1 * consts.lambda1                 # finite-limit cap
    lower_gate = w.theta2 * consts.lambda2 / consts.gamma  # finite-limit floor

    def below_cap(est):
        if est.kind is LimitKind.UNDETERMINED:
            return None
        if est.kind is LimitKind.ZERO:
            return True
        if est.kind is LimitKind.INFINITE:
            return False
        return est.value < upper_gate

    def above_floor(est):
        if est.kind is LimitKind.UNDETERMINED:
            return None
        if est.kind is LimitKind.INFINITE:
            return True
        if est.kind is LimitKind.ZERO:
            return False
        return est.value > lower_gate

    holds["H7"] = below_cap(f0)
    holds["H8"] = above_floor(finf)
    holds["H9"] = above_floor(f0)
    holds["H10"] = below_cap(finf)

    inf_norm = float("inf")
    applicable = []
    predictions = []

    def admit(name, *gates, preds=()):
        if _all3(*gates) is True:
            applicable.append(name)
            predictions.extend(preds)

    admit(
        "Thm3.1",
        _any3(holds["H1"], holds["H2"]),
        preds=[Prediction("Thm3.1", 1, 0.0, inf_norm)],
    )
    if w.rho1 is not None:
        admit(
            "Thm4.1",
            holds["H3"],
            holds["H4"],
            preds=[
                Prediction("Thm4.1", 1, 0.0, w.rho1),
                Prediction("Thm4.1", 1, w.rho1, inf_norm),
            ],
        )
    if w.rho2 is not None:
        admit(
            "Thm4.2",
            holds["H5"],
            holds["H6"],
            preds=[
                Prediction("Thm4.2", 1, 0.0, w.rho2),
                Prediction("Thm4.2", 1, w.rho2, inf_norm),
            ],
        )
    if w.rho1 is not None and w.rho2 is not None and w.rho1 != w.rho2:
        admit(
            "Thm5.1",
            holds["H4"],
            holds["H6"],
            preds=[
                Prediction("Thm5.1", 1, min(w.rho1, w.rho2), max(w.rho1, w.rho2))
            ],
        )
    admit(
        "Cor5.2",
        holds["H7"],
        holds["H8"],
        preds=[Prediction("Cor5.2", 1, 0.0, inf_norm)],
    )
    admit(
        "Cor5.3",
        holds["H9"],
        holds["H10"],
        preds=[Prediction("Cor5.3", 1, 0.0, inf_norm)],
    )
    if w.rho1 is not None:
        admit(
            "Cor5.4",
            holds["H4"],
            holds["H8"],
            holds["H9"],
            preds=[
                Prediction("Cor5.4", 1, 0.0, w.rho1),
                Prediction("Cor5.4", 1, w.rho1, inf_norm),
            ],
        )
    if w.rho2 is not None:
        admit(
            "Cor5.5",
            holds["H6"],
            holds["H7"],
            holds["H10"],
            preds=[
                Prediction("Cor5.5", 1, 0.0, w.rho2),
                Prediction("Cor5.5", 1, w.rho2, inf_norm),
            ],
        )

    return HypothesisReport(
        f0=f0,
        finf=finf,
        holds=holds,
        applicable=tuple(applicable),
        predictions=tuple(predictions),
    )

"""Uniform-grid function carrier and composite-Simpson quadrature.

Everything downstream (the closed-form linear solver, the fixed-point
operator, the shooting method, the verifier) works with functions sampled
on a uniform grid over [0, t_end].  Between nodes a grid function is read
as its piecewise-linear interpolant.  Quadrature over node-aligned spans
uses the node samples directly with composite Simpson (a 3/8 block patches
odd interval counts), which is exact for cubic data and fourth-order for
smooth integrands; the interpolant is consulted only in the sub-interval
stubs of off-node bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, RangeError

# One Simpson panel spans two grid subintervals, so the 1024-panel default
# corresponds to 2048 subintervals.
DEFAULT_PANELS = 1024
DEFAULT_GRID_N = 2 * DEFAULT_PANELS

_NODE_FUZZ = 1e-9


@dataclass(frozen=True)
class GridFunction:
    """A real function sampled at ``n + 1`` equispaced nodes on [0, t_end].

    ``n`` must be even and at least 8 so composite Simpson applies without
    remainder handling.  Instances are immutable (the sample array is made
    read-only) and safe to share across threads.
    """

    t_end: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if not self.t_end > 0:
            raise ParameterError("t_end must be positive", field="t_end")
        n = vals.size - 1
        if n < 8 or n % 2 != 0:
            raise ParameterError(
                f"grid needs an even number of intervals >= 8, got {n}"
            )
        if not np.all(np.isfinite(vals)):
            raise ParameterError("grid values must all be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def h(self) -> float:
        return self.t_end / self.n

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_end, self.n + 1)

    def __call__(self, t):
        """Piecewise-linear interpolation at ``t`` (scalar or array)."""
        return np.interp(t, self.grid(), self.values)

    def norm(self) -> float:
        """Sup norm max |u(t)| over the nodes."""
        return float(np.max(np.abs(self.values)))

    def min_value(self) -> float:
        return float(np.min(self.values))

    def max_value(self) -> float:
        return float(np.max(self.values))

    @classmethod
    def from_callable(cls, g, t_end: float, n: int = DEFAULT_GRID_N) -> "GridFunction":
        t = np.linspace(0.0, t_end, n + 1)
        return cls(t_end, _eval_vectorized(g, t))


def _eval_vectorized(g, x: np.ndarray) -> np.ndarray:
    """Evaluate a callable on an array, falling back to a scalar loop."""
    try:
        vals = np.asarray(g(x), dtype=float)
        if vals.shape == x.shape:
            return vals
    except Exception:
        pass
    return np.array([float(g(xi)) for xi in x], dtype=float)


def _simpson_span_weights(m: int, h: float) -> np.ndarray:
    """Quadrature weights for m consecutive intervals of width h.

    Pure composite Simpson for even m; for odd m >= 3 the last three
    intervals get the 3/8 rule (both rules are exact for cubics); m == 1
    falls back to the trapezoid of the interpolant.
    """
    w = np.zeros(m + 1)
    if m == 0:
        return w
    if m == 1:
        w[:] = h / 2.0
        return w
    if m % 2 == 0:
        w[0] = w[-1] = h / 3.0
        w[1:-1:2] = 4.0 * h / 3.0
        w[2:-1:2] = 2.0 * h / 3.0
        return w
    # odd m >= 3: Simpson on the first m - 3 intervals, 3/8 block on the rest
    w[: m - 2] += _simpson_span_weights(m - 3, h)
    w[m - 3 :] += (3.0 * h / 8.0) * np.array([1.0, 3.0, 3.0, 1.0])
    return w


def quadrature_weights(t_end: float, n: int, lo: float, hi: float) -> np.ndarray:
    """Node weights w with w @ values ~= integral of the carrier on [lo, hi].

    Node-aligned spans use Simpson/3-8 weights on the samples; fractional
    end cells integrate the piecewise-linear interpolant exactly.
    """
    if lo > hi:
        raise RangeError(f"inverted bounds: lo={lo} > hi={hi}")
    fuzz = _NODE_FUZZ * max(1.0, t_end)
    if lo < -fuzz or hi > t_end + fuzz:
        raise RangeError(f"bounds [{lo}, {hi}] exit [0, {t_end}]")
    lo = min(max(lo, 0.0), t_end)
    hi = min(max(hi, 0.0), t_end)

    h = t_end / n
    w = np.zeros(n + 1)
    if hi - lo <= fuzz * h:
        return w

    def snap(x):
        k = x / h
        r = round(k)
        if abs(k - r) <= _NODE_FUZZ * max(1.0, abs(k)):
            return float(r), True
        return k, False

    k0, on0 = snap(lo)
    k1, on1 = snap(hi)
    i0 = int(k0) if on0 else int(np.ceil(k0))
    i1 = int(k1) if on1 else int(np.floor(k1))
    i0 = min(max(i0, 0), n)
    i1 = min(max(i1, 0), n)

    if i0 > i1:
        # both bounds inside one cell: trapezoid of the interpolant
        j = i1
        th0 = k0 - j
        th1 = k1 - j
        half = (hi - lo) / 2.0
        w[j] += half * ((1.0 - th0) + (1.0 - th1))
        w[j + 1] += half * (th0 + th1)
        return w

    if not on0 and i0 > 0:
        j = i0 - 1
        th = k0 - j
        delta = i0 * h - lo
        w[j] += (delta / 2.0) * (1.0 - th)
        w[i0] += (delta / 2.0) * (1.0 + th)
    if not on1 and i1 < n:
        th = k1 - i1
        delta = hi - i1 * h
        w[i1] += (delta / 2.0) * (2.0 - th)
        w[i1 + 1] += (delta / 2.0) * th

    w[i0 : i1 + 1] += _simpson_span_weights(i1 - i0, h)
    return w


def cumulative_simpson(g: np.ndarray, h: float) -> np.ndarray:
    """Prefix integrals of samples g at every node of an even grid.

    Even nodes accumulate plain Simpson panels; each odd node adds the
    parabolic half-panel rule (h/12)(5 g_{2k} + 8 g_{2k+1} - g_{2k+2}),
    exact for quadratics on the panel.
    """
    n = g.size - 1
    if n % 2 != 0:
        raise ParameterError("cumulative Simpson needs an even interval count")
    cum = np.zeros(n + 1)
    panels = (h / 3.0) * (g[0:n-1:2] + 4.0 * g[1:n:2] + g[2:n+1:2])
    cum[2::2] = np.cumsum(panels)
    cum[1::2] = cum[0:n:2] + (h / 12.0) * (5.0 * g[0:n:2] + 8.0 * g[1:n:2] - g[2:n+1:2])
    return cum


def integrate(g, lo: float, hi: float, n: int | None = None) -> float:
    """Composite-Simpson integral of ``g`` over [lo, hi].

    ``g`` may be a callable (evaluated at ``n + 1`` equispaced points,
    ``n`` even, default 2 * DEFAULT_PANELS) or a GridFunction (node-aligned
    rule on its own grid; ``n`` is ignored).  Exact to rounding for
    polynomial integrands of degree <= 3.
    """
    if isinstance(g, GridFunction):
        w = quadrature_weights(g.t_end, g.n, lo, hi)
        return float(w @ g.values)

    if lo > hi:
        raise RangeError(f"inverted bounds: lo={lo} > hi={hi}")
    if n is None:
        n = 2 * DEFAULT_PANELS
    if n <= 0 or n % 2 != 0:
        raise ParameterError(f"subinterval count must be even and positive, got {n}")
    if hi == lo:
        return 0.0
    x = np.linspace(lo, hi, n + 1)
    vals = _eval_vectorized(g, x)
    h = (hi - lo) / n
    return float(
        (h / 3.0)
        * (vals[0] + vals[-1] + 4.0 * np.sum(vals[1:-1:2]) + 2.0 * np.sum(vals[2:-1:2]))
    )

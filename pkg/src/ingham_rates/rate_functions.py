"""Growth/decay rate functions, their compositions, inverses, and bounds.

A growth rate ``M`` is a non-decreasing function on [0, inf) with values in
[1, inf) recording how fast a resolvent grows along the imaginary axis; a
decay rate ``m`` is a non-increasing function on (0, 1] with values in
[1, inf) recording a blow-up near zero.  Two compositions of each drive all
decay estimates:

* finite smoothness ``k``:  ``M_k(R) = M(R) * ((1+R)^2 * M(R))**(1/k)`` and
  ``m_k(r) = m(r) * (m(r)/r)**(1/k)``;
* unlimited smoothness:  ``M_log(R) = M(R) * (log(1+R) + log M(R))`` and
  ``m_log(r) = m(r) * log(1 + m(r)/r)``.

Inverting these compositions at ``c*t`` yields the decay bounds produced by
:func:`make_bound`; :func:`raw_bound_ck` and :func:`raw_bound_smooth`
minimise the un-optimised two-term estimates directly so the closed forms
can be cross-checked against an independent search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

__all__ = [
    "MonotoneFunction",
    "ComposedRate",
    "RateBound",
    "InversionRangeError",
    "SearchBracketError",
    "BoundDomainError",
    "InadmissibleConstantError",
    "VARIANTS",
    "ck_growth_rate",
    "log_growth_rate",
    "ck_decay_rate",
    "log_decay_rate",
    "ck_growth_fn",
    "log_growth_fn",
    "ck_decay_fn",
    "log_decay_fn",
    "invert_monotone",
    "make_bound",
    "raw_bound_ck",
    "raw_bound_smooth",
]

VARIANTS = (
    "infinity_ck",
    "infinity_smooth",
    "zero_ck",
    "zero_smooth",
    "zero_infinity_ck",
    "zero_infinity_smooth",
)

_C_RANGES = {
    "infinity_ck": (0.0, math.inf, 1.0),
    "zero_ck": (0.0, math.inf, 1.0),
    "zero_infinity_ck": (0.0, math.inf, 1.0),
    "infinity_smooth": (0.0, 0.5, 0.45),
    "zero_infinity_smooth": (0.0, 0.5, 0.45),
    "zero_smooth": (0.0, 1.0, 0.9),
}


class InversionRangeError(ValueError):
    """Raised when an inversion target lies outside the function's range."""


class SearchBracketError(RuntimeError):
    """Raised when a minimiser stays pinned at the search boundary."""


class BoundDomainError(ValueError):
    """Raised when a bound is evaluated below its smallest admissible time."""


class InadmissibleConstantError(ValueError):
    """Raised when the constant c lies outside the variant's admissible interval."""


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


@dataclass(frozen=True)
class MonotoneFunction:
    """A growth or decay rate function with family-tagged evaluation.

    ``kind`` is ``"growth"`` (non-decreasing on [0, inf)) or ``"decay"``
    (non-increasing on (0, 1]); values always lie in [1, inf).  Tabulated
    functions extend constantly beyond their knot range; decay tables
    interpolate linearly in the reciprocal coordinate 1/r so that any
    pointwise lower bound of the form 1/r holding at the knots also holds
    between them.
    """

    kind: str
    family: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("growth", "decay"):
            raise ValueError("kind must be 'growth' or 'decay'")
        if self.family not in ("power", "exponential", "constant", "tabulated"):
            raise ValueError("family must be power, exponential, constant, or tabulated")

    def __call__(self, x):
        arr, scalar = _as_array(x)
        if self.kind == "growth":
            if np.any(arr < 0.0):
                raise ValueError("growth rate argument must be non-negative")
        else:
            if np.any(arr <= 0.0) or np.any(arr > 1.0):
                raise ValueError("decay rate argument must lie in (0, 1]")
        with np.errstate(over="ignore"):
            out = np.asarray(self.evaluator(arr), dtype=float)
        return _ret(out, scalar)

    # -- growth families ---------------------------------------------------

    @classmethod
    def power_growth(cls, alpha: float) -> "MonotoneFunction":
        """M(R) = (1 + R)**alpha with alpha > 0."""
        if alpha <= 0.0:
            raise ValueError("power growth exponent must be positive")
        return cls("growth", "power", lambda R: (1.0 + R) ** alpha, f"(1+R)^{alpha:g}")

    @classmethod
    def exponential_growth(cls, alpha: float) -> "MonotoneFunction":
        """M(R) = exp(R**alpha) with alpha > 0."""
        if alpha <= 0.0:
            raise ValueError("exponential growth exponent must be positive")
        return cls("growth", "exponential", lambda R: np.exp(R**alpha), f"exp(R^{alpha:g})")

    @classmethod
    def constant_growth(cls, value: float = 1.0) -> "MonotoneFunction":
        if value < 1.0:
            raise ValueError("constant rate value must be at least 1")
        return cls("growth", "constant", lambda R: np.full_like(R, value), f"{value:g}")

    @classmethod
    def tabulated_growth(cls, knots, values) -> "MonotoneFunction":
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.ndim != 1 or knots.size < 2 or knots.shape != values.shape:
            raise ValueError("tabulated input needs matching 1-d knots and values with >= 2 entries")
        if np.any(knots < 0.0) or np.any(np.diff(knots) <= 0.0):
            raise ValueError("growth knots must be non-negative and strictly increasing")
        if np.any(values < 1.0):
            raise ValueError("rate values must be at least 1")
        if np.any(np.diff(values) < 0.0):
            raise ValueError("tabulated growth values must be non-decreasing")
        return cls(
            "growth", "tabulated",
            lambda R: np.interp(R, knots, values),
            f"table[{knots.size}]",
        )

    # -- decay families ----------------------------------------------------

    @classmethod
    def power_decay(cls, alpha: float) -> "MonotoneFunction":
        """m(r) = r**(-alpha) with alpha > 0."""
        if alpha <= 0.0:
            raise ValueError("power decay exponent must be positive")
        return cls("decay", "power", lambda r: r ** (-alpha), f"r^-{alpha:g}")

    @classmethod
    def exponential_decay(cls, alpha: float) -> "MonotoneFunction":
        """m(r) = exp(r**(-alpha)) with alpha > 0."""
        if alpha <= 0.0:
            raise ValueError("exponential decay exponent must be positive")
        return cls("decay", "exponential", lambda r: np.exp(r ** (-alpha)), f"exp(r^-{alpha:g})")

    @classmethod
    def constant_decay(cls, value: float = 1.0) -> "MonotoneFunction":
        if value < 1.0:
            raise ValueError("constant rate value must be at least 1")
        return cls("decay", "constant", lambda r: np.full_like(r, value), f"{value:g}")

    @classmethod
    def tabulated_decay(cls, knots, values) -> "MonotoneFunction":
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.ndim != 1 or knots.size < 2 or knots.shape != values.shape:
            raise ValueError("tabulated input needs matching 1-d knots and values with >= 2 entries")
        if np.any(knots <= 0.0) or np.any(knots > 1.0) or np.any(np.diff(knots) <= 0.0):
            raise ValueError("decay knots must lie in (0, 1] and be strictly increasing")
        if np.any(values < 1.0):
            raise ValueError("rate values must be at least 1")
        if np.any(np.diff(values) > 0.0):
            raise ValueError("tabulated decay values must be non-increasing")
        # Interpolate in w = 1/r, where the table is non-decreasing.
        w_knots = 1.0 / knots[::-1]
        w_values = values[::-1]
        return cls(
            "decay", "tabulated",
            lambda r: np.interp(1.0 / r, w_knots, w_values),
            f"table[{knots.size}]",
        )


# -- compositions -----------------------------------------------------------


def ck_growth_rate(growth: MonotoneFunction, k: int, R):
    """M_k(R) = M(R) * ((1+R)**2 * M(R))**(1/k)."""
    _require_kind(growth, "growth")
    _require_k(k)
    arr, scalar = _as_array(R)
    M = np.asarray(growth(arr), dtype=float)
    with np.errstate(over="ignore"):
        out = M * np.exp((2.0 * np.log1p(arr) + np.log(M)) / k)
    return _ret(out, scalar)


def log_growth_rate(growth: MonotoneFunction, R):
    """M_log(R) = M(R) * (log(1+R) + log M(R))."""
    _require_kind(growth, "growth")
    arr, scalar = _as_array(R)
    M = np.asarray(growth(arr), dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        out = M * (np.log1p(arr) + np.log(M))
    return _ret(out, scalar)


def ck_decay_rate(decay: MonotoneFunction, k: int, r):
    """m_k(r) = m(r) * (m(r)/r)**(1/k)."""
    _require_kind(decay, "decay")
    _require_k(k)
    arr, scalar = _as_array(r)
    m = np.asarray(decay(arr), dtype=float)
    with np.errstate(over="ignore"):
        out = m * np.exp((np.log(m) - np.log(arr)) / k)
    return _ret(out, scalar)


def log_decay_rate(decay: MonotoneFunction, r):
    """m_log(r) = m(r) * log(1 + m(r)/r)."""
    _require_kind(decay, "decay")
    arr, scalar = _as_array(r)
    m = np.asarray(decay(arr), dtype=float)
    with np.errstate(over="ignore"):
        out = m * np.log1p(m / arr)
    return _ret(out, scalar)


def _require_kind(fn, kind: str) -> None:
    if getattr(fn, "kind", None) != kind:
        raise ValueError(f"expected a {kind} rate function")


def _require_k(k) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("smoothness order k must be an integer >= 1")


@dataclass(frozen=True)
class ComposedRate:
    """A ck- or log-composition of a rate function, usable for inversion.

    Strictly monotone even when the source is tabulated with flat
    stretches, because the composition mixes in log(1+R) (growth) or 1/r
    (decay).
    """

    kind: str
    transform: str
    source: MonotoneFunction
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.transform not in ("ck", "log"):
            raise ValueError("transform must be 'ck' or 'log'")
        if self.transform == "ck":
            _require_k(self.k)

    def __call__(self, x):
        if self.kind == "growth":
            if self.transform == "ck":
                return ck_growth_rate(self.source, self.k, x)
            return log_growth_rate(self.source, x)
        if self.transform == "ck":
            return ck_decay_rate(self.source, self.k, x)
        return log_decay_rate(self.source, x)


def ck_growth_fn(growth: MonotoneFunction, k: int) -> ComposedRate:
    _require_kind(growth, "growth")
    return ComposedRate("growth", "ck", growth, k)


def log_growth_fn(growth: MonotoneFunction) -> ComposedRate:
    _require_kind(growth, "growth")
    return ComposedRate("growth", "log", growth)


def ck_decay_fn(decay: MonotoneFunction, k: int) -> ComposedRate:
    _require_kind(decay, "decay")
    return ComposedRate("decay", "ck", decay, k)


def log_decay_fn(decay: MonotoneFunction) -> ComposedRate:
    _require_kind(decay, "decay")
    return ComposedRate("decay", "log", decay)


# -- inversion ---------------------------------------------------------------


def invert_monotone(f, y: float, tol_rel: float = 1e-10) -> float:
    """Solve f(x) = y for a monotone rate function or composition.

    Growth functions are solved on [0, inf) by geometric bracket expansion
    followed by bisection in log(1+x); decay functions on (0, 1] by the
    mirrored procedure in log(1/x).  Iteration stops when
    ``|f(x) - y| <= tol_rel * max(1, |y|)``.  Targets outside the attained
    range raise :class:`InversionRangeError` reporting the range edge.
    """
    kind = getattr(f, "kind", None)
    if kind not in ("growth", "decay"):
        raise ValueError("f must be a growth or decay rate (has .kind)")
    if not math.isfinite(y):
        raise ValueError("inversion target must be finite")
    slack = tol_rel * max(1.0, abs(y))

    if kind == "growth":
        edge = float(f(0.0))
        if y < edge - slack:
            raise InversionRangeError(f"target {y!r} is below the range minimum f(0) = {edge!r}")
        if abs(y - edge) <= slack:
            return 0.0
        lo, hi = 0.0, 1.0
        for _ in range(1200):
            fhi = float(f(hi))
            if fhi >= y:
                break
            lo, hi = hi, hi * 2.0
            if hi > 1e308:
                raise InversionRangeError(
                    f"target {y!r} exceeds the attained range (f({lo!r}) = {fhi!r})"
                )
        else:
            raise InversionRangeError(
                f"target {y!r} exceeds the attained range (f({lo!r}) = {float(f(lo))!r})"
            )
        u_lo, u_hi = math.log1p(lo), math.log1p(hi)
        increasing = True
    else:
        edge = float(f(1.0))
        if y < edge - slack:
            raise InversionRangeError(f"target {y!r} is below the range minimum f(1) = {edge!r}")
        if abs(y - edge) <= slack:
            return 1.0
        hi, lo = 1.0, 0.5
        for _ in range(1200):
            flo = float(f(lo))
            if flo >= y:
                break
            hi, lo = lo, lo * 0.5
            if lo < 1e-300:
                raise InversionRangeError(
                    f"target {y!r} exceeds the attained range (f({hi!r}) = {flo!r})"
                )
        else:
            raise InversionRangeError(
                f"target {y!r} exceeds the attained range (f({hi!r}) = {float(f(hi))!r})"
            )
        # Work in v = log(1/x); f is increasing in v.
        u_lo, u_hi = math.log(1.0 / hi), math.log(1.0 / lo)
        increasing = True

    x = None
    for _ in range(600):
        u_mid = 0.5 * (u_lo + u_hi)
        x = math.expm1(u_mid) if kind == "growth" else math.exp(-u_mid)
        fx = float(f(x))
        if abs(fx - y) <= slack:
            return x
        if (fx < y) == increasing:
            u_lo = u_mid
        else:
            u_hi = u_mid
    raise InversionRangeError(
        f"bisection did not reach |f(x) - y| <= {slack!r}; residual {abs(float(f(x)) - y)!r}"
    )


# -- bounds -------------------------------------------------------------------


def _admissible_c(variant: str, c: Optional[float]) -> float:
    lo, hi, default = _C_RANGES[variant]
    if c is None:
        return default
    if not (lo < c < hi):
        interval = "(0, inf)" if math.isinf(hi) else f"(0, {hi:g})".replace("0.5", "1/2")
        raise InadmissibleConstantError(
            f"c={c!r} outside admissible interval {interval} for variant {variant}"
        )
    return float(c)


@dataclass(frozen=True)
class RateBound:
    """A decay bound t -> value built from rate-function inversions.

    Evaluation below ``t_min`` (the smallest t with c*t inside the range of
    every composition being inverted, anchored at the domain edge R = 1 or
    r = 1) raises :class:`BoundDomainError`.
    """

    variant: str
    c: float
    k: Optional[int]
    growth: Optional[MonotoneFunction]
    decay: Optional[MonotoneFunction]
    t_min: float
    _growth_fn: Optional[ComposedRate] = field(repr=False, default=None)
    _decay_fn: Optional[ComposedRate] = field(repr=False, default=None)

    def __call__(self, t):
        arr, scalar = _as_array(t)
        if np.any(arr < self.t_min * (1.0 - 1e-12)):
            raise BoundDomainError(
                f"bound for {self.variant} is defined for t >= {self.t_min!r}"
            )
        flat = np.atleast_1d(arr)
        out = np.empty_like(flat)
        for i, ti in enumerate(flat):
            out[i] = self._eval_scalar(float(ti))
        out = out.reshape(arr.shape)
        return _ret(out, scalar)

    def _eval_scalar(self, t: float) -> float:
        y = self.c * t
        total = 0.0
        if self._decay_fn is not None:
            total += invert_monotone(self._decay_fn, y)
        if self._growth_fn is not None:
            total += 1.0 / invert_monotone(self._growth_fn, y)
        if self.variant in ("zero_ck", "zero_smooth", "zero_infinity_smooth"):
            total += 1.0 / t
        return total


def make_bound(
    variant: str,
    growth: Optional[MonotoneFunction] = None,
    decay: Optional[MonotoneFunction] = None,
    c: Optional[float] = None,
    k: Optional[int] = None,
) -> RateBound:
    """Build the decay bound for one of the six estimate variants.

    ``infinity_*`` variants need ``growth``; ``zero_*`` variants need
    ``decay``; ``zero_infinity_*`` need both.  ``k`` is required (default 1)
    for the finite-smoothness variants and must be omitted otherwise.  The
    admissible interval for ``c`` is (0, inf) for finite smoothness,
    (0, 1/2) for ``infinity_smooth`` and ``zero_infinity_smooth``, and
    (0, 1) for ``zero_smooth``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    c_val = _admissible_c(variant, c)
    is_ck = variant.endswith("_ck")
    if is_ck:
        k_val = 1 if k is None else k
        _require_k(k_val)
    else:
        if k is not None:
            raise ValueError("k applies only to finite-smoothness (ck) variants")
        k_val = None

    needs_growth = variant.startswith(("infinity", "zero_infinity"))
    needs_decay = variant.startswith(("zero",))
    growth_fn = decay_fn = None
    if needs_growth:
        if growth is None:
            raise ValueError(f"variant {variant} requires a growth rate function")
        _require_kind(growth, "growth")
        growth_fn = ck_growth_fn(growth, k_val) if is_ck else log_growth_fn(growth)
    if needs_decay:
        if decay is None:
            raise ValueError(f"variant {variant} requires a decay rate function")
        _require_kind(decay, "decay")
        decay_fn = ck_decay_fn(decay, k_val) if is_ck else log_decay_fn(decay)

    parts = []
    if growth_fn is not None:
        parts.append(float(growth_fn(1.0)) / c_val)
    if decay_fn is not None:
        parts.append(float(decay_fn(1.0)) / c_val)
    t_min = max(parts)

    return RateBound(
        variant=variant,
        c=c_val,
        k=k_val,
        growth=growth if needs_growth else None,
        decay=decay if needs_decay else None,
        t_min=t_min,
        _growth_fn=growth_fn,
        _decay_fn=decay_fn,
    )


# -- raw two-term bounds ------------------------------------------------------


def _minimise_log_grid(
    logf: Callable[[float], float],
    u_max_initial: float,
    *,
    points: int = 400,
    rel_tol: float = 1e-6,
    max_doublings: int = 60,
) -> tuple[float, float]:
    """Minimise exp(logf(u)) for u = log R in [0, u_max] with golden refinement.

    Returns (min value, argmin R).  The upper edge doubles (in R) whenever
    the grid minimum lands on it; persistent boundary minima raise
    :class:`SearchBracketError`.
    """
    u_max = u_max_initial
    for _ in range(max_doublings):
        grid = np.linspace(0.0, u_max, points)
        vals = np.array([logf(u) for u in grid])
        idx = int(np.nanargmin(vals))
        if idx < points - 1 or u_max >= math.log(1e250):
            break
        u_max += math.log(2.0)
    else:
        raise SearchBracketError(
            f"minimiser pinned at the search boundary R = {math.exp(u_max):.6g}"
        )
    if idx == points - 1 and u_max >= math.log(1e250):
        raise SearchBracketError(
            f"minimiser pinned at the search boundary R = {math.exp(u_max):.6g}"
        )

    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, points - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = logf(x1), logf(x2)
    while (b - a) > rel_tol * max(1.0, abs(0.5 * (a + b))):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = logf(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = logf(x2)
    u_best = x1 if f1 <= f2 else x2
    return math.exp(logf(u_best)), math.exp(u_best)


def _search_radius(growth: MonotoneFunction, composed: ComposedRate, y: float) -> float:
    try:
        r_star = invert_monotone(composed, y)
    except InversionRangeError:
        r_star = 1e6
    return min(max(1e6, 1e3 * max(r_star, 1.0)), 1e250)


def raw_bound_ck(growth: MonotoneFunction, k: int, c: float, t: float) -> tuple[float, float]:
    """Minimise 1/R + R * M(R)**(k+1) / t**k over R >= 1.

    Returns (value, argmin).  The search scans a 400-point logarithmic grid
    up to ``max(1e6, 1e3 * Mk^{-1}(c*t))`` and refines with golden-section
    iterations to relative tolerance 1e-6 in log R.
    """
    _require_kind(growth, "growth")
    _require_k(k)
    if c <= 0.0 or t <= 0.0:
        raise ValueError("c and t must be positive")

    log_t = math.log(t)

    def logf(u: float) -> float:
        R = math.exp(u)
        M = float(growth(R))
        if not math.isfinite(M):
            return math.inf
        return float(np.logaddexp(-u, u + (k + 1) * math.log(M) - k * log_t))

    u_max = math.log(_search_radius(growth, ck_growth_fn(growth, k), c * t))
    return _minimise_log_grid(logf, u_max)


def raw_bound_smooth(growth: MonotoneFunction, c: float, t: float) -> tuple[float, float]:
    """Minimise (1/R) * ((1+R)**2 * M(R)**2 * exp(-2*c*t/M(R)) + 1) over R >= 1.

    Returns (value, argmin); same grid-scan plus golden-section refinement
    as :func:`raw_bound_ck`, evaluated in log space so the exponentially
    small terms do not underflow prematurely.
    """
    _require_kind(growth, "growth")
    if c <= 0.0 or t <= 0.0:
        raise ValueError("c and t must be positive")

    def logf(u: float) -> float:
        R = math.exp(u)
        M = float(growth(R))
        if not math.isfinite(M):
            return math.inf
        big = 2.0 * math.log1p(R) + 2.0 * math.log(M) - 2.0 * c * t / M
        return float(np.logaddexp(big, 0.0)) - u

    u_max = math.log(_search_radius(growth, log_growth_fn(growth), c * t))
    return _minimise_log_grid(logf, u_max)

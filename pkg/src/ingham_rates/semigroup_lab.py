"""Diagonal operator models for semigroup decay experiments.

A :class:`DiagonalOperator` is a sequence of eigenvalues in the open left
half-plane, generating the multiplication semigroup ``(e^{lambda_n t} x_n)``
on a sup-normed sequence space.  Everything of interest is computable per
mode: orbit norms are maxima of ``|w_n| e^{Re lambda_n t}`` over the mode
weights of the chosen orbit, resolvent norms are reciprocal distances from
``i s`` to the spectrum, and boundary functions are rational in ``s``.

Two eigenvalue families model the standard decay regimes:

* ``cluster_infinity(alpha, N)``: ``lambda_n = -n^-alpha + i n`` -- the
  spectrum approaches the imaginary axis at high frequencies, so resolvent
  growth at infinity governs the decay of smooth orbits;
* ``cluster_zero(beta, N)``: ``lambda_n = -n^-beta + i/n`` -- the spectrum
  degenerates towards s = 0 and the singularity of the resolvent there
  governs the decay.

Resolvent envelopes are tabulated running maxima over a grid refining every
ordinate gap; growth envelopes dominate the true supremum everywhere
because the sup over [0, R] only increases at the sampled peaks, and decay
envelopes interpolate in 1/r so the lower clamp max(1, 1/r) holds between
knots as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .rate_functions import MonotoneFunction

__all__ = [
    "DiagonalOperator",
    "Scenario",
    "ORBIT_KINDS",
    "single_mode",
    "cluster_infinity",
    "cluster_zero",
    "mixed_cluster",
    "mode_weights",
    "orbit_values",
    "orbit_norm",
    "orbit_argmax",
    "resolvent_norm",
    "boundary_function",
    "resolvent_envelope_growth",
    "resolvent_envelope_decay",
]

ORBIT_KINDS = ("ainv", "ar_omega", "ar_omega_sq", "vector")


@dataclass(frozen=True, eq=False)
class DiagonalOperator:
    """Eigenvalues of a diagonal generator, all strictly in Re < 0.

    ``family_index`` carries each mode's index within its generating
    family and ``family_size`` the family's mode count; both default to a
    single family numbered 1..N.  They let experiments detect when a
    maximising mode drifts into the truncated half of a family.
    """

    eigenvalues: np.ndarray
    label: str = ""
    family_index: np.ndarray = field(default=None)
    family_size: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        eig = np.atleast_1d(np.asarray(self.eigenvalues, dtype=complex))
        if eig.size == 0:
            raise ValueError("operator needs at least one eigenvalue")
        if not np.all(np.isfinite(eig)):
            raise ValueError("eigenvalues must be finite")
        if np.any(eig.real >= 0.0):
            raise ValueError("eigenvalues must have strictly negative real part")
        object.__setattr__(self, "eigenvalues", eig)
        if self.family_index is None:
            object.__setattr__(self, "family_index", np.arange(1, eig.size + 1))
        else:
            object.__setattr__(self, "family_index", np.asarray(self.family_index, dtype=int))
        if self.family_size is None:
            object.__setattr__(self, "family_size", np.full(eig.size, eig.size, dtype=int))
        else:
            object.__setattr__(self, "family_size", np.asarray(self.family_size, dtype=int))
        if self.family_index.shape != eig.shape or self.family_size.shape != eig.shape:
            raise ValueError("family bookkeeping must match the eigenvalue count")

    @property
    def size(self) -> int:
        return int(self.eigenvalues.size)


def single_mode(eigenvalue: complex) -> DiagonalOperator:
    """Operator with one eigenvalue; the simplest oracle model."""
    return DiagonalOperator(np.array([eigenvalue], dtype=complex),
                            label=f"single_mode({eigenvalue})")


def cluster_infinity(alpha: float, n_modes: int) -> DiagonalOperator:
    """lambda_n = -n**(-alpha) + i*n for n = 1..n_modes, with alpha > 0."""
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    n = np.arange(1, n_modes + 1, dtype=float)
    return DiagonalOperator(-(n ** (-alpha)) + 1j * n,
                            label=f"cluster_infinity(alpha={alpha:g}, N={n_modes})")


def cluster_zero(beta: float, n_modes: int) -> DiagonalOperator:
    """lambda_n = -n**(-beta) + i/n for n = 1..n_modes, with beta > 1."""
    if beta <= 1.0:
        raise ValueError("beta must exceed 1")
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    n = np.arange(1, n_modes + 1, dtype=float)
    return DiagonalOperator(-(n ** (-beta)) + 1j / n,
                            label=f"cluster_zero(beta={beta:g}, N={n_modes})")


def mixed_cluster(alpha: float, beta: float, n_infinity: int, n_zero: int) -> DiagonalOperator:
    """Union of a cluster_infinity and a cluster_zero family."""
    a = cluster_infinity(alpha, n_infinity)
    b = cluster_zero(beta, n_zero)
    return DiagonalOperator(
        np.concatenate([a.eigenvalues, b.eigenvalues]),
        label=f"mixed(alpha={alpha:g}, beta={beta:g}, N={n_infinity}+{n_zero})",
        family_index=np.concatenate([a.family_index, b.family_index]),
        family_size=np.concatenate([a.family_size, b.family_size]),
    )


@dataclass(frozen=True, eq=False)
class Scenario:
    """An operator together with the orbit whose decay is studied.

    Orbit kinds: ``ainv`` follows ``T(t) A^{-1}``, ``ar_omega`` follows
    ``T(t) A R(omega, A)``, ``ar_omega_sq`` follows ``T(t) A R(omega, A)^2``
    (all operator norms), and ``vector`` follows ``T(t) x`` for the stored
    vector ``x`` (default: all ones, unit sup-norm).
    """

    operator: DiagonalOperator
    orbit_kind: str
    omega: float = 1.0
    x: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.orbit_kind not in ORBIT_KINDS:
            raise ValueError(f"orbit_kind must be one of {ORBIT_KINDS}")
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")
        if self.x is None:
            object.__setattr__(self, "x", np.ones(self.operator.size, dtype=complex))
        else:
            x = np.asarray(self.x, dtype=complex)
            if x.shape != self.operator.eigenvalues.shape:
                raise ValueError("x must have one component per eigenvalue")
            if not np.all(np.isfinite(x)):
                raise ValueError("x must be finite")
            object.__setattr__(self, "x", x)


def mode_weights(scenario: Scenario) -> np.ndarray:
    """Componentwise weights w_n with orbit f_n(t) = w_n * exp(lambda_n t)."""
    lam = scenario.operator.eigenvalues
    x = scenario.x
    if scenario.orbit_kind == "ainv":
        return x / lam
    if scenario.orbit_kind == "ar_omega":
        return x * lam / (scenario.omega - lam)
    if scenario.orbit_kind == "ar_omega_sq":
        return x * lam / (scenario.omega - lam) ** 2
    return x.copy()


def orbit_values(scenario: Scenario, t: float) -> np.ndarray:
    """The orbit vector at time t, componentwise w_n * exp(lambda_n t)."""
    lam = scenario.operator.eigenvalues
    return mode_weights(scenario) * np.exp(lam * float(t))


def _orbit_amplitudes(scenario: Scenario) -> np.ndarray:
    """|w_n| with x replaced by ones for the operator-norm orbit kinds."""
    lam = scenario.operator.eigenvalues
    if scenario.orbit_kind == "ainv":
        return 1.0 / np.abs(lam)
    if scenario.orbit_kind == "ar_omega":
        return np.abs(lam / (scenario.omega - lam))
    if scenario.orbit_kind == "ar_omega_sq":
        return np.abs(lam / (scenario.omega - lam) ** 2)
    return np.abs(scenario.x)


def orbit_norm(scenario: Scenario, t):
    """Sup-norm decay profile at time(s) t.

    For the operator orbit kinds this is the operator norm
    ``max_n |coef_n| exp(Re lambda_n t)`` (independent of x); for
    ``vector`` it is the sup-norm of the componentwise orbit.
    """
    amps = _orbit_amplitudes(scenario)
    sigma = scenario.operator.eigenvalues.real
    arr = np.asarray(t, dtype=float)
    vals = np.max(amps[None, :] * np.exp(np.outer(np.atleast_1d(arr), sigma)), axis=1)
    return float(vals[0]) if arr.ndim == 0 else vals.reshape(arr.shape)


def orbit_argmax(scenario: Scenario, t: float) -> tuple[float, int, int]:
    """Orbit norm at t with the maximising mode's family index and size."""
    amps = _orbit_amplitudes(scenario)
    sigma = scenario.operator.eigenvalues.real
    profile = amps * np.exp(sigma * float(t))
    idx = int(np.argmax(profile))
    return (float(profile[idx]),
            int(scenario.operator.family_index[idx]),
            int(scenario.operator.family_size[idx]))


def resolvent_norm(operator: DiagonalOperator, s: float) -> float:
    """Norm of the resolvent at the imaginary-axis point i*s."""
    lam = operator.eigenvalues
    dist = np.min(np.abs(1j * float(s) - lam))
    if dist == 0.0:
        raise ValueError("i*s is an eigenvalue; the resolvent is unbounded")
    return float(1.0 / dist)


def boundary_function(scenario: Scenario, s: float, derivative: int = 0) -> np.ndarray:
    """Componentwise boundary values of the Laplace transform on Re = 0.

    The orbit ``f(t) = w exp(lambda t)`` for t >= 0 has transform
    ``w / (i s - lambda)``, so the derivative of order j is
    ``(-i)^j j! w / (i s - lambda)^{j+1}``.
    """
    if derivative < 0:
        raise ValueError("derivative order must be non-negative")
    lam = scenario.operator.eigenvalues
    w = mode_weights(scenario)
    denom = (1j * float(s) - lam) ** (derivative + 1)
    return ((-1j) ** derivative) * math.factorial(derivative) * w / denom


# -- resolvent envelopes ------------------------------------------------------


def _nearest_distance(operator: DiagonalOperator, s_values: np.ndarray) -> np.ndarray:
    """min_n |i s - lambda_n| for many s at once.

    Eigenvalues are sorted by ordinate; only a fixed window of
    nearest-ordinate candidates can realise the minimum because a mode
    whose ordinate is several gaps away is farther than the in-gap
    candidates regardless of its real part.
    """
    lam = operator.eigenvalues
    order = np.argsort(lam.imag)
    lam_sorted = lam[order]
    taus = lam_sorted.imag
    idx = np.searchsorted(taus, s_values)
    best = np.full(s_values.shape, np.inf)
    for off in range(-4, 5):
        j = np.clip(idx + off, 0, lam_sorted.size - 1)
        cand = np.abs(1j * s_values - lam_sorted[j])
        best = np.minimum(best, cand)
    return best


def _sample_points(anchors: np.ndarray, lo: float, hi: float,
                   extra: Optional[np.ndarray], per_gap: int = 10) -> np.ndarray:
    """Ordinates, gap midpoints, and a uniform per-gap refinement in [lo, hi]."""
    pts = [np.array([lo, hi])]
    anchors = np.unique(anchors[(anchors >= lo) & (anchors <= hi)])
    if anchors.size:
        pts.append(anchors)
    edges = np.unique(np.concatenate([[lo], anchors, [hi]]))
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            pts.append(np.linspace(a, b, per_gap + 2)[1:-1])
            pts.append(np.array([0.5 * (a + b)]))
    if extra is not None:
        extra = np.asarray(extra, dtype=float)
        pts.append(extra[(extra >= lo) & (extra <= hi)])
    return np.unique(np.concatenate(pts))


def resolvent_envelope_growth(
    operator: DiagonalOperator,
    r_grid: Optional[np.ndarray] = None,
    s_min: float = 0.0,
) -> MonotoneFunction:
    """Tabulated non-decreasing majorant of sup_{s_min <= |s| <= R} ||R(i s)||.

    Sample abscissae are the eigenvalue ordinates, gap midpoints, ten
    uniform points per gap, and any requested grid; both signs of s are
    evaluated.  Values are running maxima clamped below at 1 and extend
    constantly beyond the last knot.  ``s_min`` restricts the envelope to
    frequencies |s| >= s_min (used when the low-frequency singularity is
    handled by a separate decay envelope).
    """
    taus = np.abs(operator.eigenvalues.imag)
    hi = float(max(taus.max() + 1.0, 1.0, s_min + 1.0))
    if r_grid is not None:
        hi = max(hi, float(np.max(r_grid)))
    pts = _sample_points(taus, float(s_min), hi, r_grid)
    norms = np.maximum(
        1.0 / _nearest_distance(operator, pts),
        1.0 / _nearest_distance(operator, -pts),
    )
    values = np.maximum(np.maximum.accumulate(norms), 1.0)
    return MonotoneFunction.tabulated_growth(pts, values)


def resolvent_envelope_decay(
    operator: DiagonalOperator,
    r_grid: Optional[np.ndarray] = None,
) -> MonotoneFunction:
    """Tabulated non-increasing majorant of sup_{r <= |s| <= 1} ||R(i s)||.

    Built like the growth envelope but accumulated from r = 1 downwards and
    clamped below at max(1, 1/r); the reciprocal-coordinate interpolation
    of decay tables keeps the clamp valid between knots.
    """
    taus = np.abs(operator.eigenvalues.imag)
    inner = taus[(taus > 0.0) & (taus <= 1.0)]
    lo = float(inner.min() / 2.0) if inner.size else 1e-3
    if r_grid is not None:
        lo = min(lo, float(np.min(r_grid)))
    if not (0.0 < lo < 1.0):
        raise ValueError("decay envelope needs a positive inner radius below 1")
    pts = _sample_points(taus, lo, 1.0, r_grid)
    norms = np.maximum(
        1.0 / _nearest_distance(operator, pts),
        1.0 / _nearest_distance(operator, -pts),
    )
    values = np.maximum.accumulate(norms[::-1])[::-1]
    values = np.maximum(values, np.maximum(1.0, 1.0 / pts))
    return MonotoneFunction.tabulated_decay(pts, values)

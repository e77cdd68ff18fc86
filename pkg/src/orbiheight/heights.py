"""Closed-form normalized heights of weighted log pairs on the projective line.

The boundary divisor sits at {0, 1, infinity} with weights w = (w1, w2, w3)
in [0, 1]^3, and V = w1 + w2 + w3 - 2 is the degree of the log canonical
bundle.  Inside the stability region (0 <= w_i <= 1, w_i <= V/2 + 1) the
height of the log canonical bundle (V > 0) or its dual (V < 0), normalized by
the volume-1 Kahler-Einstein metric, is given in closed form through

    gamma(a, b) = integral over [a, b] of ln(Gamma(x)/Gamma(1-x)) dx,

evaluated via the Hurwitz-zeta primitive in :mod:`orbiheight.specfun`.  The
wall V = 0 is excluded from the two closed-form branches; its value is the
log-Calabi-Yau normalization integral (:func:`faltings_log_cy`), which the
closed forms approach as one-sided limits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .specfun import EvalResult, digamma, log_gamma, loggamma_ratio_integral

__all__ = [
    "WeightVector",
    "RamIndices",
    "volume",
    "k_semistable",
    "h_can_positive",
    "h_can_fano",
    "h_pet",
    "h_pi_normalized",
    "four_point_h_can",
    "shift_by_a",
    "fujita_height_pn",
    "faltings_log_cy",
    "bound_linear_fano",
    "bound_semiample",
]

_WALL_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Weights of the divisor components at {0, 1, infinity}."""

    w: tuple[float, float, float]

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        if len(w) != 3:
            raise ValueError("a weight vector has exactly three components")
        for x in w:
            if not (0.0 <= x <= 1.0):
                raise ValueError(f"weights must lie in [0, 1], got {x!r}")
        object.__setattr__(self, "w", w)

    @property
    def volume(self) -> float:
        return math.fsum(self.w) - 2.0

    def __iter__(self):
        return iter(self.w)


@dataclass(frozen=True)
class RamIndices:
    """Ramification indices m_i in {1, 2, ...} or infinity; weight 1 - 1/m."""

    m: tuple[float, float, float]

    def __post_init__(self):
        m = tuple(self.m)
        for x in m:
            if x != math.inf and (int(x) != x or x < 1):
                raise ValueError(f"ramification index must be a positive integer or inf, got {x!r}")
        object.__setattr__(self, "m", m)

    def weights(self) -> WeightVector:
        return WeightVector(tuple(1.0 if x == math.inf else 1.0 - 1.0 / x for x in self.m))


def _weights(w) -> WeightVector:
    if isinstance(w, WeightVector):
        return w
    if isinstance(w, RamIndices):
        return w.weights()
    return WeightVector(tuple(w))


def volume(w) -> float:
    """Degree V = w1 + w2 + w3 - 2 of the log canonical bundle."""
    return _weights(w).volume


def k_semistable(w) -> bool:
    """0 <= w_i <= 1 and w_i <= V/2 + 1 (the latter is automatic once V >= 0)."""
    try:
        wv = _weights(w)
    except ValueError:
        return False
    bound = wv.volume / 2.0 + 1.0
    return all(x <= bound + _WALL_TOL for x in wv)


def h_can_positive(w) -> EvalResult:
    """Normalized canonical height of the log canonical bundle, V > 0.

    f(w) = (1 - ln(pi V/2))/2 - [gamma(0, V/2) - sum_i gamma(w_i - V/2, w_i)] / V.
    Cusp weights w_i = 1 are allowed.
    """
    wv = _weights(w)
    v = wv.volume
    if v <= _WALL_TOL:
        raise ValueError(f"h_can_positive requires V > 0, got V = {v!r}")
    if not k_semistable(wv):
        raise ValueError(f"weights {wv.w} are not K-semistable")
    g0 = loggamma_ratio_integral(0.0, v / 2.0)
    gi = [loggamma_ratio_integral(x - v / 2.0, x) for x in wv]
    value = 0.5 * (1.0 - math.log(math.pi * v / 2.0)) - (g0.value - sum(g.value for g in gi)) / v
    err = (g0.err + sum(g.err for g in gi)) / v + 4e-16
    return EvalResult(value, err)


def h_can_fano(w) -> EvalResult:
    """Normalized canonical height of the anti-log-canonical bundle, V < 0.

    (1 + ln(pi/(-V/2)))/2 + [gamma(0, -V/2) + sum_i gamma(w_i, w_i - V/2)] / V.
    """
    wv = _weights(w)
    v = wv.volume
    if v >= -_WALL_TOL:
        raise ValueError(f"h_can_fano requires V < 0, got V = {v!r}")
    if not k_semistable(wv):
        raise ValueError(f"weights {wv.w} are not K-semistable")
    g0 = loggamma_ratio_integral(0.0, -v / 2.0)
    gi = [loggamma_ratio_integral(x, x - v / 2.0) for x in wv]
    value = 0.5 * (1.0 + math.log(math.pi / (-v / 2.0))) + (g0.value + sum(g.value for g in gi)) / v
    err = (g0.err + sum(g.err for g in gi)) / (-v) + 4e-16
    return EvalResult(value, err)


def h_pet(w) -> EvalResult:
    """Height in the Petersson normalization (metric volume pi V/2), V > 0.

    Equals h_can_positive + (1/2) ln(pi V/2); the gamma terms are unchanged.
    """
    wv = _weights(w)
    h = h_can_positive(wv)
    return EvalResult(h.value + 0.5 * math.log(math.pi * wv.volume / 2.0), h.err)


def h_pi_normalized(w) -> EvalResult:
    """Height wrt the Kahler-Einstein metric scaled to total volume pi.

    Shifts the volume-1 value by (1/2) ln pi with the sign of the polarity:
    + for the log canonical side (V > 0), - for the Fano side (V < 0).
    """
    wv = _weights(w)
    v = wv.volume
    if v > _WALL_TOL:
        h = h_can_positive(wv)
        return EvalResult(h.value + 0.5 * math.log(math.pi), h.err)
    if v < -_WALL_TOL:
        h = h_can_fano(wv)
        return EvalResult(h.value - 0.5 * math.log(math.pi), h.err)
    raise ValueError("pi-normalized height is undefined at V = 0")


def four_point_h_can(w0: float, w1: float, winf: float) -> EvalResult:
    """Canonical height for the divisor at {0, 1, -1, infinity} with weights
    (w0, w1, w1, winf).

    The degree-two substitution y = x^2 folds the pair {1, -1} together,
    reducing to the three-point weights (1 + (w0-1)/2, w1, 1 + (winf-1)/2)
    at the cost of an extra (1/2) ln 2.
    """
    reduced = WeightVector((1.0 + (w0 - 1.0) / 2.0, w1, 1.0 + (winf - 1.0) / 2.0))
    h = h_can_positive(reduced)
    return EvalResult(h.value + 0.5 * math.log(2.0), h.err)


def shift_by_a(h: float, w, a: int) -> float:
    """Height after moving the middle divisor point from 1 to an integer a >= 1.

    The change of variables z -> a z rescales the period integrand and shifts
    the height by -(sum_i w_i / 2 - (w1 + w2)) ln a, where w1, w2 are the
    weights at the two finite points.
    """
    if a < 1 or int(a) != a:
        raise ValueError(f"shift requires an integer a >= 1, got {a!r}")
    wv = _weights(w)
    w1, w2, w3 = wv.w
    bracket = (w1 + w2 + w3) / 2.0 - (w1 + w2)
    return h - bracket * math.log(a)


def fujita_height_pn(n: int) -> float:
    """Canonical height of projective n-space with empty boundary.

    (1/2) (n+1)^(n+1) [ (n+1) H_n - n + ln(pi^n / n!) ],  H_n = sum_{k<=n} 1/k.
    Normalizing by [Q:Q] * deg(-K)^n * (n+1) recovers the n = 1 value
    (1 + ln pi)/2 used as the sharp Fano bound.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    harmonic = math.fsum(1.0 / k for k in range(1, n + 1))
    return 0.5 * (n + 1) ** (n + 1) * ((n + 1) * harmonic - n + math.log(math.pi**n / math.factorial(n)))


def _angular_ring_integral(t: float, wexp: float) -> float:
    """2 * integral over [0, pi] of (1 - 2 t cos(theta) + t^2)^(-wexp) d theta."""
    if t == 0.0:
        return 2.0 * math.pi

    def f(theta: float) -> float:
        return (1.0 - 2.0 * t * math.cos(theta) + t * t) ** (-wexp)

    # near t = 1 the integrand is close to divergent at theta = 0; QUADPACK
    # still resolves it to ~1e-10, so its roundoff warnings carry no signal
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v, _ = integrate.quad(f, 0.0, math.pi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return 2.0 * v


def faltings_log_cy(w) -> EvalResult:
    """Normalization-integral height of a log Calabi-Yau pair (V = 0).

    Computes -(1/2) ln I for I = integral over C of
    |z|^(-2 w1) |z - 1|^(-2 w2) dA(z), which is finite exactly when all
    weights are < 1 (klt); w3 = 2 - w1 - w2 governs the decay at infinity.

    In polar coordinates the plane folds onto the unit disk: with
    G(r) = angular integral of |r e^{i theta} - 1|^(-2 w2),

        I = integral_0^1 (r^(1-2 w1) + r^(1-2 w3)) G(r) dr,

    the second power coming from the inversion z -> 1/z of the exterior.
    """
    wv = _weights(w)
    if abs(wv.volume) > 1e-9:
        raise ValueError(f"faltings_log_cy requires V = 0, got V = {wv.volume!r}")
    w1, w2, w3 = wv.w
    if max(w1, w2, w3) >= 1.0:
        raise ValueError("normalization integral diverges: a weight reaches 1 (pair is not klt)")

    def radial(r: float) -> float:
        return (r ** (1.0 - 2.0 * w1) + r ** (1.0 - 2.0 * w3)) * _angular_ring_integral(r, w2)

    total = 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in ((0.0, 0.5), (0.5, 0.9), (0.9, 1.0)):
            v, e = integrate.quad(radial, lo, hi, epsabs=1e-10, epsrel=1e-10, limit=400)
            total += v
            err += e
    value = -0.5 * math.log(total)
    return EvalResult(value, err / (2.0 * total) + 1e-9)


def bound_linear_fano(w) -> float:
    """Linear lower bound for the Fano-side height:
    (1 + ln pi)/2 + (1/4)(1 + ln(3/4)) (w1 + w2 + w3)."""
    wv = _weights(w)
    return 0.5 * (1.0 + math.log(math.pi)) + 0.25 * (1.0 + math.log(0.75)) * math.fsum(wv.w)


def bound_semiample(w, literal: bool = False) -> float:
    """Linear upper bound for the semi-ample-side height, touching at w = (2/3)^3:

        -(1/2) ln pi + (3/2) ln(Gamma(2/3)/Gamma(1/3)) + slope * (w1+w2+w3-2),

    slope = (1/4) (euler_gamma + (psi(2/3) + psi(1/3))/2) per unit of V.
    The touching-point derivative along the diagonal (t, t, t) in t is three
    times that; one printed form applies the t-derivative to V = 3(t - 2/3)
    directly and writes Gamma'(1/3)/Gamma(2/3) for psi(1/3), which makes the
    claimed bound fail numerically just past the wall.  `literal=True`
    reproduces that display verbatim for comparison; the default is the
    variant that actually majorizes the height (checked on a grid in tests).
    """
    wv = _weights(w)
    const = -0.5 * math.log(math.pi) + 1.5 * (log_gamma(2.0 / 3.0).value - log_gamma(1.0 / 3.0).value)
    euler_gamma = -digamma(1.0).value
    if literal:
        second = digamma(1.0 / 3.0).value * math.exp(log_gamma(1.0 / 3.0).value - log_gamma(2.0 / 3.0).value)
        slope = 0.75 * (euler_gamma + 0.5 * (digamma(2.0 / 3.0).value + second))
    else:
        slope = 0.25 * (euler_gamma + 0.5 * (digamma(2.0 / 3.0).value + digamma(1.0 / 3.0).value))
    return const + slope * (math.fsum(wv.w) - 2.0)

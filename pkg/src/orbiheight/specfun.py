"""High-accuracy real special functions used by the height formulas.

The analytic backbone is the Hurwitz zeta function

    zeta(s, x) = sum_{n>=0} (n + x)^(-s),   Re s > 1,

continued via the Euler-Maclaurin expansion, together with its s-derivative
at s = -1.  The combination

    loggamma_primitive(x) = zeta(-1, x) + d/ds zeta(s, x)|_{s=-1}

is an antiderivative of ln Gamma(x) - (1/2) ln 2pi on (0, 1), which is what
makes the closed-form height formulas on the projective line possible: the
integral of ln(Gamma(x)/Gamma(1-x)) over [a, b] collapses to four evaluations
of it (``loggamma_ratio_integral``).

Every kernel returns an :class:`EvalResult` carrying an absolute error
estimate.  All functions are pure and safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, special

__all__ = [
    "EvalResult",
    "SignedLog",
    "log_gamma",
    "log_gamma_signed",
    "digamma",
    "bernoulli2",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "loggamma_primitive",
    "loggamma_ratio_integral",
    "loggamma_ratio_integral_quad",
]

_EPS = np.finfo(float).eps

# B_2, B_4, ..., B_26 (even-index Bernoulli numbers, exact).
_BERNOULLI_EVEN = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
]
_B_OVER_FACT = [float(b) / math.factorial(2 * j) for j, b in enumerate(_BERNOULLI_EVEN, start=1)]

# Shift the argument until x + M >= _SHIFT_TARGET, then use Bernoulli terms
# through B_24 (the B_26 entry only feeds the error estimate).
_SHIFT_TARGET = 12.0
_N_TAIL = 12


@dataclass(frozen=True)
class EvalResult:
    """A double-precision value together with an absolute error estimate."""

    value: float
    err: float

    def __post_init__(self):
        if math.isfinite(self.value) and not (math.isfinite(self.err) and self.err >= 0.0):
            raise ValueError(f"invalid error estimate {self.err!r} for finite value")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class SignedLog:
    """log |y| together with sign(y); sign 0 encodes y = 0 (log_abs = -inf)."""

    log_abs: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0 and self.log_abs != -math.inf:
            raise ValueError("sign 0 requires log_abs = -inf")


def log_gamma(x: float) -> EvalResult:
    """ln Gamma(x) for x > 0."""
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"log_gamma requires finite x > 0, got {x!r}")
    v = float(special.gammaln(x))
    return EvalResult(v, 4.0 * _EPS * max(1.0, abs(v)))


def log_gamma_signed(x: float) -> SignedLog:
    """(ln |Gamma(x)|, sign Gamma(x)) for real x away from the poles 0, -1, -2, ...

    For x < 0 the sign is (-1)^ceil(-x), equivalently the sign of sin(pi x).
    """
    if not math.isfinite(x):
        raise ValueError(f"log_gamma_signed requires finite x, got {x!r}")
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"Gamma has a pole at x = {x!r}")
    return SignedLog(float(special.gammaln(x)), int(special.gammasgn(x)))


def digamma(x: float) -> EvalResult:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"digamma requires finite x > 0, got {x!r}")
    v = float(special.digamma(x))
    return EvalResult(v, 4.0 * _EPS * max(1.0, abs(v)))


def bernoulli2(a: float) -> float:
    """Second Bernoulli polynomial B_2(a) = a^2 - a + 1/6."""
    return a * a - a + 1.0 / 6.0


def _em_split(x: float) -> tuple[int, float]:
    """Number of explicitly summed terms M and the shifted point y = x + M."""
    m = max(0, int(math.ceil(_SHIFT_TARGET - x)))
    return m, x + m


@lru_cache(maxsize=1 << 15)
def hurwitz_zeta(s: float, x: float) -> EvalResult:
    """Analytically continued Hurwitz zeta zeta(s, x), s != 1, x > 0.

    Euler-Maclaurin with the argument shifted to x + M >= 12 and correction
    terms through B_24; the reported error is the first omitted term plus a
    rounding floor.  Results are memoized (pure function of its arguments).
    """
    if not (math.isfinite(s) and math.isfinite(x)):
        raise ValueError("hurwitz_zeta requires finite arguments")
    if s == 1.0:
        raise ValueError("hurwitz_zeta has a pole at s = 1")
    if x <= 0.0:
        raise ValueError(f"hurwitz_zeta requires x > 0, got {x!r}")

    m, y = _em_split(x)
    n_plus_x = x + np.arange(m, dtype=float)
    head = float(np.sum(n_plus_x ** (-s))) if m else 0.0
    scale = abs(head)

    ly = math.log(y)
    main = math.exp((1.0 - s) * ly) / (s - 1.0)
    half = 0.5 * math.exp(-s * ly)
    scale = max(scale, abs(main), abs(half))

    total = head + main + half
    for j in range(1, _N_TAIL + 1):
        poch = float(np.prod(s + np.arange(2 * j - 1, dtype=float)))
        total += _B_OVER_FACT[j - 1] * poch * math.exp((-s - 2 * j + 1) * ly)
    # First omitted term (j = _N_TAIL + 1) bounds the truncation error.
    j = _N_TAIL + 1
    poch = float(np.prod(s + np.arange(2 * j - 1, dtype=float)))
    omitted = abs(_B_OVER_FACT[j - 1] * poch * math.exp((-s - 2 * j + 1) * ly))
    err = omitted + 8.0 * _EPS * max(scale, abs(total)) * (m + 4)
    return EvalResult(total, err)


@lru_cache(maxsize=1 << 15)
def hurwitz_zeta_ds(x: float) -> EvalResult:
    """d/ds zeta(s, x) at s = -1, for x > 0.

    The Euler-Maclaurin expansion is differentiated term by term in s and
    evaluated at s = -1 (no finite differences).  With y = x + M:

        -sum_{n<M} (n+x) ln(n+x)  +  y^2 (ln y / 2 - 1/4)  -  (y ln y)/2
        + (1 + ln y)/12  -  sum_{j>=2} B_{2j}/(2j)! (2j-3)! y^{2-2j}

    using that the Pochhammer factor s(s+1)...(s+2j-2) vanishes at s = -1
    for j >= 2 while its s-derivative there equals -(2j-3)!.
    """
    if not math.isfinite(x):
        raise ValueError("hurwitz_zeta_ds requires a finite argument")
    if x <= 0.0:
        raise ValueError(f"hurwitz_zeta_ds requires x > 0, got {x!r}")

    m, y = _em_split(x)
    n_plus_x = x + np.arange(m, dtype=float)
    head = -float(np.sum(n_plus_x * np.log(n_plus_x))) if m else 0.0

    ly = math.log(y)
    main = y * y * (0.5 * ly - 0.25)
    half = -0.5 * y * ly
    first = (1.0 + ly) / 12.0

    total = head + main + half + first
    for j in range(2, _N_TAIL + 1):
        total -= _B_OVER_FACT[j - 1] * math.factorial(2 * j - 3) * y ** (2 - 2 * j)
    j = _N_TAIL + 1
    omitted = abs(_B_OVER_FACT[j - 1] * math.factorial(2 * j - 3) * y ** (2 - 2 * j))
    err = omitted + 8.0 * _EPS * (abs(head) + abs(main)) * (m + 4)
    return EvalResult(total, err)


def loggamma_primitive(x: float) -> EvalResult:
    """zeta(-1, x) + d/ds zeta(s, x)|_{s=-1}, continued to x = 0 by the value at 1.

    On (0, 1) its x-derivative is ln Gamma(x) - (1/2) ln 2pi, so differences of
    this function integrate ln Gamma exactly.  Weights equal to 1 (cusps) use
    the x = 0 continuation, which keeps the height formulas uniform.
    """
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"loggamma_primitive is defined on [0, 1], got {x!r}")
    if x == 0.0:
        x = 1.0
    zv = hurwitz_zeta(-1.0, x)
    zd = hurwitz_zeta_ds(x)
    return EvalResult(zv.value + zd.value, zv.err + zd.err)


def loggamma_ratio_integral(a: float, b: float) -> EvalResult:
    """Closed form of the integral of ln(Gamma(x)/Gamma(1-x)) over [a, b].

    Equals P(b) + P(1-b) - P(a) - P(1-a) with P = loggamma_primitive;
    endpoints 0 and 1 are allowed (the log singularity is integrable).
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"arguments must lie in [0, 1], got {a!r}, {b!r}")
    parts = [loggamma_primitive(t) for t in (b, 1.0 - b, a, 1.0 - a)]
    value = parts[0].value + parts[1].value - parts[2].value - parts[3].value
    return EvalResult(value, sum(p.err for p in parts))


def _lgamma_int(lo: float, hi: float) -> tuple[float, float]:
    """integral of ln Gamma over [lo, hi] in (0, 1], absorbing the x=0 singularity.

    Near 0 the substitution x = u^2 turns the integrable ln-singularity into a
    continuous integrand for the adaptive Gauss-Kronrod rule.
    """
    if lo >= hi:
        return 0.0, 0.0
    total = 0.0
    err = 0.0
    cut = min(hi, 0.25)
    if lo < cut:
        v, e = integrate.quad(
            lambda u: 2.0 * u * special.gammaln(u * u),
            math.sqrt(lo), math.sqrt(cut), epsabs=1e-13, epsrel=1e-13, limit=200,
        )
        total += v
        err += e
        lo = cut
    if lo < hi:
        v, e = integrate.quad(special.gammaln, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)
        total += v
        err += e
    return total, err


def loggamma_ratio_integral_quad(a: float, b: float) -> EvalResult:
    """Quadrature twin of :func:`loggamma_ratio_integral`.

    Integrates ln Gamma(x) - ln Gamma(1-x) by adaptive Gauss-Kronrod, with the
    u^2 endpoint substitution at both ends; independent of the Hurwitz-zeta
    route, so the pair forms a two-sided check.
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"arguments must lie in [0, 1], got {a!r}, {b!r}")
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    v1, e1 = _lgamma_int(a, b)
    # integral of ln Gamma(1-x) over [a, b] = integral of ln Gamma over [1-b, 1-a]
    v2, e2 = _lgamma_int(1.0 - b, 1.0 - a)
    return EvalResult(sign * (v1 - v2), e1 + e2 + 1e-14)

"""Exact arithmetic on log-combinations.

The closed-form constants in this package (height table rows, Yuan's formula,
local invariants of integral models) all live in the Q-module spanned by

    1,  ln pi,  ln p (p prime),  (1/[F:Q]) zeta_F'(-1)/zeta_F(-1),  named constants.

:class:`LogCombo` stores the rational coefficients exactly; addition and
scaling are componentwise on `fractions.Fraction`, and only `evaluate`
touches floating point.  `rationalize` goes the other way, certifying that a
computed double is a small rational (continued-fraction reconstruction).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import fields as _fields
from .specfun import EvalResult, digamma, log_gamma

__all__ = ["Rational", "LogCombo", "rationalize", "NAMED_CONSTANTS"]

Rational = Fraction


def _clean(m: Mapping) -> dict:
    """Drop exact zeros and normalize coefficients to Fraction."""
    return {k: Fraction(v) for k, v in m.items() if Fraction(v) != 0}


def _euler_gamma() -> EvalResult:
    d = digamma(1.0)
    return EvalResult(-d.value, d.err)


def _log_gamma_ratio_23() -> EvalResult:
    a = log_gamma(2.0 / 3.0)
    b = log_gamma(1.0 / 3.0)
    return EvalResult(a.value - b.value, a.err + b.err)


#: Registry of named transcendental constants: name -> () -> EvalResult.
NAMED_CONSTANTS: dict[str, Callable[[], EvalResult]] = {
    "logGammaRatio23": _log_gamma_ratio_23,
    "EulerGamma": _euler_gamma,
}


@dataclass(frozen=True)
class LogCombo:
    """q0 + c_logpi*ln(pi) + sum_p logs[p]*ln(p) + field terms + named constants.

    A field term with coefficient c for field F contributes
    c * (1/[F:Q]) * zeta_F'(-1)/zeta_F(-1) when evaluated.
    """

    q0: Fraction = Fraction(0)
    c_logpi: Fraction = Fraction(0)
    logs: dict[int, Fraction] = field(default_factory=dict)
    zeta_terms: dict[str, Fraction] = field(default_factory=dict)
    named: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "q0", Fraction(self.q0))
        object.__setattr__(self, "c_logpi", Fraction(self.c_logpi))
        object.__setattr__(self, "logs", _clean(self.logs))
        object.__setattr__(self, "zeta_terms", _clean(self.zeta_terms))
        object.__setattr__(self, "named", _clean(self.named))

    def __add__(self, other: "LogCombo") -> "LogCombo":
        logs = dict(self.logs)
        for p, c in other.logs.items():
            logs[p] = logs.get(p, Fraction(0)) + c
        zt = dict(self.zeta_terms)
        for f, c in other.zeta_terms.items():
            zt[f] = zt.get(f, Fraction(0)) + c
        nm = dict(self.named)
        for n, c in other.named.items():
            nm[n] = nm.get(n, Fraction(0)) + c
        return LogCombo(self.q0 + other.q0, self.c_logpi + other.c_logpi, logs, zt, nm)

    def __sub__(self, other: "LogCombo") -> "LogCombo":
        return self + other.scale(Fraction(-1))

    def scale(self, r) -> "LogCombo":
        r = Fraction(r)
        return LogCombo(
            self.q0 * r,
            self.c_logpi * r,
            {p: c * r for p, c in self.logs.items()},
            {f: c * r for f, c in self.zeta_terms.items()},
            {n: c * r for n, c in self.named.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogCombo):
            return NotImplemented
        return (
            self.q0 == other.q0
            and self.c_logpi == other.c_logpi
            and self.logs == other.logs
            and self.zeta_terms == other.zeta_terms
            and self.named == other.named
        )

    @property
    def is_zero(self) -> bool:
        return self == LogCombo()

    def evaluate(self) -> EvalResult:
        """Numeric value with propagated absolute error."""
        value = float(self.q0) + float(self.c_logpi) * math.log(math.pi)
        err = 4e-16 * (abs(float(self.q0)) + abs(float(self.c_logpi)) + 1.0)
        for p, c in sorted(self.logs.items()):
            value += float(c) * math.log(p)
            err += 4e-16 * abs(float(c)) * math.log(p)
        for fid, c in sorted(self.zeta_terms.items()):
            fs = _fields.get_field(fid)
            dd = _fields.dedekind_log_deriv(fs)
            value += float(c) * dd.value / fs.degree
            err += abs(float(c)) * dd.err / fs.degree
        for name, c in sorted(self.named.items()):
            if name not in NAMED_CONSTANTS:
                raise KeyError(f"named constant {name!r} is not registered")
            cv = NAMED_CONSTANTS[name]()
            value += float(c) * cv.value
            err += abs(float(c)) * cv.err
        return EvalResult(value, err)

    # -- JSON round-trip ---------------------------------------------------

    def to_json(self) -> str:
        def frac(x: Fraction):
            return [x.numerator, x.denominator]

        return json.dumps(
            {
                "q0": frac(self.q0),
                "logpi": frac(self.c_logpi),
                "logs": {str(p): frac(c) for p, c in sorted(self.logs.items())},
                "zeta": {f: frac(c) for f, c in sorted(self.zeta_terms.items())},
                "named": {n: frac(c) for n, c in sorted(self.named.items())},
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "LogCombo":
        doc = json.loads(text)

        def frac(v) -> Fraction:
            return Fraction(v[0], v[1])

        return cls(
            q0=frac(doc.get("q0", [0, 1])),
            c_logpi=frac(doc.get("logpi", [0, 1])),
            logs={int(p): frac(c) for p, c in doc.get("logs", {}).items()},
            zeta_terms={f: frac(c) for f, c in doc.get("zeta", {}).items()},
            named={n: frac(c) for n, c in doc.get("named", {}).items()},
        )


def rationalize(x: float, max_den: int = 10_000, tol: float = 1e-8) -> Fraction:
    """Best rational p/q with q <= max_den; raises if it misses x by more than tol.

    Continued-fraction reconstruction; use it to certify that a numerically
    computed coefficient is the exact small rational it is supposed to be.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if not math.isfinite(x):
        raise ValueError(f"cannot rationalize {x!r}")
    cand = Fraction(x).limit_denominator(max_den)
    if abs(x - float(cand)) > tol:
        raise ValueError(f"{x!r} is not within {tol} of a rational with denominator <= {max_den}")
    return cand

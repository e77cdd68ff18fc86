"""Runnable invariant suites behind ``orbiheight verify``.

Each suite returns a list of named check results; the CLI prints one line
per check and exits nonzero if any failed.  The checks mirror the pytest
suite but are self-contained so the installed package can be verified
without a test checkout.

One check is expected to fail: the Fermat/Arakelov "bound chain" inequality
is numerically false for 4 <= m <= 12 (comparing at m = 4 shows the two
printed bounds it chains differ by exactly ln 2 in the wrong direction).
It is kept verbatim and reported honestly; see the package README.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fermat as fm
from . import fields as fl
from . import heights as hg
from . import periods as pd
from . import shimura as sh
from . import specfun as sf
from . import tables as tb

__all__ = ["CheckResult", "SUITES", "run_suite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, residual: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(abs(residual) <= tol), f"max residual {residual:.3e} (tol {tol:.1e})")


def suite_specfun() -> list[CheckResult]:
    out = []
    rng = np.random.default_rng(20240901)

    worst = 0.0
    for s in (-3.0, -1.0, 0.5, 2.0):
        for x in np.linspace(0.05, 5.0, 25):
            lhs = sf.hurwitz_zeta(s, x).value - x**-s - sf.hurwitz_zeta(s, x + 1.0).value
            scale = max(1.0, abs(sf.hurwitz_zeta(s, x).value))
            worst = max(worst, abs(lhs) / scale)
    out.append(_check("hurwitz recurrence", worst, 1e-11))

    worst = 0.0
    for x in np.linspace(0.05, 5.0, 25):
        lhs = sf.hurwitz_zeta_ds(x).value - sf.hurwitz_zeta_ds(x + 1.0).value + x * math.log(x)
        worst = max(worst, abs(lhs))
    out.append(_check("s-derivative recurrence", worst, 1e-10))

    worst = max(
        abs(sf.hurwitz_zeta(-1.0, float(x)).value + sf.bernoulli2(float(x)) / 2.0)
        for x in rng.uniform(1e-6, 2.0, size=200)
    )
    out.append(_check("Bernoulli identity zeta(-1,x) = -B2(x)/2", worst, 1e-13))

    worst = 0.0
    for k in range(2, 13):
        for s in (-1.0, -0.5, 2.0):
            lhs = sum(sf.hurwitz_zeta(s, i / k).value for i in range(1, k + 1)) - k**s * sf.hurwitz_zeta(s, 1.0).value
            worst = max(worst, abs(lhs))
    out.append(_check("multiplication theorem", worst, 1e-11))

    zeta_m1 = sf.hurwitz_zeta(-1.0, 1.0).value
    zeta_p = sf.hurwitz_zeta_ds(1.0).value
    worst = 0.0
    for k in range(2, 13):
        lhs = sum(sf.hurwitz_zeta_ds(i / k).value for i in range(1, k + 1)) - (zeta_p + math.log(k) * zeta_m1) / k
        worst = max(worst, abs(lhs))
    out.append(_check("differentiated multiplication theorem", worst, 1e-10))

    h = 1e-4
    worst = 0.0
    for x in (0.2, 0.5, 0.8):
        deriv = (sf.loggamma_primitive(x + h).value - sf.loggamma_primitive(x - h).value) / (2.0 * h)
        worst = max(worst, abs(deriv - (sf.log_gamma(x).value - 0.5 * math.log(2.0 * math.pi))))
    out.append(_check("primitive of log Gamma", worst, 1e-6))

    worst = 0.0
    for _ in range(100):
        a, b = rng.uniform(0.02, 0.98, size=2)
        worst = max(worst, abs(sf.loggamma_ratio_integral(a, b).value - sf.loggamma_ratio_integral_quad(a, b).value))
    out.append(_check("closed form vs quadrature", worst, 1e-9))

    worst = max(
        abs(sf.loggamma_ratio_integral(0.0, v / 2.0).value + sf.loggamma_ratio_integral(1.0 - v / 2.0, 1.0).value)
        for v in rng.uniform(1e-3, 2.0 - 1e-3, size=50)
    )
    out.append(_check("two-point identity gamma(0,V/2) + gamma(1-V/2,1) = 0", worst, 1e-10))

    lhs = (
        sf.loggamma_ratio_integral(0.0, 0.25).value
        + 3.0 * sf.loggamma_ratio_integral(0.5, 0.75).value
        - 0.25 * math.log(2.0)
    )
    out.append(_check("gamma(0,1/4) + 3 gamma(1/2,3/4) = ln(2)/4", lhs, 1e-10))

    worst = 0.0
    for fs in fl.builtin_fields().values():
        prod = 1.0 + 0.0j
        tot = 0.0 + 0.0j
        for chi in fs.characters:
            lv = fl.dirichlet_L(-1.0, chi)
            ld = fl.dirichlet_L_ds(chi)
            prod *= lv.value
            tot += ld.value / lv.value
        worst = max(worst, abs(prod.imag), abs(tot.imag))
    out.append(_check("Dedekind products are real", worst, 1e-12))

    # Bernoulli-arithmetic oracle for L(-1, chi_8): 8 * sum chi(a) (-B2(a/8)/2)
    oracle = 8.0 * sum(
        s * (-sf.bernoulli2(a / 8.0) / 2.0) for a, s in ((1, 1.0), (3, -1.0), (5, -1.0), (7, 1.0))
    )
    chi8 = fl.get_field("Qsqrt2").characters[1]
    out.append(_check("L(-1, chi_8) matches Bernoulli arithmetic", fl.dirichlet_L(-1.0, chi8).value.real - oracle, 1e-12))
    return out


def _semistable_grid(n: int):
    vals = np.linspace(0.0, 1.0, n)
    for w1 in vals:
        for w2 in vals:
            for w3 in vals:
                w = (float(w1), float(w2), float(w3))
                if hg.k_semistable(w):
                    yield w


def suite_heights() -> list[CheckResult]:
    out = []
    rng = np.random.default_rng(20240902)

    worst = 0.0
    for row in tb.TABLE1:
        wv = row.indices.weights()
        fs = fl.get_field(row.field_id)
        lhs = hg.h_pet(wv).value + 0.5 + fl.dedekind_log_deriv(fs).value / fs.degree
        worst = max(worst, abs(lhs - row.constant.evaluate().value))
    out.append(_check("log-canonical table rows (10)", worst, 1e-9))

    worst = 0.0
    base = 0.5 * (1.0 + math.log(math.pi))
    for row in tb.TABLE2:
        lhs = hg.h_can_fano(row.indices.weights()).value - base
        worst = max(worst, abs(lhs - row.constant.evaluate().value))
    out.append(_check("Fano table rows (4)", worst, 1e-9))

    bound = -0.5 * (1.0 + math.log(math.pi))
    bound2 = hg.bound_semiample((2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0))
    worst1 = -math.inf
    worst2 = -math.inf
    eq_only_zero = True
    for w in _semistable_grid(20):
        v = hg.volume(w)
        if abs(v) < 1e-9:
            continue
        signed = hg.h_can_positive(w).value if v > 0 else -hg.h_can_fano(w).value
        worst1 = max(worst1, signed - bound)
        if signed > bound - 1e-9 and max(abs(x) for x in w) > 1e-12:
            eq_only_zero = False
        if v > 0:
            worst2 = max(worst2, hg.h_can_positive(w).value - bound2)
    out.append(_check("sharp bound +-h <= -(1+ln pi)/2 on 20^3 grid", max(worst1, 0.0), 1e-9))
    out.append(CheckResult("sharp bound equality only at w = 0", eq_only_zero, "checked on the same grid"))
    out.append(_check("semi-ample sharp bound on grid", max(worst2, 0.0), 1e-9))

    worst = 0.0
    done = 0
    while done < 100:
        wa = tuple(rng.uniform(0.0, 1.0, size=3))
        wb = tuple(rng.uniform(0.0, 1.0, size=3))
        mid = tuple(0.5 * (a + b) for a, b in zip(wa, wb))
        if not (hg.k_semistable(wa) and hg.k_semistable(wb)):
            continue
        va, vb = hg.volume(wa), hg.volume(wb)
        if va > 1e-3 and vb > 1e-3:
            ha, hb, hm = (hg.h_can_positive(x).value for x in (wa, wb, mid))
        elif va < -1e-3 and vb < -1e-3:
            ha, hb, hm = (-hg.h_can_fano(x).value for x in (wa, wb, mid))
        else:
            continue
        worst = max(worst, 0.5 * (ha + hb) - hm)
        done += 1
    out.append(_check("midpoint concavity (100 segments)", max(worst, 0.0), 1e-9))

    worst = 0.0
    for _ in range(20):
        w = tuple(rng.uniform(0.0, 1.0, size=3))
        if not hg.k_semistable(w) or abs(hg.volume(w)) < 1e-2:
            continue
        fn = hg.h_can_positive if hg.volume(w) > 0 else hg.h_can_fano
        ref = fn(w).value
        for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
            worst = max(worst, abs(fn(tuple(w[i] for i in perm)).value - ref))
    out.append(_check("permutation symmetry", worst, 1e-12))

    # the signed height +-h extends across V = 0 with the V = 0 value given
    # by the normalization integral: lim h_can(K) = lim -h_can(-K) = h_CY
    limit_const = hg.faltings_log_cy((2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0)).value
    t_hi = 2.0 / 3.0 + 1e-5 / 3.0
    t_lo = 2.0 / 3.0 - 1e-5 / 3.0
    gap_hi = hg.h_can_positive((t_hi,) * 3).value - limit_const
    gap_lo = -hg.h_can_fano((t_lo,) * 3).value - limit_const
    out.append(_check("analytic continuation across V = 0", max(abs(gap_hi), abs(gap_lo)), 1e-5))

    sharp = -0.5 * math.log(math.pi) + 1.5 * (sf.log_gamma(2 / 3).value - sf.log_gamma(1 / 3).value)
    out.append(_check("log-CY value = sharp-bound constant", limit_const - sharp, 1e-5))
    return out


def suite_periods() -> list[CheckResult]:
    out = []
    w = hg.WeightVector((0.75, 0.75, 0.75))
    f_ref = hg.h_can_positive(w).value
    gaps = []
    for n in (100, 1000, 10000):
        est = pd.height_from_periods(pd.PeriodConfig(N=n, w=w, polarity="canonical"))
        gaps.append(abs(est.value - f_ref))
    out.append(CheckResult("canonical convergence strictly decreasing", gaps[0] > gaps[1] > gaps[2], f"gaps {gaps}"))
    out.append(_check("canonical gap at N = 10^4", gaps[-1], 5e-3))

    slope = (math.log(gaps[0]) - math.log(gaps[-1])) / (math.log(10000) - math.log(100))
    out.append(CheckResult("convergence rate like 1/N", 0.8 <= slope <= 1.2, f"fitted exponent {slope:.3f}"))

    w2 = hg.WeightVector((0.5, 0.5, 0.5))
    target = hg.h_can_fano(w2).value
    est = pd.height_from_periods(pd.PeriodConfig(N=10000, w=w2, polarity="anticanonical"))
    out.append(_check("anticanonical gap at N = 10^4", est.value - target, 1e-2))

    cfg = pd.PeriodConfig(N=100000, w=w, polarity="canonical")
    a = pd.df_log_z(cfg).value
    b = pd.df_log_z_compensated(cfg)
    out.append(_check("two summation orders agree (rel)", (a - b) / a, 1e-8))

    out.append(
        _check(
            "worker-count independence",
            pd.df_log_z(cfg, workers=1).value - pd.df_log_z(cfg, workers=8).value,
            1e-10,
        )
    )

    n = 100000
    v = w.volume
    h = v / (2.0 * (n - 1))
    lhs = (math.lgamma(n + 1.0) + n * math.log(math.pi) - n * (sf.log_gamma(h).value - sf.log_gamma(1.0 - h).value)) / (
        2.0 * n
    )
    out.append(_check("Stirling consistency", lhs - 0.5 * (math.log(v / 2.0) - 1.0 + math.log(math.pi)), 1e-3))

    for pol, wv in (("canonical", hg.WeightVector((5 / 6, 5 / 6, 5 / 6))), ("anticanonical", w2)):
        z_exact = math.exp(pd.df_log_z(pd.PeriodConfig(N=2, w=wv, polarity=pol)).value)
        q = pd.mc_oracle_z(2, wv, scheme="quadrature", polarity=pol)
        out.append(_check(f"N=2 direct integration ({pol})", q.value / z_exact - 1.0, 1e-2))
    return out


def suite_shimura() -> list[CheckResult]:
    out = []
    for cid, case in sorted(sh.builtin_cases().items()):
        hp = sh.h_p_map(case)
        out.append(CheckResult(f"h(p) exact for {cid}", hp == case.expected_h, str({p: str(v) for p, v in hp.items()})))
        out.append(CheckResult(f"h(p) nonnegative for {cid}", all(v >= 0 for v in hp.values())))
        diff = sh.yuan_height(case) - sh.optimal_pet_height(case)
        numeric = diff.evaluate().value
        recon = sum(float(v) / float(case.scale()) * math.log(p) for p, v in hp.items())
        out.append(_check(f"numeric cross-check for {cid}", numeric - recon, 1e-9))
    out.append(
        CheckResult(
            "orbifold degrees",
            sh.orbifold_degree(hg.RamIndices((2, 4, 12))) == Fraction(1, 6)
            and sh.orbifold_degree(hg.RamIndices((3, 4, 6))) == Fraction(1, 4)
            and sh.orbifold_degree(hg.RamIndices((2, 3, math.inf))) == Fraction(1, 6),
        )
    )
    return out


def suite_fermat() -> list[CheckResult]:
    out = []
    spec = fm.FermatSpec(5)
    t = 1.0 - 1.0 / 5
    comp = fm.fermat_h_can(spec).value - (hg.h_can_positive((t, t, t)).value + math.log(5.0))
    out.append(_check("height reduces to three-point formula + ln m", comp, 0.0))

    out.append(_check("eps_4 = ln 2 + 1/4", fm.epsilon_m(4) - (math.log(2.0) + 0.25), 1e-15))
    out.append(CheckResult("eps_5 < eps_4", fm.epsilon_m(5) < fm.epsilon_m(4)))
    out.append(CheckResult("eps_100 < 0.15", fm.epsilon_m(100) < 0.15, f"eps_100 = {fm.epsilon_m(100):.4f}"))

    const = fm.arakelov_upper_bound(4).second - 2.0 * math.log(4.0)
    out.append(
        CheckResult(
            "Arakelov constant truncates to -0.88",
            -0.89 < const < -0.88,
            f"recomputed constant {const:.9f}",
        )
    )

    ts = np.linspace(0.7, 0.95, 26)
    vals = [hg.h_can_positive((float(x),) * 3).value for x in ts]
    out.append(CheckResult("f(t,t,t) decreasing on [0.7, 0.95]", all(a > b for a, b in zip(vals, vals[1:]))))

    bad = []
    for m in range(4, 61):
        lhs = fm.fermat_h_can(fm.FermatSpec(m)).value + fm.arakelov_gap(m)
        if lhs > fm.arakelov_upper_bound(m).second + 1e-9:
            bad.append(m)
    out.append(
        CheckResult(
            "bound chain h_can + gap <= second bound on [4, 60]",
            not bad,
            f"fails for m in {bad} (documented defect: the printed chain is off by ln 2 at m = 4)",
        )
    )
    return out


SUITES = {
    "specfun": suite_specfun,
    "heights": suite_heights,
    "periods": suite_periods,
    "shimura": suite_shimura,
    "fermat": suite_fermat,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in SUITES:
            results.extend(run_suite(key))
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {['all', *SUITES]}")
    return SUITES[name]()

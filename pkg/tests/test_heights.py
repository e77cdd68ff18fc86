"""Closed-form heights: classical values, symmetries, bounds, the V = 0 wall."""

import math

import numpy as np
import pytest

from orbiheight.fields import dedekind_log_deriv, get_field
from orbiheight.heights import (
    RamIndices,
    WeightVector,
    bound_linear_fano,
    bound_semiample,
    faltings_log_cy,
    four_point_h_can,
    fujita_height_pn,
    h_can_fano,
    h_can_positive,
    h_pet,
    h_pi_normalized,
    k_semistable,
    shift_by_a,
    volume,
)
from orbiheight.specfun import hurwitz_zeta_ds, log_gamma

LN = math.log
HALF_1_LNPI = 0.5 * (1.0 + LN(math.pi))


def zeta_logderiv_q() -> float:
    return -12.0 * hurwitz_zeta_ds(1.0).value


def test_volume_and_types():
    assert volume((0.0, 0.0, 0.0)) == -2.0
    assert volume((1.0, 1.0, 1.0)) == 1.0
    assert volume((5 / 6, 5 / 6, 5 / 6)) == pytest.approx(0.5, abs=1e-15)
    assert RamIndices((2, 3, math.inf)).weights().w == (0.5, 1.0 - 1.0 / 3.0, 1.0)
    with pytest.raises(ValueError):
        WeightVector((1.2, 0.0, 0.0))
    with pytest.raises(ValueError):
        RamIndices((2, 3, 2.5))


def test_k_semistable():
    assert k_semistable((0.0, 0.0, 0.0))  # V = -2, bound 0, all weights 0
    assert not k_semistable((0.9, 0.0, 0.0))  # bound 0.45 < 0.9
    rng = np.random.default_rng(5)
    for _ in range(50):
        w = tuple(rng.uniform(0.0, 1.0, size=3))
        if sum(w) >= 2.0:
            assert k_semistable(w)  # automatic when V >= 0


def test_h_can_positive_table_row_values():
    # indices (2, 3, inf): f + ln(pi V/2)/2 + 1/2 + zeta'/zeta(-1) = -ln2/2 - ln3/4
    w = (0.5, 2.0 / 3.0, 1.0)
    lhs = h_can_positive(w).value + 0.5 * LN(math.pi * volume(w) / 2.0) + 0.5 + zeta_logderiv_q()
    assert lhs == pytest.approx(-LN(2.0) / 2.0 - LN(3.0) / 4.0, abs=1e-9)
    # indices (4, 4, 4) in the Petersson normalization, with the sqrt-2 field term
    w = (0.75, 0.75, 0.75)
    fs = get_field("Qsqrt2")
    lhs = h_pet(w).value + 0.5 + dedekind_log_deriv(fs).value / fs.degree
    assert lhs == pytest.approx(-19.0 / 12.0 * LN(2.0), abs=1e-9)
    with pytest.raises(ValueError):
        h_can_positive((0.5, 0.5, 0.5))


def test_h_can_positive_limit_toward_wall():
    target = -0.5 * LN(math.pi) + 1.5 * (log_gamma(2.0 / 3.0).value - log_gamma(1.0 / 3.0).value)
    t = 2.0 / 3.0 + 1e-6 / 3.0
    assert h_can_positive((t, t, t)).value == pytest.approx(target, abs=1e-5)


def test_h_can_fano_values():
    assert h_can_fano((0.0, 0.0, 0.0)).value == pytest.approx(HALF_1_LNPI, abs=1e-12)
    assert h_can_fano((0.5, 0.5, 0.5)).value == pytest.approx(HALF_1_LNPI + LN(2.0) / 2.0, abs=1e-9)
    # indices (2, 3, 3): 1/2 + ln(pi)/2 + ln(48)/8
    w = (0.5, 2.0 / 3.0, 2.0 / 3.0)
    assert h_can_fano(w).value == pytest.approx(0.5 + 0.5 * LN(math.pi) + LN(48.0) / 8.0, abs=1e-9)
    with pytest.raises(ValueError):
        h_can_fano((5 / 6, 5 / 6, 5 / 6))


def test_two_point_identity():
    rng = np.random.default_rng(11)
    for _ in range(25):
        t = float(rng.uniform(0.0, 0.95))
        w = (t, 0.0, t)
        v = volume(w)
        assert h_can_fano(w).value == pytest.approx(0.5 * (1.0 + LN(math.pi) - LN(-v / 2.0)), abs=1e-9)


def test_h_pet_relation_and_values():
    w = (0.5, 2.0 / 3.0, 1.0)
    assert h_pet(w).value - h_can_positive(w).value == pytest.approx(0.5 * LN(math.pi * volume(w) / 2.0), abs=1e-12)
    # (2, 3, inf): h_pet = -zeta'/zeta(-1) - 1/2 - ln(12)/4
    assert h_pet(w).value == pytest.approx(-zeta_logderiv_q() - 0.5 - 0.25 * LN(12.0), abs=1e-9)
    # (6, 2, 6) row
    w = RamIndices((6, 2, 6)).weights()
    lhs = h_pet(w).value + 0.5 + zeta_logderiv_q()
    assert lhs == pytest.approx(-LN(2.0) / 6.0 + LN(3.0) / 8.0, abs=1e-9)


def test_h_pi_normalized():
    assert h_pi_normalized((0.0, 0.0, 0.0)).value == pytest.approx(0.5, abs=1e-12)
    w = (0.5, 2.0 / 3.0, 1.0)
    assert h_pi_normalized(w).value == pytest.approx(h_can_positive(w).value + 0.5 * LN(math.pi), abs=1e-15)
    with pytest.raises(ValueError):
        h_pi_normalized((2 / 3, 2 / 3, 2 / 3))


def test_four_point_reduction():
    # indices (3, 3; 2, 2) at {0, 1, -1, inf} fold to (6, 2, 6) at {0, 1, inf}
    w0 = winf = 2.0 / 3.0
    w1 = 0.5
    lhs = four_point_h_can(w0, w1, winf).value
    rhs = h_can_positive((5.0 / 6.0, 0.5, 5.0 / 6.0)).value + 0.5 * LN(2.0)
    assert lhs == pytest.approx(rhs, abs=1e-12)
    # degenerate cusps at 0 and inf
    lhs = four_point_h_can(1.0, 0.9, 1.0).value
    assert lhs == pytest.approx(h_can_positive((1.0, 0.9, 1.0)).value + 0.5 * LN(2.0), abs=1e-12)
    # substitution identity for generic weights
    rng = np.random.default_rng(13)
    for _ in range(10):
        a, b, c = rng.uniform(0.55, 0.95, size=3)
        red = (1.0 + (a - 1.0) / 2.0, b, 1.0 + (c - 1.0) / 2.0)
        if volume(red) <= 1e-3 or not k_semistable(red):
            continue
        assert four_point_h_can(a, b, c).value == pytest.approx(
            h_can_positive(red).value + 0.5 * LN(2.0), abs=1e-12
        )


def test_shift_by_a():
    w = (0.5, 2.0 / 3.0, 1.0)
    assert shift_by_a(1.234, w, 1) == 1.234
    # bracket = sum w / 2 - (w1 + w2) = 13/12 - 7/6 = -1/12
    h0 = 0.0
    shifted = shift_by_a(h0, w, 1728)
    assert shifted == pytest.approx((1.0 / 12.0) * LN(12.0**3), abs=1e-12)
    with pytest.raises(ValueError):
        shift_by_a(0.0, w, 0)


def test_fujita_height():
    assert fujita_height_pn(1) == pytest.approx(2.0 * (1.0 + LN(math.pi)), abs=1e-12)
    assert fujita_height_pn(2) == pytest.approx(0.5 * 27.0 * (3.0 * 1.5 - 2.0 + LN(math.pi**2 / 2.0)), abs=1e-12)
    # normalized by [Q:Q] * deg(-K) * (n+1) = 2 * 2 it recovers the Fano base value
    assert fujita_height_pn(1) / 4.0 == pytest.approx(h_can_fano((0.0, 0.0, 0.0)).value, abs=1e-12)
    with pytest.raises(ValueError):
        fujita_height_pn(0)


def test_faltings_log_cy():
    target = -0.5 * LN(math.pi) + 1.5 * (log_gamma(2.0 / 3.0).value - log_gamma(1.0 / 3.0).value)
    r = faltings_log_cy((2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0))
    assert r.value == pytest.approx(target, abs=1e-5)
    assert r.err <= 1e-6
    # one-sided limit of the closed form along (t, t, t)
    t = 2.0 / 3.0 + 1e-6 / 3.0
    assert h_can_positive((t, t, t)).value == pytest.approx(r.value, abs=1e-5)
    with pytest.raises(ValueError):
        faltings_log_cy((0.5, 0.5, 1.0))  # non-klt: divergent
    with pytest.raises(ValueError):
        faltings_log_cy((0.5, 0.5, 0.5))  # V != 0


def test_faltings_radial_reduction_cross_check():
    # independent radial form: I = int_0^1 (r^(1-2w1) + r^(1-2w3)) G(r) dr with
    # G the angular ring integral 2 pi 2F1(w2, w2; 1; r^2)
    from scipy.integrate import quad
    from scipy.special import hyp2f1

    w1, w2, w3 = 0.7, 0.75, 0.55

    def radial(r):
        return (r ** (1.0 - 2.0 * w1) + r ** (1.0 - 2.0 * w3)) * 2.0 * math.pi * hyp2f1(w2, w2, 1.0, r * r)

    total = 0.0
    for lo, hi in ((0.0, 0.5), (0.5, 0.95), (0.95, 1.0)):
        total += quad(radial, lo, hi, epsabs=1e-11, epsrel=1e-11, limit=300)[0]
    assert faltings_log_cy((w1, w2, w3)).value == pytest.approx(-0.5 * LN(total), abs=1e-7)


def test_permutation_symmetry():
    rng = np.random.default_rng(17)
    checked = 0
    while checked < 30:
        w = tuple(float(x) for x in rng.uniform(0.0, 1.0, size=3))
        if not k_semistable(w) or abs(volume(w)) < 1e-2:
            continue
        fn = h_can_positive if volume(w) > 0 else h_can_fano
        ref = fn(w).value
        for perm in ((1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)):
            assert abs(fn(tuple(w[i] for i in perm)).value - ref) <= 1e-12
        checked += 1


def test_midpoint_concavity():
    rng = np.random.default_rng(19)
    done = 0
    while done < 100:
        wa = tuple(float(x) for x in rng.uniform(0.0, 1.0, size=3))
        wb = tuple(float(x) for x in rng.uniform(0.0, 1.0, size=3))
        if not (k_semistable(wa) and k_semistable(wb)):
            continue
        mid = tuple(0.5 * (a + b) for a, b in zip(wa, wb))
        va, vb = volume(wa), volume(wb)
        if va > 1e-3 and vb > 1e-3:
            ha, hb, hm = (h_can_positive(x).value for x in (wa, wb, mid))
        elif va < -1e-3 and vb < -1e-3:
            ha, hb, hm = (-h_can_fano(x).value for x in (wa, wb, mid))
        else:
            continue
        assert hm >= 0.5 * (ha + hb) - 1e-9
        done += 1


def test_linear_bounds():
    assert bound_linear_fano((0.0, 0.0, 0.0)) == pytest.approx(HALF_1_LNPI, abs=1e-15)
    slope = 0.25 * (1.0 + LN(0.75))
    assert slope == pytest.approx(0.178, abs=5e-4)
    assert bound_linear_fano((0.2, 0.3, 0.1)) == pytest.approx(HALF_1_LNPI + slope * 0.6, abs=1e-12)
    # the Fano height sits above the linear lower bound
    rng = np.random.default_rng(23)
    for _ in range(40):
        w = tuple(float(x) for x in rng.uniform(0.0, 0.6, size=3))
        if not k_semistable(w) or volume(w) > -1e-3:
            continue
        assert h_can_fano(w).value >= bound_linear_fano(w) - 1e-9

    w23 = (2.0 / 3.0,) * 3
    const = -0.5 * LN(math.pi) + 1.5 * (log_gamma(2.0 / 3.0).value - log_gamma(1.0 / 3.0).value)
    assert bound_semiample(w23) == pytest.approx(const, abs=1e-12)
    assert bound_semiample(w23, literal=True) == pytest.approx(const, abs=1e-12)
    # the literal printed slope differs away from the touching point (and
    # fails as a bound just past the wall, which is why it is not the default)
    w = (0.8, 0.8, 0.8)
    assert abs(bound_semiample(w) - bound_semiample(w, literal=True)) > 1e-3
    assert h_can_positive((0.67,) * 3).value > bound_semiample((0.67,) * 3, literal=True)
    # the default slope is the actual touching-point derivative per unit V
    t0 = 2.0 / 3.0
    num_slope = (h_can_positive((t0 + 4e-4,) * 3).value - h_can_positive((t0 + 2e-4,) * 3).value) / 6e-4
    assert bound_semiample((t0 + 1.0 / 3.0,) * 3) - const == pytest.approx(num_slope, abs=5e-3)
    # semi-ample heights sit below the upper bound, asymmetric weights included
    for t in np.linspace(0.67, 0.99, 12):
        w = (float(t),) * 3
        assert h_can_positive(w).value <= bound_semiample(w) + 1e-9
    rng = np.random.default_rng(29)
    for _ in range(40):
        w = tuple(float(x) for x in rng.uniform(0.4, 1.0, size=3))
        if volume(w) < 1e-3 or not k_semistable(w):
            continue
        assert h_can_positive(w).value <= bound_semiample(w) + 1e-9


def test_analytic_continuation_across_v0():
    # lim_{V->0+} h_can(K) and lim_{V->0-} -h_can(-K) agree (within 1e-5 at
    # |V| = 1e-5; the approach is linear in V with slope ~0.41)
    t_hi = 2.0 / 3.0 + 1e-5 / 3.0
    t_lo = 2.0 / 3.0 - 1e-5 / 3.0
    hi = h_can_positive((t_hi,) * 3).value
    lo = -h_can_fano((t_lo,) * 3).value
    assert hi == pytest.approx(lo, abs=1e-5)


def test_boundary_continuity_of_closed_forms():
    # continuity onto the stability wall w1 = V/2 + 1 (evaluation by continuity)
    w_wall = (1.0, 0.5, 0.5)  # V = 0, excluded; take a wall with V > 0 instead
    assert volume(w_wall) == pytest.approx(0.0, abs=1e-15)
    w = (1.0, 0.75, 0.75)  # V = 0.5, w1 = 1 = V/2 + 0.75 < V/2 + 1: interior cusp case
    inside = h_can_positive(w).value
    near = h_can_positive((1.0 - 1e-9, 0.75, 0.75)).value
    assert inside == pytest.approx(near, abs=1e-6)

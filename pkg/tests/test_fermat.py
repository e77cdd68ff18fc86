"""Fermat-curve heights, the genus gap, and the explicit Arakelov bounds."""

import math

import numpy as np
import pytest

from orbiheight.fermat import (
    FermatSpec,
    arakelov_gap,
    arakelov_upper_bound,
    epsilon_m,
    fermat_h_can,
    genus,
)
from orbiheight.heights import h_can_positive

LN = math.log


def test_spec_validation():
    with pytest.raises(ValueError):
        FermatSpec(2)
    with pytest.raises(ValueError):
        FermatSpec(5, (0, 1, 1))
    with pytest.raises(ValueError):
        fermat_h_can(FermatSpec(3))  # canonical side needs m >= 4


def test_height_composition_is_exact():
    for m in (4, 7, 12):
        t = 1.0 - 1.0 / m
        base = h_can_positive((t, t, t)).value + LN(m)
        assert fermat_h_can(FermatSpec(m)).value == base  # exact float composition


def test_twist_term():
    # a = (8, 1, 1) at m = 4: ((m-3)/2 + 1)/m * sum ln|a_i| = (3/8) ln 8 = (9/8) ln 2
    plain = fermat_h_can(FermatSpec(4)).value
    twisted = fermat_h_can(FermatSpec(4, (8, 1, 1))).value
    assert twisted - plain == pytest.approx(9.0 / 8.0 * LN(2.0), abs=1e-12)
    # sign-insensitive
    assert fermat_h_can(FermatSpec(4, (-8, 1, 1))).value == twisted


def test_cover_consistency():
    # the curve's height exceeds the three-point height by (1/2) ln(m^2) = ln m
    for m in (4, 9):
        t = 1.0 - 1.0 / m
        diff = fermat_h_can(FermatSpec(m)).value - h_can_positive((t, t, t)).value
        assert diff == pytest.approx(0.5 * LN(float(m * m)), abs=1e-12)


def test_genus():
    assert genus(4) == 3
    assert genus(3) == 1
    assert genus(7) == 15
    with pytest.raises(ValueError):
        genus(2)


def test_epsilon_values():
    # (m-1)(m-2) - 2 = 4 at m = 4: eps_4 = (4 ln 4 + 1)/4 + ln(4/16)/2 = ln 2 + 1/4
    assert epsilon_m(4) == pytest.approx(LN(2.0) + 0.25, abs=1e-15)
    assert epsilon_m(5) < epsilon_m(4)
    assert epsilon_m(100) < 0.15
    with pytest.raises(ValueError):
        epsilon_m(3)


def test_epsilon_monotonicity_window():
    """eps_m decreases through m = 35 and then creeps back toward 0 from
    below, so "decreasing" holds only on an initial window."""
    vals = [epsilon_m(m) for m in range(4, 37)]
    assert all(a > b for a, b in zip(vals[:-1], vals[1:-1]))
    assert vals[-1] > vals[-2]  # first increase at m = 36
    assert all(epsilon_m(m) < 0.0 for m in (40, 60, 100))


def test_arakelov_gap():
    # m = 4 (genus 3): (1/2) [ (4 ln 4 + 1)/2 + ln(2 pi) ]
    want = 0.5 * ((4.0 * LN(4.0) + 1.0) / 2.0 + LN(2.0 * math.pi))
    assert arakelov_gap(4) == pytest.approx(want, abs=1e-15)
    # grows like (1/2) ln g for large m
    assert arakelov_gap(200) == pytest.approx(0.5 * LN(math.pi * (genus(200) - 1)), abs=0.01)
    with pytest.raises(ValueError):
        arakelov_gap(3)


def test_arakelov_constant():
    b = arakelov_upper_bound(4)
    const = b.second - 2.0 * LN(4.0)
    # the quoted "-0.88..." is a truncation: the full value is -0.887002...,
    # so agreement holds at two decimals in the truncating sense
    assert -0.89 < const < -0.88
    assert math.floor(-const * 100.0) / 100.0 == 0.88
    assert const == pytest.approx(-0.887002, abs=5e-6)
    from fractions import Fraction

    assert b.second_constant.logs == {2: Fraction(-13, 12)}
    assert b.second >= 0.0
    assert b.epsilon == pytest.approx(LN(2.0) + 0.25, abs=1e-15)


def test_bound_relationships():
    """Documents the exact structural relation between the two printed bounds:
    first - second = ln 2 - (f(w_4) - f(w_m)), so "first <= second" fails for
    every m (by ln 2 at m = 4), and the canonical-height-plus-gap route
    exceeds the second bound for m <= 12.  This is why the chained acceptance
    inequality cannot hold as stated; the README documents it."""
    f4 = h_can_positive((0.75, 0.75, 0.75)).value
    for m in (4, 5, 10, 30, 60):
        b = arakelov_upper_bound(m)
        t = 1.0 - 1.0 / m
        fm = h_can_positive((t, t, t)).value
        assert b.first.value - b.second == pytest.approx(LN(2.0) - (f4 - fm), abs=1e-9)
        assert b.first.value > b.second  # the printed chain is inverted
    # gap route: fails exactly for m in [4, 12], holds from 13 on
    bad = [
        m
        for m in range(4, 61)
        if fermat_h_can(FermatSpec(m)).value + arakelov_gap(m) > arakelov_upper_bound(m).second + 1e-9
    ]
    assert bad == list(range(4, 13))


def test_f_diagonal_decreasing():
    ts = np.linspace(0.7, 0.95, 26)
    vals = [h_can_positive((float(t),) * 3).value for t in ts]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_first_bound_is_valid_for_arakelov():
    # h_can + gap <= first bound always (the first bound is the chain's valid
    # half: it exceeds the direct route by exactly ln(2)/2)
    for m in (4, 5, 8, 20, 60):
        lhs = fermat_h_can(FermatSpec(m)).value + arakelov_gap(m)
        b = arakelov_upper_bound(m)
        assert lhs <= b.first.value + 1e-12
        assert b.first.value - lhs == pytest.approx(0.5 * LN(2.0), abs=1e-9)

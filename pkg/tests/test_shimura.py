"""Exact local invariants h(p) and the closed-form table data behind them."""

import math
from fractions import Fraction

import pytest

from orbiheight.fields import dedekind_log_deriv, get_field
from orbiheight.heights import RamIndices, h_can_fano, h_pet
from orbiheight.lcombo import LogCombo
from orbiheight.shimura import (
    OptimalModel,
    RamifiedPrime,
    ShimuraCase,
    builtin_cases,
    get_case,
    h_p_map,
    optimal_pet_height,
    orbifold_degree,
    yuan_height,
    yuan_prime_coeff,
)
from orbiheight.tables import PRINTED_DEVIATIONS, TABLE1, TABLE2

F = Fraction


def test_yuan_prime_coefficients():
    assert yuan_prime_coeff(2) == F(5, 4)
    assert yuan_prime_coeff(3) == F(1)
    with pytest.raises(ValueError):
        yuan_prime_coeff(1)


def test_expected_h_exact_all_cases():
    expected = {
        "modular": {2: F(1, 2), 3: F(1, 4)},
        "disc6": {2: F(11, 18), 3: F(7, 12)},
        "sqrt3": {2: F(5, 9), 3: F(15, 48)},
        "sqrt6": {2: F(43, 144), 3: F(3, 32)},
    }
    for cid, want in expected.items():
        case = get_case(cid)
        got = h_p_map(case)
        assert got == want, cid
        assert got == case.expected_h
        assert all(v >= 0 for v in got.values())


def test_disc6_decomposition():
    case = get_case("disc6")
    y = yuan_height(case)
    assert y.logs == {2: F(5, 4), 3: F(1)}
    assert y.zeta_terms == {"Q": F(-1)}
    opt = optimal_pet_height(case)
    assert opt.logs == {2: F(1, 2) - F(1, 6), 3: F(1, 8)}
    diff = y - opt
    assert diff.zeta_terms == {} and diff.q0 == 0
    assert diff.logs == {2: F(11, 12), 3: F(7, 8)}
    assert case.k_degree == F(1, 3)
    assert case.scale() == F(2, 3)


def test_sqrt3_prime_contribution():
    case = get_case("sqrt3")
    y = yuan_height(case)
    # single prime of norm 3 with coefficient 1, degree factor 1/2
    assert y.logs == {3: F(1, 2)}
    hp = h_p_map(case)
    assert hp[3] == F(15, 48) == F(5, 16)


def test_sqrt6_carries_source_overrides():
    case = get_case("sqrt6")
    assert case.ramified[0].coeff == F(7, 4)  # not the generic 5/4
    y = yuan_height(case)
    assert y.logs == {2: F(7, 8)}
    # the shipped row for this case is the printed one, ln(2)/2 off the
    # validated (3, 4, 6) table row
    validated = next(r for r in TABLE1 if r.field_id == "Qsqrt6").pet_height()
    offset = case.optimal.pet_closed_form - validated
    assert offset == LogCombo(logs={2: F(1, 2)})


def test_modular_case_shift_consistency():
    # Table row (2, 3, inf) plus the j-invariant shift (1/12) ln(12^3) equals
    # the prime-free closed formula exactly, coefficient by coefficient.
    case = get_case("modular")
    row = case.optimal.pet_closed_form
    shift = LogCombo(logs={2: F(1, 2), 3: F(1, 4)})  # (1/12) ln(12^3)
    assert row + shift == yuan_height(case)
    assert h_p_map(case) == {2: F(1, 2), 3: F(1, 4)}


def test_field_term_cancellation_required():
    case = get_case("disc6")
    broken = ShimuraCase(
        id="broken",
        field_id="Q",
        ramified=case.ramified,
        optimal=OptimalModel(
            ram_indices=None,
            pet_closed_form=LogCombo(q0=F(-1, 2), zeta_terms={"Q": F(-1)}, logs={}),
            correction=LogCombo(zeta_terms={"Q": F(1, 3)}),
        ),
        k_degree=F(1, 3),
        expected_h={},
    )
    with pytest.raises(ValueError, match="field terms"):
        h_p_map(broken)
    with pytest.raises(ValueError):
        RamifiedPrime(norm=4, prime=2, residue_degree=1)


def test_numeric_cross_check():
    for case in builtin_cases().values():
        diff = yuan_height(case) - optimal_pet_height(case)
        numeric = diff.evaluate().value
        recon = math.fsum(float(v / case.scale()) * math.log(p) for p, v in h_p_map(case).items())
        assert abs(numeric - recon) < 1e-9


def test_orbifold_degree():
    assert orbifold_degree(RamIndices((2, 4, 12))) == F(1, 6)
    assert orbifold_degree(RamIndices((2, 3, math.inf))) == F(1, 6)
    assert orbifold_degree(RamIndices((6, 2, 6))) == F(1, 6)
    # sum(1 - 1/m) - 2 for (3, 4, 6) is 1/4; the sqrt6 fixture nevertheless
    # carries k_degree 1/12, the value its reference derivation uses (its
    # displayed sum evaluates to 1/4, its stated result is 1/12, and the
    # final h(p) values need 1/12).  Fixture data reproduces the source.
    assert orbifold_degree(RamIndices((3, 4, 6))) == F(1, 4)
    assert get_case("sqrt6").k_degree == F(1, 12)
    # disc6's k_degree is the degree of the original four-point divisor
    # (3,3,2,2), which is twice the reduced three-point (6,2,6) degree
    assert get_case("disc6").k_degree == F(1, 3) == 2 * orbifold_degree(RamIndices((6, 2, 6)))


def test_table1_rows_validate_against_heights():
    for row in TABLE1:
        wv = row.indices.weights()
        fs = get_field(row.field_id)
        lhs = h_pet(wv).value + 0.5 + dedekind_log_deriv(fs).value / fs.degree
        assert abs(lhs - row.constant.evaluate().value) < 1e-9, row.indices.m
        # the full Petersson combination evaluates consistently too
        assert abs(row.pet_height().evaluate().value - h_pet(wv).value) < 1e-9


def test_table2_rows_validate_against_heights():
    base = 0.5 * (1.0 + math.log(math.pi))
    for row in TABLE2:
        lhs = h_can_fano(row.indices.weights()).value - base
        assert abs(lhs - row.constant.evaluate().value) < 1e-9, row.indices.m


def test_printed_deviations_are_exactly_as_recorded():
    """The printed variants of three table rows fail validation by exact,
    recognizable offsets (ln 5, ln 2 / 2, ln 3 / 6); shipping the validated
    values is what keeps the closed-form checks green."""
    by_label = {
        "table1:(5,5,5)": next(r for r in TABLE1 if r.field_id == "Qsqrt5"),
        "table1:(3,4,6)": next(r for r in TABLE1 if r.field_id == "Qsqrt6"),
        "table2:(2,2,3)": TABLE2[0],
    }
    for label, row in by_label.items():
        rec = PRINTED_DEVIATIONS[label]
        assert rec["printed"] - row.constant == rec["offset"]
        # and the printed value really is off by that much numerically
        printed_val = rec["printed"].evaluate().value
        shipped_val = row.constant.evaluate().value
        assert printed_val - shipped_val == pytest.approx(rec["offset"].evaluate().value, abs=1e-12)

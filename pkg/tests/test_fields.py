"""Dirichlet characters, L-values and Dedekind log derivatives."""

import json
import math
from fractions import Fraction

import pytest

from orbiheight.fields import (
    Character,
    builtin_fields,
    dedekind_log_deriv,
    dirichlet_L,
    dirichlet_L_ds,
    get_field,
    load_fields,
)
from orbiheight.specfun import bernoulli2, hurwitz_zeta, hurwitz_zeta_ds


def test_builtin_fields_shape():
    fields = builtin_fields()
    assert sorted(fields) == ["Q", "Qcos7", "Qcos9", "Qsqrt2", "Qsqrt3", "Qsqrt5", "Qsqrt6"]
    degrees = {fid: fs.degree for fid, fs in fields.items()}
    assert degrees == {"Q": 1, "Qsqrt2": 2, "Qsqrt3": 2, "Qsqrt5": 2, "Qsqrt6": 2, "Qcos7": 3, "Qcos9": 3}


def test_character_validation():
    with pytest.raises(ValueError):  # not multiplicative
        Character(5, {1: Fraction(0), 2: Fraction(1, 2), 3: Fraction(0), 4: Fraction(0)})
    with pytest.raises(ValueError):  # wrong support
        Character(5, {1: Fraction(0), 2: Fraction(0)})
    chi = get_field("Qcos7").characters[1]
    conj = chi.conjugate()
    assert conj.angles == get_field("Qcos7").characters[2].angles


def test_trivial_character_is_riemann_zeta():
    chi = get_field("Q").characters[0]
    assert dirichlet_L(-1.0, chi).value.real == pytest.approx(-1.0 / 12.0, abs=1e-13)
    assert dirichlet_L_ds(chi).value.real == pytest.approx(hurwitz_zeta_ds(1.0).value, abs=1e-12)
    with pytest.raises(ValueError):
        dirichlet_L(1.0, chi)


def test_chi8_bernoulli_oracle():
    # L(-1, chi8) = 8 * [zeta(-1,1/8) - zeta(-1,3/8) - zeta(-1,5/8) + zeta(-1,7/8)]
    # with zeta(-1, a) = -B2(a)/2; the exact rational arithmetic gives -1.
    oracle = Fraction(0)
    for a, s in ((1, 1), (3, -1), (5, -1), (7, 1)):
        b2 = Fraction(a, 8) ** 2 - Fraction(a, 8) + Fraction(1, 6)
        oracle += s * (-b2 / 2)
    oracle *= 8
    assert oracle == -1
    chi8 = get_field("Qsqrt2").characters[1]
    val = dirichlet_L(-1.0, chi8).value
    assert val.imag == 0.0
    assert val.real == pytest.approx(float(oracle), abs=1e-12)
    # cross-check against float Bernoulli arithmetic too
    fl = 8.0 * math.fsum(s * (-bernoulli2(a / 8.0) / 2.0) for a, s in ((1, 1), (3, -1), (5, -1), (7, 1)))
    assert val.real == pytest.approx(fl, abs=1e-12)


def test_chi8_derivative_finite_difference_oracle():
    chi8 = get_field("Qsqrt2").characters[1]

    def l_num(s: float) -> float:
        total = sum(chi8(a).real * hurwitz_zeta(s, a / 8.0).value for a in (1, 3, 5, 7))
        return 8.0**-s * total

    h = 1e-3
    d = lambda hh: (l_num(-1.0 + hh) - l_num(-1.0 - hh)) / (2.0 * hh)
    oracle = (4.0 * d(h / 2.0) - d(h)) / 3.0
    assert dirichlet_L_ds(chi8).value.real == pytest.approx(oracle, abs=1e-9)


def test_cubic_pair_product_real_positive():
    f7 = get_field("Qcos7")
    chi, chibar = f7.characters[1], f7.characters[2]
    prod = dirichlet_L(-1.0, chi).value * dirichlet_L(-1.0, chibar).value
    assert abs(prod.imag) < 1e-14
    assert prod.real > 0.0
    # conjugate characters have conjugate derivatives
    d1 = dirichlet_L_ds(chi).value
    d2 = dirichlet_L_ds(chibar).value
    assert d1.real == pytest.approx(d2.real, abs=1e-12)
    assert d1.imag == pytest.approx(-d2.imag, abs=1e-12)


def test_dedekind_log_deriv_rational_field():
    # zeta'(-1)/zeta(-1) = -12 zeta'(-1), straight from the kernel
    oracle = -12.0 * hurwitz_zeta_ds(1.0).value
    r = dedekind_log_deriv(get_field("Q"))
    assert r.value == pytest.approx(oracle, abs=1e-10)
    assert r.value == pytest.approx(1.985051, abs=5e-6)


def test_dedekind_qsqrt2_explicit_combination():
    # zeta_F = zeta(s) 8^{-s} (zeta(s,1/8) - zeta(s,3/8) - zeta(s,5/8) + zeta(s,7/8))
    chi8 = get_field("Qsqrt2").characters[1]
    lv = dirichlet_L(-1.0, chi8).value.real
    ld = dirichlet_L_ds(chi8).value.real
    expected = -12.0 * hurwitz_zeta_ds(1.0).value + ld / lv
    assert dedekind_log_deriv(get_field("Qsqrt2")).value == pytest.approx(expected, abs=1e-12)


def test_dedekind_cubic_fields_real():
    for fid in ("Qcos7", "Qcos9"):
        r = dedekind_log_deriv(get_field(fid))
        assert math.isfinite(r.value)  # construction enforces Im < 1e-10


def test_field_json_round_trip():
    doc = [
        {
            "id": "Qdemo",
            "modulus": 5,
            "characters": [
                {"modulus": 1, "values": {"1": [0, 1]}},
                {"modulus": 5, "values": {"1": [0, 1], "2": [1, 2], "3": [1, 2], "4": [0, 1]}},
            ],
        }
    ]
    fields = load_fields(json.dumps(doc))
    assert fields["Qdemo"].degree == 2
    # same character data as the shipped Qsqrt5, so the L-values must agree
    a = dedekind_log_deriv(fields["Qdemo"]).value
    b = dedekind_log_deriv(get_field("Qsqrt5")).value
    assert a == pytest.approx(b, abs=0.0)


def test_unknown_field():
    with pytest.raises(KeyError):
        get_field("Qsqrt11")

import dataclasses
import math

import pytest
from hypothesis import given, strategies as st

from ptmagnomech.params import (
    HBAR,
    NormalizedParams,
    ParameterError,
    dump_config,
    load_config,
    normalize_rates,
    yig_physical_params,
    parse_config,
    physical_to_normalized,
    validate,
)

from conftest import params_strategy


def test_fig2_set_accepted():
    p = NormalizedParams(kappa_a=0.08, kappa_m=0.08, g_mb_eff=0.09, gamma_b=0.001, gamma_nh=1.0, theta=math.pi / 2)
    assert validate(p) == p


def test_negative_decay_rejected():
    with pytest.raises(ParameterError, match="negative decay"):
        validate(NormalizedParams(kappa_a=-0.01))


def test_theta_reduced():
    assert validate(NormalizedParams(theta=5 * math.pi / 2)).theta == pytest.approx(math.pi / 2, abs=1e-15)
    assert validate(NormalizedParams(theta=-math.pi / 2)).theta == pytest.approx(3 * math.pi / 2)


@pytest.mark.parametrize("field,value", [("delta_a", 2.0), ("g_mb_eff", -1.0), ("omega_b_ratio", 0.0), ("eta", -1.0), ("dissipation_sign", 0), ("drift_sign_convention", "other"), ("g_ma", math.nan)])
def test_invalid_fields(field, value):
    with pytest.raises(ParameterError):
        validate(NormalizedParams(**{field: value}))


@given(params_strategy)
def test_validate_idempotent(p):
    once = validate(p)
    assert validate(once) == once
    assert 0 <= once.theta < 2 * math.pi


def test_zero_power_gives_zero_drive():
    n = physical_to_normalized(yig_physical_params(drive_power=0.0), 1e-12, 1e-12)
    assert n.eta == 0.0


def test_doubling_length_halves_couplings():
    a = physical_to_normalized(yig_physical_params(), 1e-12, 2e-12)
    b = physical_to_normalized(yig_physical_params(cavity_length=2 * 12.5e-4), 1e-12, 2e-12)
    assert b.g_ma == pytest.approx(a.g_ma / 2, rel=1e-14)
    assert b.g_mb_eff == pytest.approx(a.g_mb_eff / 2, rel=1e-14)
    assert b.kappa_a == a.kappa_a


def test_yig_physical_set_direct_formulas(fixtures):
    """Independent evaluation of the zero-point-motion and drive formulas."""
    fx = fixtures["yig_physical"]
    mm, mb = fx["magnon_mass"], fx["phonon_mass"]
    p = yig_physical_params(traveling_amplitude=3.0)
    n = physical_to_normalized(p, mm, mb)
    da = p.omega_a - p.omega_0
    assert da < 0  # optical drive far above the microwave modes
    x_m = math.sqrt(HBAR / (2 * mm * p.omega_m))
    x_b = math.sqrt(HBAR / (2 * mb * p.omega_b))
    assert n.g_ma == pytest.approx(math.sqrt(2) * p.omega_a / p.cavity_length * x_m / abs(da), rel=1e-13)
    assert n.g_mb_eff == pytest.approx(math.sqrt(2) * p.omega_a / p.cavity_length * x_b / abs(da), rel=1e-13)
    assert n.gamma_nh == pytest.approx(3.0 * math.sqrt(HBAR / (p.omega_m * mm)) / abs(da), rel=1e-13)
    assert n.eta == pytest.approx(math.sqrt(p.drive_power * p.kappa_m / (HBAR * p.omega_0)) / abs(da), rel=1e-13)
    assert n.delta_a == 1.0
    assert n.delta_m == pytest.approx((p.omega_m - p.omega_0) / da, rel=1e-15)
    assert validate(n) == n


def test_yig_physical_regression(fixtures):
    fx = fixtures["yig_physical"]
    n = physical_to_normalized(yig_physical_params(), fx["magnon_mass"], fx["phonon_mass"])
    for key, value in fx["normalized"].items():
        if isinstance(value, float):
            assert getattr(n, key) == pytest.approx(value, rel=1e-12, abs=0), key


@given(st.floats(1e-3, 1e3))
def test_rate_normalization_scale_invariant(c):
    rates = dict(delta_a=0.7, delta_m=0.9, delta_b=1.3, kappa_a=0.05, kappa_m=0.06, gamma_b=0.001,
                 g_ma=0.4, g_mb=0.09, gamma_nh=0.3, omega_b=1.1, eta=2.0)
    a = normalize_rates(theta=1.0, **rates)
    b = normalize_rates(theta=1.0, **{k: c * v for k, v in rates.items()})
    for f in dataclasses.fields(a):
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, float):
            assert vb == pytest.approx(va, rel=1e-13)


def test_zero_cavity_detuning_rejected():
    with pytest.raises(ParameterError):
        physical_to_normalized(yig_physical_params(omega_0=yig_physical_params().omega_a), 1e-12, 1e-12)


def test_config_roundtrip(tmp_path):
    p = NormalizedParams(g_ma=0.3, theta=math.pi, drift_sign_convention="canonical", dissipation_sign=-1)
    path = tmp_path / "p.cfg"
    path.write_text(dump_config(p))
    assert load_config(path) == p


def test_config_unknown_key():
    with pytest.raises(ParameterError, match="unknown"):
        parse_config("g_ma = 1\nbogus = 2\n")


def test_config_comments_and_bad_value():
    assert parse_config("# header\ng_ma = 0.5  # trailing\n\n") == {"g_ma": 0.5}
    with pytest.raises(ParameterError):
        parse_config("g_ma = abc")

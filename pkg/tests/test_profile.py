from __future__ import annotations

import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from services.profile_service import (
    ParameterError, ProfileConfig, ProfileParams, ProfileSolverError, TableCorruptionError, alpha_bound, build_table,
    decay_rate_fit, energy_constant_e, equipartition_defect, eta1_at, implicit_lhs, ode_residual,
    profile_gaps, rho0_at, rho0_prime_at, write_profile_csv,
)
from services.profile_service.core.table import _checked_eta

SQRT2 = math.sqrt(2.0)


def test_center_value_is_sqrt3(params):
    assert rho0_at(0.0, params) == pytest.approx(math.sqrt(3.0), abs=1e-12)


def test_center_value_satisfies_implicit_relation(params):
    rho = rho0_at(0.0, params)
    assert abs(implicit_lhs(rho, params)) <= 1e-12


@pytest.mark.parametrize("z", [-1.0, -0.7, 0.0, 0.3, 0.5])
def test_interior_points_satisfy_implicit_relation(params, z):
    rho = rho0_at(z, params)
    assert params.a < rho < params.b
    assert abs(implicit_lhs(rho, params) - params.kappa * z) <= 1e-11


def test_boundary_values(params):
    assert abs(rho0_at(1e3, params) - 2.0) <= 1e-12
    assert abs(rho0_at(-1e3, params) - 1.0) <= 1e-12
    assert rho0_at(math.inf, params) < 2.0
    assert rho0_at(-math.inf, params) > 1.0


def test_tail_gaps_keep_relative_precision(params):
    gm, gp = profile_gaps(20.0, params)
    # ln w 的斜率是 -κ/a = -6√2
    gm2, gp2 = profile_gaps(21.0, params)
    assert math.log(gp2 / gp) == pytest.approx(-6.0 * SQRT2, rel=1e-6)
    assert gm == pytest.approx(3.0)


def test_nan_input_raises(params):
    with pytest.raises(ProfileSolverError) as info:
        rho0_at(float("nan"), params)
    assert info.value.bracket == (1.0, 2.0)


def test_rho0_prime_limits_and_maximum(params):
    assert rho0_prime_at(-1e3, params) == pytest.approx(0.0, abs=1e-12)
    z = np.linspace(-3.0, 3.0, 6001)
    values = rho0_prime_at(z, params)
    assert np.all(values > 0.0)
    assert values.max() == pytest.approx(9.0 * SQRT2 / 8.0, rel=1e-5)


def test_rho0_prime_matches_finite_difference(params):
    h = 1e-5
    for z in np.linspace(-1.0, 1.0, 9):
        fd = (rho0_at(z + h, params) - rho0_at(z - h, params)) / (2 * h)
        assert rho0_prime_at(z, params) == pytest.approx(fd, rel=1e-6)


def test_ode_residual_small(params):
    z = np.linspace(-6.0, 6.0, 49)
    assert np.max(ode_residual(z, params)) <= 1e-6


def test_table_invariants(table, params):
    assert np.all(table.rho0 > params.a) and np.all(table.rho0 < params.b)
    assert np.all(table.rho0_prime > 0.0)
    assert np.all(np.diff(table.eta1) > 0.0)
    assert np.all((table.eta1 >= 0.0) & (table.eta1 <= 1.0))
    assert abs(table.rho0[-1] - params.b) <= 1e-12
    assert abs(table.rho0[0] - params.a) <= 1e-12


def test_table_is_read_only(table):
    with pytest.raises(ValueError):
        table.rho0[0] = 1.5


def test_first_integral_pointwise(table, params):
    closed = (SQRT2 / 2.0) * (table.rho0 ** 2 - params.a ** 2) * (params.b ** 2 - table.rho0 ** 2)
    assert np.max(np.abs(table.rho0_prime - closed)) <= 1e-10


def test_equipartition(table):
    assert equipartition_defect(table) <= 1e-12


def test_zF_is_antiderivative(table):
    z, F, h = table.z_grid, table.F, table.spacing
    zF = z * F
    # 四階中心差分
    d = (-zF[4:] + 8 * zF[3:-1] - 8 * zF[1:-3] + zF[:-4]) / (12 * h)
    assert_allclose(d, 1.0 / table.rho0[2:-2] ** 2, atol=1e-6)


def test_eta1_center_value(table):
    assert eta1_at(0.0, table) == pytest.approx(8.0 / 9.0, abs=1e-10)


def test_eta1_limits(table):
    assert eta1_at(math.inf, table) == pytest.approx(1.0, abs=1e-12)
    assert eta1_at(-math.inf, table) == pytest.approx(0.0, abs=1e-12)
    assert abs(eta1_at(1e10, table) - 1.0) <= 1e-8
    assert abs(eta1_at(-1e10, table)) <= 1e-8


def test_eta1_evaluator_matches_table(table):
    assert_allclose(eta1_at(table.z_grid, table), table.eta1, atol=1e-14)
    # 表格邊界兩側連續
    zm = table.z_max
    assert eta1_at(zm * (1 + 1e-9), table) == pytest.approx(eta1_at(zm, table), abs=1e-9)


def test_eta1_derivative_consistent(table):
    z = np.array([-3.0, -0.5, 0.0, 0.8, 4.0])
    d1, _ = table.eta1_derivatives(z)
    h = 1e-5
    fd = (table.eta1_eval(z + h) - table.eta1_eval(z - h)) / (2 * h)
    assert_allclose(d1, fd, rtol=1e-4, atol=1e-7)


def test_eta_overshoot_handling():
    assert_allclose(_checked_eta(np.array([-1e-12, 0.5, 1.0 + 1e-12])), [0.0, 0.5, 1.0])
    with pytest.raises(TableCorruptionError):
        _checked_eta(np.array([0.2, 1.0 + 1e-6]))
    with pytest.raises(TableCorruptionError):
        _checked_eta(np.array([0.2, np.nan]))


def test_energy_constant(params, table):
    e = energy_constant_e(params, table)
    assert e.closed_form == pytest.approx(11.0 * SQRT2 / 15.0, rel=1e-14)
    assert e.difference <= 1e-8
    assert table.e_const == pytest.approx(1.0370899457, abs=1e-10)


def test_energy_constant_degenerates():
    p = ProfileParams(a=1.0, b=1.0 + 1e-8)
    assert abs(energy_constant_e(p).closed_form) <= 1e-6


def test_decay_rates(table):
    rates = decay_rate_fit(table)
    assert rates.rate_plus == pytest.approx(6.0 * SQRT2, rel=0.02)
    assert rates.rate_minus == pytest.approx(3.0 * SQRT2, rel=0.02)
    assert rates.rate_plus / rates.rate_minus == pytest.approx(2.0, rel=0.02)


def test_decay_ratio_other_params():
    p = ProfileParams(a=0.5, b=1.5)
    rates = decay_rate_fit(build_table(p, z_max=10.0, nodes=801))
    assert rates.rate_plus / rates.rate_minus == pytest.approx(3.0, rel=0.02)


def test_alpha_default_and_bounds():
    p = ProfileParams(a=1.0, b=2.0)
    assert p.alpha == pytest.approx(0.99 * alpha_bound(1.0, 2.0))
    assert alpha_bound(1.0, 2.0) == pytest.approx(3.0 * SQRT2)
    with pytest.raises(ValueError):
        ProfileParams(a=1.0, b=2.0, alpha=5.0)
    with pytest.raises(ValueError):
        ProfileParams(a=2.0, b=1.0)


def test_nonzero_c0_shifts_profile():
    shifted = ProfileParams(a=1.0, b=2.0, c0=1.0)
    base = ProfileParams(a=1.0, b=2.0)
    z = 0.4
    assert rho0_at(z, shifted) == pytest.approx(rho0_at(z + 1.0 / base.kappa, base), abs=1e-12)


def test_table_size_validation(params):
    with pytest.raises(ParameterError):
        build_table(params, z_max=10.0, nodes=100)
    with pytest.raises(ParameterError):
        decay_rate_fit(build_table(params, z_max=6.0, nodes=101))


@pytest.mark.parametrize("z_max, nodes", [(10.0, 201), (10.0, 401), (6.0, 101)])
def test_coarse_tables_build(params, z_max, nodes):
    coarse = build_table(params, z_max=z_max, nodes=nodes)
    assert coarse.rho0[coarse.center_index] == pytest.approx(math.sqrt(3.0), abs=1e-10)
    assert_allclose(coarse.eta1_eval(coarse.z_grid), coarse.eta1, atol=1e-10)
    e = energy_constant_e(params, coarse)
    assert e.difference <= ProfileConfig.simpson_tolerance(z_max, nodes)


def test_simpson_tolerance_scales_with_grid():
    assert ProfileConfig.simpson_tolerance(10.0, 4001) == ProfileConfig.CONSISTENCY_TOL
    assert ProfileConfig.simpson_tolerance(10.0, 201) == pytest.approx(ProfileConfig.SIMPSON_H4 * 0.1 ** 4)
    assert ProfileConfig.valid_table_size(10.0, 201)
    assert not ProfileConfig.valid_table_size(10.0, 200)
    assert not ProfileConfig.valid_table_size(0.0, 201)


def test_write_profile_csv(table, tmp_path):
    path = write_profile_csv(table, str(tmp_path / "profile.csv"))
    frame = pd.read_csv(path, float_precision="round_trip")
    assert list(frame.columns) == ["z", "rho0", "rho0_prime", "eta1", "F"]
    assert len(frame) == 4001
    assert_allclose(frame["rho0"].to_numpy(), table.rho0, rtol=0, atol=0)


def test_F_branches_join_continuously(table):
    r = table.SERIES_RADIUS
    for edge in (r, -r):
        z = np.array([edge, edge * (1 + 1e-10)])
        d1, d2 = table.F_derivatives(z)
        # 內側走 ρ₀ 的 Hermite 內插，外側走隱式關係
        assert table.F_eval(z[0]) == pytest.approx(table.F_eval(z[1]), abs=1e-10)
        assert d1[0] == pytest.approx(d1[1], abs=1e-9)
        assert d2[0] == pytest.approx(d2[1], abs=1e-7)


def test_F_second_derivative_at_center(table):
    # F''(0) = g''(0)/3，g = ρ₀⁻²
    rho = table.rho0_eval(0.0)
    d1 = table.rho0_prime_eval(0.0)
    d2 = table.rho0_second_eval(0.0)
    g2 = -2.0 * d2 / rho ** 3 + 6.0 * d1 ** 2 / rho ** 4
    assert table.F_derivatives(0.0)[1] == pytest.approx(g2 / 3.0, rel=1e-10)

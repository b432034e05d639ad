from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from services.expansion_service import (
    AmbiguousGeodesicError, AngleDirector, ApproxConfig, CompatibilityError, DomainRangeError, GeodesicFrame,
    ResidualRunConfig, angular_corrector, build_uK, compat_mcf_quadrature, corrector_closed_form,
    corrector_source, cutoff, geodesic_derivative, geodesic_eval, jump_identity_check, loglog_slope,
    residual_points, residual, residual_sweep, solve_two_point, tangent_basis, telescoping_check,
)
from services.field_service import InterfaceGeometry
from services.potential_service import fA_at
from services.profile_service import energy_closed_form

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])


def _radial(**overrides) -> ApproxConfig:
    values = dict(geometry=InterfaceGeometry(kind="radial", radius=1.0), eps=0.05, delta=0.3)
    values.update(overrides)
    return ApproxConfig(**values)


def _on_axis(r) -> np.ndarray:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    return np.stack([r, np.zeros_like(r)], axis=-1)


def test_geodesic_endpoints_and_midpoint():
    frame = GeodesicFrame(E1, E2)
    assert_allclose(geodesic_eval(frame, 0.0), E1, atol=1e-15)
    assert_allclose(geodesic_eval(frame, 1.0), E2, atol=1e-15)
    assert_allclose(geodesic_eval(frame, 0.5), (E1 + E2) / math.sqrt(2.0), atol=1e-15)


def test_geodesic_equal_endpoints_returns_common_value():
    frame = GeodesicFrame(E2, E2)
    values = geodesic_eval(frame, np.linspace(0.0, 1.0, 7))
    assert_allclose(values, np.tile(E2, (7, 1)), atol=1e-15)


def test_geodesic_antipodal_raises():
    with pytest.raises(AmbiguousGeodesicError):
        GeodesicFrame(E1, -E1)


def test_geodesic_constant_speed_and_unit_norm():
    rng = np.random.default_rng(7)
    minus = rng.normal(size=(5, 4))
    plus = rng.normal(size=(5, 4))
    minus /= np.linalg.norm(minus, axis=-1, keepdims=True)
    plus /= np.linalg.norm(plus, axis=-1, keepdims=True)
    frame = GeodesicFrame(minus, plus)
    tau = np.linspace(0.0, 1.0, 101)[:, None]
    values = geodesic_eval(frame, tau)
    assert np.max(np.abs(np.linalg.norm(values, axis=-1) - 1.0)) <= 1e-14

    step = 1e-5
    fd = (geodesic_eval(frame, tau + step) - geodesic_eval(frame, tau - step)) / (2 * step)
    speed = np.linalg.norm(fd, axis=-1)
    assert np.max(speed.max(axis=0) - speed.min(axis=0)) <= 1e-8
    assert_allclose(np.linalg.norm(geodesic_derivative(frame, tau), axis=-1),
                    np.broadcast_to(frame.angle, speed.shape), atol=1e-12)


def test_tangent_basis_completes_orthonormal_frame():
    rng = np.random.default_rng(11)
    minus, plus = rng.normal(size=4), rng.normal(size=4)
    frame = GeodesicFrame(minus / np.linalg.norm(minus), plus / np.linalg.norm(plus))
    for tau in (0.0, 0.3, 1.0):
        basis = np.vstack([geodesic_eval(frame, tau), tangent_basis(frame, tau)])
        assert_allclose(basis @ basis.T, np.eye(4), atol=1e-10)


def test_cutoff_support():
    s = np.array([0.0, 0.5, 1.0, -1.0, 1.5, 2.0, -2.5])
    xi = cutoff(s)
    assert np.all(xi[:4] == 1.0)
    assert 0.0 < xi[4] < 1.0
    assert np.all(xi[5:] == 0.0)


def test_uK_far_from_interface_is_outer_value(table):
    solution = build_uK(_radial(), table)
    points = _on_axis([1.7, 1.9])
    d = solution.distance(points)
    expected = 2.0 * solution.director.omega_plus(d)
    assert np.array_equal(solution(points), expected)


def test_uK_on_interface_and_in_tail(table, params):
    solution = build_uK(_radial(), table)
    on_gamma = solution(_on_axis(1.0))
    assert np.linalg.norm(on_gamma) == pytest.approx(math.sqrt(3.0), abs=1e-12)
    assert_allclose(on_gamma[0] / math.sqrt(3.0), [1.0, 0.0], atol=1e-12)

    wide = build_uK(_radial(delta=0.6), table)
    r_tail = 1.0 - 0.05 * table.z_max
    assert abs(wide.modulus(_on_axis(r_tail))[0] - params.a) <= 1e-10


def test_glue_is_exact_in_inner_and_outer_regions(table):
    solution = build_uK(_radial(), table)
    r = np.linspace(0.2, 1.8, 161)
    points = _on_axis(r)
    d = solution.distance(points)
    values = solution(points)
    inner = np.abs(d) <= 0.3
    outer = np.abs(d) >= 0.6
    assert np.array_equal(values[inner], solution.inner(points)[inner])
    assert np.array_equal(values[outer], solution.outer(points)[outer])


def test_uK_domain_errors(table):
    solution = build_uK(_radial(domain_length=2.0), table)
    with pytest.raises(DomainRangeError):
        solution(np.array([[np.nan, 0.0]]))
    with pytest.raises(DomainRangeError):
        solution(_on_axis(2.5))
    with pytest.raises(DomainRangeError):
        solution(np.array([[1.0]]))
    with pytest.raises(DomainRangeError):
        solution(_on_axis(1.0), t=0.6)


def test_flat_pure_profile_residual_is_small(table):
    cfg = ApproxConfig(m=1, eps=0.05, delta=0.3, slope_minus=0.0, slope_plus=0.0, phi_gamma=0.4,
                       geometry=InterfaceGeometry(kind="planar", offset=0.5))
    solution = build_uK(cfg, table)
    report = residual(solution, residual_points(solution, 401))
    assert report.sup <= 1e-3


@pytest.mark.slow
def test_K0_residual_grows_like_inverse_eps(table):
    cfg = ResidualRunConfig(eps_list=(0.1, 0.05, 0.025), slope_minus=1.0, slope_plus=1.0, residual_points=801)
    frame = residual_sweep(cfg, table)
    slope = loglog_slope(frame["eps"], frame["sup"])
    assert -1.4 <= slope <= -0.6


@pytest.mark.slow
def test_K1_corrector_reduces_residual(table):
    common = dict(eps_list=(0.1, 0.05, 0.025), weight="profile", slope_minus=1.0, slope_plus=0.25,
                  residual_points=801)
    without = residual_sweep(ResidualRunConfig(K=0, **common), table)
    with_corrector = residual_sweep(ResidualRunConfig(K=1, **common), table)
    assert np.all(with_corrector["sup"].to_numpy() < without["sup"].to_numpy())


def test_eta1_weight_cancels_first_order_defect(table):
    director = AngleDirector(slope_minus=1.0, slope_plus=0.25)
    assert np.max(np.abs(corrector_source(table, director, "eta1"))) <= 1e-8
    solution = angular_corrector(table, director, "eta1")
    assert np.max(np.abs(solution.v)) <= 1e-8


def test_profile_weight_corrector_matches_closed_form(table):
    director = AngleDirector(slope_minus=1.0, slope_plus=0.25)
    solution = angular_corrector(table, director, "profile")
    z = table.z_grid
    window = np.abs(z) <= 8.0
    expected = corrector_closed_form(table, director, "profile", z[window])
    assert_allclose(solution.v[window], expected, atol=1e-6)


def test_corrector_requires_flux_jump(table):
    with pytest.raises(CompatibilityError):
        angular_corrector(table, AngleDirector(slope_minus=1.0, slope_plus=1.0), "profile")


def test_two_point_A_limits_and_equation(table, params, potential):
    a, b = params.a, params.b
    solution = solve_two_point(table, lambda z: table.rho0_eval(z) - 0.5 * (a + b), kind="A")
    left, right = solution.limits
    assert left == pytest.approx(-0.5 * (b - a) / float(fA_at(a, potential)), abs=1e-6)
    assert right == pytest.approx(0.5 * (b - a) / float(fA_at(b, potential)), abs=1e-6)

    z, v = solution.z, solution.v
    step = table.spacing
    inside = slice(1, -1)
    second = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / step ** 2
    lhs = -second + fA_at(table.rho0[inside], potential) * v[inside]
    mask = np.abs(z[inside]) <= 3.0
    assert np.max(np.abs(lhs - (table.rho0[inside] - 0.5 * (a + b)))[mask]) <= 1e-3


def test_two_point_incompatible_source_raises(table):
    with pytest.raises(CompatibilityError):
        solve_two_point(table, np.ones_like(table.z_grid), kind="A")


def test_compat_quadrature(table, params):
    director = AngleDirector(slope_minus=1.0, slope_plus=0.25)
    geometry = InterfaceGeometry(kind="radial", radius=0.7)
    report = compat_mcf_quadrature(table, director, geometry)
    assert abs(report.residual) <= 1e-8
    assert abs(report.e_quadrature - energy_closed_form(params)) <= 1e-8
    forced = compat_mcf_quadrature(table, director, defect=1.0)
    assert forced.residual == pytest.approx(energy_closed_form(params), abs=1e-8)


def test_jump_identity_consistent_pair(table):
    v = np.array([0.3, -1.2])
    report = jump_identity_check(table, v, v / 4.0)
    assert report.deviation <= 1e-6
    assert_allclose(report.constant, v, atol=1e-6)
    assert_allclose(report.predicted, v, atol=1e-12)


def test_jump_identity_zero_and_violating_pairs(table):
    zero = np.zeros(2)
    assert jump_identity_check(table, zero, zero).deviation == 0.0
    v = np.array([0.0, 1.0])
    report = jump_identity_check(table, v, v)
    assert report.deviation > 0.1
    assert report.deviation == pytest.approx(3.0, rel=1e-6)


@pytest.mark.parametrize("weight", ["eta1", "profile"])
def test_boundary_terms_telescope(table, weight):
    rng = np.random.default_rng(5)
    dnu_minus, dnu_plus, xi = rng.normal(size=3), rng.normal(size=3), rng.normal(size=3)
    report = telescoping_check(table, dnu_minus, dnu_plus, xi, weight=weight)
    assert report.deviation <= 1e-6
    if weight == "profile":
        assert report.endpoint == pytest.approx(report.limit, abs=1e-6)


def test_residual_config_parses_eps_list():
    cfg = ResidualRunConfig(eps_list="0.1, 0.05,0.025")
    assert cfg.eps_list == (0.1, 0.05, 0.025)
    with pytest.raises(ValueError):
        ResidualRunConfig(eps_list="0.025,0.05")

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from services.potential_service import (
    Df_at, F_at, G_prime, G_second, ParameterError, PotentialParams, f_at, f1_taylor, fA_at, fB_at, fC_at,
    fD_at, make_params, profile_force, taylor_remainder,
)


def test_potential_vanishes_on_both_spheres(potential):
    theta = np.linspace(0.0, 2.0 * np.pi, 7)
    for radius in (1.0, 2.0):
        u = radius * np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        assert_allclose(F_at(u, potential), 0.0, atol=1e-14)
        assert_allclose(f_at(u, potential), 0.0, atol=1e-13)


def test_potential_is_nonnegative(potential):
    rng = np.random.default_rng(3)
    u = rng.normal(scale=2.0, size=(200, 3))
    assert np.all(F_at(u, potential) >= 0.0)


def test_force_matches_gradient_of_potential(potential):
    u = np.array([0.7, -1.1, 0.4])
    h = 1e-6
    grad = np.array([(F_at(u + h * e, potential) - F_at(u - h * e, potential)) / (2 * h) for e in np.eye(3)])
    assert_allclose(f_at(u, potential), grad, rtol=1e-7, atol=1e-8)


def test_jacobian_matches_finite_difference(potential):
    u = np.array([1.3, 0.5])
    h = 1e-6
    columns = [(f_at(u + h * e, potential) - f_at(u - h * e, potential)) / (2 * h) for e in np.eye(2)]
    assert_allclose(Df_at(u, potential), np.stack(columns, axis=-1), rtol=1e-7, atol=1e-7)


def test_jacobian_is_symmetric(potential):
    rng = np.random.default_rng(0)
    J = Df_at(rng.normal(size=(10, 3)), potential)
    assert_allclose(J, np.swapaxes(J, -1, -2))


def test_linearized_coefficients_at_wells(potential):
    assert fA_at(1.0, potential) == pytest.approx(18.0)
    assert fA_at(2.0, potential) == pytest.approx(72.0)
    assert fB_at(1.0, potential) == pytest.approx(0.0)
    assert fB_at(2.0, potential) == pytest.approx(0.0)


def test_fA_fB_are_radial_and_tangential_eigenvalues(potential):
    u = np.array([1.4, 0.0])
    J = Df_at(u, potential)
    assert J[0, 0] == pytest.approx(fA_at(1.4, potential))
    assert J[1, 1] == pytest.approx(fB_at(1.4, potential))


def test_fC_fD_are_derivatives(potential):
    rho = np.linspace(0.8, 2.3, 9)
    h = 1e-6
    dA = (fA_at(rho + h, potential) - fA_at(rho - h, potential)) / (2 * h)
    dB = (fB_at(rho + h, potential) - fB_at(rho - h, potential)) / (2 * h)
    assert_allclose(fC_at(rho, potential), dA, rtol=1e-6, atol=1e-6)
    assert_allclose(fD_at(rho, potential), dB, rtol=1e-6, atol=1e-6)


def test_G_second_is_derivative_of_G_prime(potential):
    s = np.linspace(0.5, 5.0, 11)
    h = 1e-6
    fd = (G_prime(s + h, potential) - G_prime(s - h, potential)) / (2 * h)
    assert_allclose(G_second(s, potential), fd, rtol=1e-6, atol=1e-6)


def test_profile_force_is_radial_force(potential):
    rho = np.linspace(1.0, 2.0, 5)
    u = np.stack([rho, np.zeros_like(rho)], axis=-1)
    assert_allclose(profile_force(rho, potential), f_at(u, potential)[:, 0])


def test_taylor_remainder_is_third_order(potential):
    v0 = np.array([[1.5, 0.2], [0.3, 1.2]])
    v1 = np.array([[0.4, -0.7], [1.0, 0.5]])
    r1 = taylor_remainder(v0, v1, 1e-2, potential)
    r2 = taylor_remainder(v0, v1, 5e-3, potential)
    assert 6.0 < r1 / r2 < 10.0


def test_second_order_coefficient_on_radial_line(potential):
    # 沿徑向時 f(v₀+εv₁) 的 ε² 係數是 f₁''(ρ)/2
    rho, d = 1.4, 1.0
    h = 1e-4
    second = (profile_force(rho + h, potential) - 2 * profile_force(rho, potential)
              + profile_force(rho - h, potential)) / h ** 2
    coef = f1_taylor(np.array([rho, 0.0]), np.array([d, 0.0]), potential)
    assert coef[0] == pytest.approx(0.5 * second, rel=1e-5)
    assert coef[1] == pytest.approx(0.0)


@pytest.mark.parametrize("a, b", [(2.0, 1.0), (1.0, 1.0), (-1.0, 2.0), (0.0, 2.0)])
def test_invalid_radii_are_rejected(a, b):
    with pytest.raises(ParameterError):
        make_params(a, b)


def test_params_are_frozen():
    p = PotentialParams()
    with pytest.raises(Exception):
        p.a = 3.0

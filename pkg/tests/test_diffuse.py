from __future__ import annotations

import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from services.diffuse_service import (
    METRIC_COLUMNS, BlowUpError, ConfigError, DiffuseRunConfig, StabilityError, Stepper, checkpoint_path,
    diffuse_config, front_values, initial_field, profile_values, run_diffuse, step,
)
from services.field_service import level_crossings, write_checkpoint
from services.potential_service import f_at


def _uniform(**overrides) -> DiffuseRunConfig:
    values = dict(grid="periodic", m=1, nx=16, eps=1.0, dt=1e-5, init="uniform", modulus=1.5, phi_gamma=0.7)
    values.update(overrides)
    return DiffuseRunConfig(**values)


def _circle(**overrides) -> DiffuseRunConfig:
    values = dict(grid="radial", m=2, nx=256, eps=0.05, dt=2e-5, radius=0.4, init="profile",
                  slope_minus=1.0, slope_plus=0.25)
    values.update(overrides)
    return DiffuseRunConfig(**values)


@pytest.mark.parametrize("scheme", ["explicit", "imex"])
def test_constant_well_is_stationary(scheme):
    cfg = DiffuseRunConfig(grid="periodic", m=2, nx=16, eps=0.1, dt=8e-5, scheme=scheme, init="uniform",
                           modulus=2.0, phi_gamma=0.3)
    field = initial_field(cfg)
    new = step(field, cfg)
    assert_allclose(new.values, field.values, atol=1e-13)


@pytest.mark.parametrize("scheme", ["explicit", "imex"])
def test_uniform_field_follows_reaction_ode(scheme, potential):
    cfg = _uniform(scheme=scheme, t_end=1e-3)
    field = initial_field(cfg)
    stepper = Stepper(cfg)
    for k in range(1, 101):
        field = stepper(field, k * cfg.dt)

    u0 = 1.5 * np.array([math.cos(0.7), math.sin(0.7)])
    ode = solve_ivp(lambda t, u: -f_at(u, potential) / cfg.eps ** 2, (0.0, 100 * cfg.dt), u0,
                    method="DOP853", rtol=1e-12, atol=1e-14)
    expected = np.broadcast_to(ode.y[:, -1], field.values.shape)
    assert np.max(np.abs(field.values - expected)) <= 1e-6
    # 模長確實往 a 移動
    assert np.linalg.norm(ode.y[:, -1]) < 1.5


def test_front_relaxes_to_profile(table):
    cfg = DiffuseRunConfig(grid="radial", m=1, nx=400, outer_bc="neumann", eps=0.05, dt=2e-5, t_end=0.05,
                           init="front", radius=0.5, metrics_every=500)
    result = run_diffuse(cfg)
    x = result.final.grid.radii
    modulus = result.modulus()
    crossings = level_crossings(x, modulus, float(table.rho0_eval(0.0)))
    assert len(crossings) == 1
    fitted = table.rho0_eval((x - crossings[0]) / cfg.eps)
    assert np.max(np.abs(modulus - fitted)) <= 5e-2


def test_front_direction_follows_arc():
    cfg = _circle(init="front", phi_minus=0.0, phi_plus=math.pi / 2)
    u = front_values(cfg, np.array([-1.0, 0.0, 1.0]))
    assert_allclose(np.linalg.norm(u, axis=-1), [1.0, 1.5, 2.0], atol=1e-12)
    # 介面上是弧的中點，兩側回到 ω∓
    assert_allclose(u[1] / 1.5, [math.sqrt(0.5), math.sqrt(0.5)], atol=1e-12)
    assert_allclose(u[0], [1.0, 0.0], atol=1e-12)
    assert_allclose(u[2], [0.0, 2.0], atol=1e-12)


def test_imex_energy_non_increasing_on_shrinking_circle(table):
    result = run_diffuse(_circle(t_end=5e-3, metrics_every=20), table=table)
    assert result.dissipative
    energy = result.metrics["energy"].to_numpy()
    assert np.all(np.diff(energy) <= 1e-9 * np.abs(energy[:-1]))
    radius = result.metrics["radius"].to_numpy()
    assert radius[0] == pytest.approx(0.4, abs=1e-2)
    assert radius[-1] < radius[0]


@pytest.mark.slow
def test_explicit_energy_non_increasing_at_stability_bound(table):
    cfg = _circle(scheme="explicit", dt=3e-6, t_end=9e-4, metrics_every=50)
    assert cfg.dt <= cfg.dt_limit
    result = run_diffuse(cfg, table=table)
    assert result.dissipative


@pytest.mark.parametrize("scheme", ["explicit", "imex"])
def test_step_is_rotation_equivariant(scheme, table):
    cfg = DiffuseRunConfig(grid="periodic", m=2, nx=16, n=3, eps=0.1, dt=8e-5, scheme=scheme, radius=0.25,
                           slope_minus=1.0, slope_plus=0.25)
    field = initial_field(cfg, table)
    q, _ = np.linalg.qr(np.random.default_rng(2).normal(size=(3, 3)))
    stepper = Stepper(cfg)
    rotated_first = stepper(field.rotated(q))
    rotated_after = stepper(field).rotated(q)
    assert_allclose(rotated_first.values, rotated_after.values, atol=1e-12)


def test_profile_seed_on_interface_and_in_bulk(table):
    cfg = _circle(nx=64)
    values = profile_values(cfg, np.array([0.0, -0.35, 0.55]), table)
    moduli = np.linalg.norm(values, axis=-1)
    assert moduli[0] == pytest.approx(math.sqrt(3.0), abs=1e-12)
    assert moduli[1] == pytest.approx(1.0, abs=1e-8)
    assert moduli[2] == pytest.approx(2.0, abs=1e-8)
    field = initial_field(cfg, table)
    assert field.boundary is not None
    assert np.linalg.norm(field.boundary) == pytest.approx(2.0, abs=1e-8)


def test_zero_duration_run_echoes_initial_state(tmp_path, table):
    cfg = _circle(nx=64, dt=8e-5, eps=0.1, t_end=0.0, checkpoint_every=1)
    result = run_diffuse(cfg, out_dir=str(tmp_path), table=table)
    assert np.array_equal(result.final.values, initial_field(cfg, table).values)
    assert result.step == 0 and len(result.metrics) == 1
    assert "checkpoints" not in result.files
    metrics = pd.read_csv(result.files["metrics"])
    assert list(metrics.columns) == METRIC_COLUMNS


def test_restart_reproduces_continuation_bit_for_bit(tmp_path, table):
    cfg = _circle(nx=64, dt=8e-5, eps=0.1, t_end=1.6e-3, checkpoint_every=5, metrics_every=5)
    full = run_diffuse(cfg, out_dir=str(tmp_path / "full"), table=table)
    assert len(full.files["checkpoints"]) == 4

    resumed = run_diffuse(cfg, out_dir=str(tmp_path / "resumed"),
                          restart=checkpoint_path(str(tmp_path / "full"), 10))
    assert resumed.step == full.step
    assert np.array_equal(resumed.final.values, full.final.values)
    tail = full.metrics[full.metrics["step"] >= 10].reset_index(drop=True)
    assert np.array_equal(resumed.metrics["energy"].to_numpy(), tail["energy"].to_numpy())


def test_file_seed_round_trip_and_grid_mismatch(tmp_path, table):
    cfg = _circle(nx=64, dt=8e-5, eps=0.1)
    field = initial_field(cfg, table)
    path = write_checkpoint(str(tmp_path / "seed.bin"), field, 0.0, cfg.eps)
    loaded = initial_field(cfg.model_copy(update={"init": "file", "seed_file": path}))
    assert np.array_equal(loaded.values, field.values)
    assert np.array_equal(loaded.boundary, field.boundary)
    with pytest.raises(ConfigError):
        initial_field(cfg.model_copy(update={"init": "file", "seed_file": path, "nx": 32}))


def test_blow_up_reports_time_and_modulus():
    cfg = _uniform(scheme="explicit", modulus=1e80)
    with pytest.raises(BlowUpError) as excinfo:
        step(initial_field(cfg), cfg, t=cfg.dt)
    assert excinfo.value.t == cfg.dt
    assert math.isinf(excinfo.value.max_modulus)


def test_config_validation_and_stability():
    with pytest.raises(StabilityError):
        diffuse_config({"scheme": "explicit", "nx": 256, "eps": 0.05, "dt": 1e-4})
    with pytest.raises(StabilityError):
        diffuse_config({"scheme": "imex", "eps": 0.05, "dt": 1e-4})
    with pytest.raises(ConfigError):
        diffuse_config({"unknown": 1})
    with pytest.raises(ConfigError):
        diffuse_config({"init": "file"})
    cfg = diffuse_config({"scheme": "imex", "eps": 0.05, "dt": 2e-5, "t_end": 0.01})
    assert cfg.steps == 500

from __future__ import annotations

import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from services.field_service import (
    CheckpointError, GridError, InterfaceGeometry, NoInterfaceError, OuterBoundary, PeriodicGrid, RadialGrid,
    VectorField, energy, gradient_inner_product, inner_product, interface_extract, laplacian, laplacian_matrix,
    laplacian_values, read_checkpoint, signed_distance, write_checkpoint, write_slice_csv,
)


def _random_field(grid, n=2, seed=0, boundary=None):
    rng = np.random.default_rng(seed)
    return VectorField(grid, rng.normal(size=grid.shape + (n,)), boundary)


def test_laplacian_of_constant_is_zero():
    grid = PeriodicGrid(m=2, sizes=(32, 16), lengths=(1.0, 0.5))
    field = VectorField(grid, np.full(grid.shape + (3,), 1.7))
    assert np.all(laplacian(field).values == 0.0)


def test_laplacian_fourier_eigenfunction():
    L = 2.0
    grid = PeriodicGrid(m=1, sizes=(256,), lengths=(L,))
    x = grid.axes()[0]
    u = np.sin(2 * np.pi * x / L)[:, None]
    lap = laplacian(VectorField(grid, u)).values
    k2 = (2 * np.pi / L) ** 2
    assert np.max(np.abs(lap + k2 * u)) <= 1e-3 * k2


def test_laplacian_is_linear():
    grid = PeriodicGrid(m=2, sizes=(24, 24), lengths=(1.0, 1.0))
    u, v = _random_field(grid, seed=1), _random_field(grid, seed=2)
    combo = VectorField(grid, 2.5 * u.values - 0.75 * v.values)
    expected = 2.5 * laplacian(u).values - 0.75 * laplacian(v).values
    assert_allclose(laplacian(combo).values, expected, rtol=1e-12, atol=1e-9)


def test_periodic_summation_by_parts():
    grid = PeriodicGrid(m=2, sizes=(32, 20), lengths=(1.0, 0.7))
    u, v = _random_field(grid, seed=3), _random_field(grid, seed=4)
    lhs = inner_product(laplacian(u), v)
    rhs = -gradient_inner_product(u, v)
    assert lhs == pytest.approx(rhs, rel=1e-11)


@pytest.mark.parametrize("outer_bc", [OuterBoundary.DIRICHLET, OuterBoundary.NEUMANN])
@pytest.mark.parametrize("m", [1, 2])
def test_radial_summation_by_parts(outer_bc, m):
    grid = RadialGrid(m=m, size=40, length=1.5, outer_bc=outer_bc)
    boundary = np.zeros(2) if outer_bc == OuterBoundary.DIRICHLET else None
    u = _random_field(grid, seed=5, boundary=boundary)
    v = _random_field(grid, seed=6, boundary=boundary)
    assert inner_product(laplacian(u), v) == pytest.approx(-gradient_inner_product(u, v), rel=1e-11)


def test_radial_laplacian_of_r_squared():
    grid = RadialGrid(m=2, size=64, length=1.0, outer_bc=OuterBoundary.NEUMANN)
    u = VectorField(grid, (grid.radii ** 2)[:, None])
    assert_allclose(laplacian(u).values[:-1, 0], 4.0, rtol=1e-10)


def test_sparse_matrix_matches_stencil():
    grid = PeriodicGrid(m=2, sizes=(16, 24), lengths=(1.0, 2.0))
    u = _random_field(grid, n=1, seed=7)
    L, source = laplacian_matrix(grid)
    assert_allclose(L @ u.values.reshape(-1), laplacian(u).values.reshape(-1), rtol=1e-12, atol=1e-9)
    assert np.all(source == 0.0)

    radial = RadialGrid(m=2, size=32, length=1.0)
    boundary = np.array([0.3, -1.2])
    w = _random_field(radial, seed=8, boundary=boundary)
    L, source = laplacian_matrix(radial)
    expected = L @ w.values + source[:, None] * boundary[None, :]
    assert_allclose(expected, laplacian(w).values, rtol=1e-12, atol=1e-9)


def test_signed_distance_radial():
    geom = InterfaceGeometry(kind="radial", center=(0.5, 0.5), radius=0.3)
    assert signed_distance(geom, [0.8, 0.5]) == pytest.approx(0.0, abs=1e-15)
    assert signed_distance(geom, [0.5, 0.5 + 0.35]) == pytest.approx(0.05)
    assert signed_distance(geom, [0.5, 0.5]) == pytest.approx(-0.3)


def test_signed_distance_eikonal():
    geom = InterfaceGeometry(kind="radial", center=(0.0, 0.0), radius=0.4)
    h = 1e-5
    rng = np.random.default_rng(9)
    for x in rng.uniform(0.2, 1.0, size=(10, 2)):
        grad = [(signed_distance(geom, x + h * e) - signed_distance(geom, x - h * e)) / (2 * h) for e in np.eye(2)]
        assert np.linalg.norm(grad) == pytest.approx(1.0, abs=1e-3)


def test_signed_distance_planar_orientation():
    geom = InterfaceGeometry(kind="planar", axis=0, offset=0.5, orientation=-1)
    assert signed_distance(geom, [0.2]) == pytest.approx(0.3)
    assert signed_distance(geom, [0.7]) == pytest.approx(-0.2)


def test_energy_of_well_state_is_zero(potential):
    grid = PeriodicGrid(m=2, sizes=(16, 16), lengths=(1.0, 1.0))
    omega = np.array([0.6, 0.8])
    field = VectorField(grid, np.broadcast_to(2.0 * omega, grid.shape + (2,)).copy())
    assert energy(field, 0.1, potential) == pytest.approx(0.0, abs=1e-20)


def test_energy_of_profile_front(table, potential):
    eps = 0.05
    grid = PeriodicGrid(m=1, sizes=(2048,), lengths=(2.0,))
    x = grid.axes()[0]
    d = 0.5 - np.abs(x - 1.0)
    u = table.rho0_eval(d / eps)[:, None] * np.array([[1.0, 0.0]])
    field = VectorField(grid, u)
    # 兩個介面，每個貢獻 e/ε
    assert energy(field, eps, potential) == pytest.approx(2.0 * table.e_const / eps, rel=0.02)


def test_energy_rotation_invariant(potential):
    grid = PeriodicGrid(m=2, sizes=(20, 20), lengths=(1.0, 1.0))
    field = _random_field(grid, n=2, seed=10)
    c, s = math.cos(0.7), math.sin(0.7)
    Q = np.array([[c, -s], [s, c]])
    assert energy(field.rotated(Q), 0.2, potential) == pytest.approx(energy(field, 0.2, potential), rel=1e-12)


def test_extract_radial_grid(table, potential):
    eps, R = 0.02, 0.5
    grid = RadialGrid(m=2, size=256, length=1.0)
    u = table.rho0_eval((grid.radii - R) / eps)[:, None] * np.array([[0.0, 1.0]])
    field = VectorField(grid, u, boundary=np.array([0.0, 2.0]))
    geom = interface_extract(field, potential)
    assert abs(geom.radius - R) <= 1.5 * grid.h


def test_extract_radial_on_periodic_grid(table, potential):
    eps, R = 0.02, 0.3
    grid = PeriodicGrid(m=2, sizes=(128, 128), lengths=(1.0, 1.0))
    geom_true = InterfaceGeometry(kind="radial", center=(0.5, 0.5), radius=R)
    d = signed_distance(geom_true, grid.points())
    field = VectorField(grid, table.rho0_eval(d / eps)[..., None] * np.array([1.0, 0.0]))
    geom = interface_extract(field, potential, kind="radial")
    assert abs(geom.radius - R) <= 1.5 * grid.min_spacing


def test_extract_planar_front(table, potential):
    eps, x0 = 0.02, 0.4
    grid = PeriodicGrid(m=1, sizes=(256,), lengths=(1.0,))
    u = table.rho0_eval((grid.axes()[0] - x0) / eps)[:, None] * np.array([[1.0, 0.0, 0.0]])
    geom = interface_extract(VectorField(grid, u), potential, kind="planar")
    assert geom.kind == "planar"
    assert geom.orientation == 1
    assert abs(geom.offset - x0) <= 1.5 * grid.min_spacing


def test_extract_without_interface(potential):
    grid = PeriodicGrid(m=1, sizes=(64,), lengths=(1.0,))
    field = VectorField(grid, np.tile([0.0, 2.0], (64, 1)))
    with pytest.raises(NoInterfaceError):
        interface_extract(field, potential, kind="planar")


def test_checkpoint_restores_field_exactly(tmp_path):
    grid = RadialGrid(m=2, size=33, length=0.9)
    field = _random_field(grid, n=3, seed=11, boundary=np.array([0.0, 0.0, 1.0]))
    path = write_checkpoint(str(tmp_path / "state.bin"), field, time=0.125, eps=0.05, step=42)
    restored = read_checkpoint(path)
    assert np.array_equal(restored.field.values, field.values)
    assert np.array_equal(restored.field.boundary, field.boundary)
    assert restored.field.grid == grid
    assert (restored.time, restored.eps, restored.step) == (0.125, 0.05, 42)


def test_checkpoint_rejects_foreign_file(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"not a checkpoint at all")
    with pytest.raises(CheckpointError):
        read_checkpoint(str(path))


def test_checkpoint_rejects_truncated_file(tmp_path):
    grid = PeriodicGrid(m=1, sizes=(16,), lengths=(1.0,))
    path = write_checkpoint(str(tmp_path / "s.bin"), _random_field(grid), time=0.0, eps=0.1)
    data = open(path, "rb").read()
    with open(path, "wb") as fh:
        fh.write(data[:-8])
    with pytest.raises(CheckpointError):
        read_checkpoint(path)


def test_slice_csv(tmp_path):
    grid = PeriodicGrid(m=2, sizes=(16, 16), lengths=(1.0, 1.0))
    path = write_slice_csv(_random_field(grid, n=2), str(tmp_path / "slice.csv"))
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["x", "u0", "u1", "modulus"]
    assert len(frame) == 16


def test_field_validation():
    grid = PeriodicGrid(m=1, sizes=(16,), lengths=(1.0,))
    with pytest.raises(GridError):
        VectorField(grid, np.zeros((17, 2)))
    with pytest.raises(GridError):
        VectorField(grid, np.full((16, 2), np.nan))
    with pytest.raises(GridError):
        VectorField(RadialGrid(m=2, size=16, length=1.0), np.zeros((16, 2)))
    with pytest.raises(ValueError):
        PeriodicGrid(m=1, sizes=(8,), lengths=(1.0,))
    assert laplacian_values(grid, np.zeros((16, 1))).shape == (16, 1)

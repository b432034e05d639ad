"""
初始條件 - 剖面種子、tanh 前緣、常數場、檢查點檔
"""

import logging
from typing import Optional, Tuple

import numpy as np

from services.expansion_service import GeodesicFrame, geodesic_eval
from services.field_service import (
    CheckpointError, InterfaceGeometry, OuterBoundary, RadialGrid, VectorField, read_checkpoint, signed_distance,
)
from services.profile_service import ProfileTable, build_table
from services.sharp_service import directors_from_angle

from .exceptions import ConfigError
from .models import DiffuseRunConfig

logger = logging.getLogger(__name__)


def seed_distance(cfg: DiffuseRunConfig, grid) -> Tuple[np.ndarray, Optional[float]]:
    """
    節點上的符號距離 (Ω⁻ 在圓內為負) 與外邊界 r = length 的距離

    週期網格沒有外邊界，第二個值是 None。
    """
    if isinstance(grid, RadialGrid):
        return grid.radii - cfg.radius, cfg.length - cfg.radius
    geom = InterfaceGeometry(kind="radial", center=cfg.center, radius=cfg.radius)
    return signed_distance(geom, grid.points()), None


def seed_directors(cfg: DiffuseRunConfig, d) -> Tuple[np.ndarray, np.ndarray]:
    """ω∓ = ω(φ∓)，φ∓ 預設 phi_gamma + slope_∓·d，給了 phi_minus/phi_plus 就用常數角"""
    d = np.asarray(d, dtype=float)
    if cfg.phi_minus is None:
        phi_minus = cfg.phi_gamma + cfg.slope_minus * d
    else:
        phi_minus = np.full(d.shape, cfg.phi_minus)
    if cfg.phi_plus is None:
        phi_plus = cfg.phi_gamma + cfg.slope_plus * d
    else:
        phi_plus = np.full(d.shape, cfg.phi_plus)
    return directors_from_angle(phi_minus, cfg.n), directors_from_angle(phi_plus, cfg.n)


def _interpolate(cfg: DiffuseRunConfig, d: np.ndarray, rho: np.ndarray, tau: np.ndarray) -> np.ndarray:
    omega_minus, omega_plus = seed_directors(cfg, d)
    omega_bar = geodesic_eval(GeodesicFrame(omega_minus, omega_plus), tau)
    return rho[..., None] * omega_bar


def profile_values(cfg: DiffuseRunConfig, d, table: ProfileTable) -> np.ndarray:
    """u = ρ₀(d/ε)·ω̄(η₁(d/ε))"""
    d = np.asarray(d, dtype=float)
    z = d / cfg.eps
    return _interpolate(cfg, d, table.rho0_eval(z), table.eta1_eval(z))


def front_values(cfg: DiffuseRunConfig, d) -> np.ndarray:
    """|u| = a + (b-a)(1 + tanh(d/ε))/2，方向沿弧線性推進"""
    d = np.asarray(d, dtype=float)
    tau = 0.5 * (1.0 + np.tanh(d / cfg.eps))
    return _interpolate(cfg, d, cfg.a + (cfg.b - cfg.a) * tau, tau)


def uniform_values(cfg: DiffuseRunConfig, shape) -> np.ndarray:
    modulus = cfg.b if cfg.modulus is None else cfg.modulus
    omega = directors_from_angle(cfg.phi_gamma, cfg.n)
    return np.broadcast_to(modulus * omega, tuple(shape) + (cfg.n,)).copy()


def _needs_boundary(grid) -> bool:
    return isinstance(grid, RadialGrid) and grid.outer_bc == OuterBoundary.DIRICHLET


def load_seed(cfg: DiffuseRunConfig, grid) -> VectorField:
    try:
        checkpoint = read_checkpoint(cfg.seed_file)
    except CheckpointError as e:
        logger.error(f"初始條件檔讀取失敗: {str(e)}")
        raise ConfigError(f"無法讀取 seed_file: {str(e)}") from e
    field = checkpoint.field
    if field.grid != grid or field.n != cfg.n:
        raise ConfigError(f"seed_file 的網格或 n 與設定不符: {field.grid} n={field.n}")
    return field


def initial_field(cfg: DiffuseRunConfig, table: Optional[ProfileTable] = None) -> VectorField:
    """
    依 cfg.init 建立初始場

    Args:
        cfg: 執行參數
        table: 剖面表，只有 init=profile 會用到；省略時依 a, b 建表

    Returns:
        VectorField: Dirichlet 徑向網格的外邊界值取同一公式在 r = length 的值
    """
    grid = cfg.grid_model()
    if cfg.init == "file":
        return load_seed(cfg, grid)

    if cfg.init == "uniform":
        values = uniform_values(cfg, grid.shape)
        boundary = values.reshape(-1, cfg.n)[0] if _needs_boundary(grid) else None
        return VectorField(grid, values, boundary)

    d, d_outer = seed_distance(cfg, grid)
    if cfg.init == "profile":
        if table is None:
            table = build_table(cfg.profile_params)
        elif (table.params.a, table.params.b) != (cfg.a, cfg.b):
            raise ConfigError(f"剖面表參數 (a={table.params.a}, b={table.params.b}) 與設定不符")
        evaluate = lambda dist: profile_values(cfg, dist, table)
    else:
        evaluate = lambda dist: front_values(cfg, dist)

    values = evaluate(d)
    boundary = evaluate(np.array([d_outer]))[0] if _needs_boundary(grid) else None
    logger.info(f"初始場建立完成: init={cfg.init}, grid={cfg.grid}, nx={cfg.nx}, eps={cfg.eps}")
    return VectorField(grid, values, boundary)

"""
極限系統執行器 - 每步先 mcf_step 再 harmonic_flow_step (Lie 分裂)
"""

import logging
import os
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import ValidationError

from .exceptions import ConfigError
from .harmonic import TransmissionGrid, harmonic_flow_step
from .mcf import mcf_step
from .models import SharpResult, SharpRunConfig, SharpState

logger = logging.getLogger(__name__)


def sharp_config(values: dict) -> SharpRunConfig:
    """dict 轉成 SharpRunConfig，驗證失敗轉成 ConfigError"""
    try:
        return SharpRunConfig(**values)
    except ValidationError as e:
        logger.error(f"銳利介面參數不合法: {str(e)}")
        raise ConfigError(f"銳利介面參數不合法: {str(e)}") from e


def transmission_grid(cfg: SharpRunConfig) -> TransmissionGrid:
    return TransmissionGrid(kind=cfg.geometry, m=cfg.m if cfg.geometry == "radial" else 1,
                            size=cfg.nx, length=cfg.length)


def initial_angle(cfg: SharpRunConfig, x) -> np.ndarray:
    """分段線性角度 φ = phi_gamma + slope_∓·d"""
    x = np.asarray(x, dtype=float)
    if cfg.geometry == "radial":
        d = x - cfg.radius
    else:
        d = cfg.orientation * (x - cfg.offset)
    return cfg.phi_gamma + np.where(d < 0.0, cfg.slope_minus, cfg.slope_plus) * d


def directors_from_angle(phi, n: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    omega = np.zeros(phi.shape + (n,))
    if n == 1:
        omega[..., 0] = 1.0
        return omega
    omega[..., 0] = np.cos(phi)
    omega[..., 1] = np.sin(phi)
    return omega


def angle_from_directors(omega: np.ndarray) -> np.ndarray:
    """n ≥ 2 時取前兩個分量的幅角，沿網格展開避免 2π 跳動"""
    omega = np.asarray(omega, dtype=float)
    if omega.shape[-1] == 1:
        return np.zeros(omega.shape[:-1])
    return np.unwrap(np.arctan2(omega[..., 1], omega[..., 0]), axis=0)


def boundary_values(cfg: SharpRunConfig) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """(左端值, 右端值)；radial 左端是對稱軸，回傳 None"""
    phi_right = cfg.phi_right if cfg.phi_right is not None else float(initial_angle(cfg, cfg.length))
    right = directors_from_angle(phi_right, cfg.n)
    if cfg.geometry == "radial":
        return None, right
    phi_left = cfg.phi_left if cfg.phi_left is not None else float(initial_angle(cfg, 0.0))
    return directors_from_angle(phi_left, cfg.n), right


def conductivities(cfg: SharpRunConfig, state: SharpState) -> Tuple[float, float]:
    """(k_L, k_R)：Ω⁻ 一側 a²，Ω⁺ 一側 b²"""
    minus, plus = cfg.a ** 2, cfg.b ** 2
    return (minus, plus) if state.left_is_minus else (plus, minus)


def initial_state(cfg: SharpRunConfig) -> SharpState:
    grid = transmission_grid(cfg)
    omega = directors_from_angle(initial_angle(cfg, grid.nodes), cfg.n)
    gamma = directors_from_angle(cfg.phi_gamma, cfg.n)
    return SharpState(t=0.0, geometry=cfg.geometry_model(), omega=omega, omega_gamma=gamma)


def _metric_row(state: SharpState) -> dict:
    norms = np.linalg.norm(state.omega, axis=-1)
    if state.omega_gamma.shape[-1] >= 2:
        phi_gamma = float(np.arctan2(state.omega_gamma[1], state.omega_gamma[0]))
    else:
        phi_gamma = float(state.omega_gamma[0])
    return {
        "t": state.t,
        "R": 0.0 if state.extinct else state.interface_position,
        "jump_residual": state.jump_residual,
        "phi_gamma": phi_gamma,
        "norm_defect": float(np.max(np.abs(norms - 1.0))),
    }


def advance(cfg: SharpRunConfig, grid: TransmissionGrid, state: SharpState,
            left_value, right_value) -> Tuple[SharpState, float]:
    """一個分裂步；回傳 (新狀態, 切向量)"""
    moved = mcf_step(state, cfg.dt, cfg.m if cfg.geometry == "radial" else 1)
    if moved.extinct:
        return moved, 0.0
    k_left, k_right = conductivities(cfg, moved)
    omega, gamma, residual, tangency = harmonic_flow_step(
        grid, moved.omega, cfg.dt, moved.interface_position, k_left, k_right, left_value, right_value)
    return replace(moved, omega=omega, omega_gamma=gamma, jump_residual=residual), tangency


def slice_table(grid: TransmissionGrid, state: SharpState) -> pd.DataFrame:
    frame = pd.DataFrame({"x": grid.nodes, "phi": angle_from_directors(state.omega)})
    for k in range(state.omega.shape[-1]):
        frame[f"omega{k}"] = state.omega[:, k]
    return frame


def run_sharp(cfg: SharpRunConfig, out_dir: Optional[str] = None) -> SharpResult:
    """
    推進到 t_end 或介面消失

    Args:
        cfg: 執行參數
        out_dir: 輸出目錄，覆蓋 cfg.out_dir；兩者都沒有就不寫檔

    Returns:
        SharpResult: 最終狀態、指標表 (t, R, jump_residual, phi_gamma, norm_defect)
    """
    grid = transmission_grid(cfg)
    left_value, right_value = boundary_values(cfg)
    state = initial_state(cfg)
    steps = int(round(cfg.t_end / cfg.dt))
    rows = [_metric_row(state)]
    worst_tangency = -np.inf
    logger.info(f"銳利介面計算開始: geometry={cfg.geometry}, nx={cfg.nx}, steps={steps}")

    for k in range(1, steps + 1):
        state, tangency = advance(cfg, grid, state, left_value, right_value)
        worst_tangency = max(worst_tangency, tangency)
        if state.extinct:
            rows.append(_metric_row(state))
            break
        if k % cfg.metrics_every == 0 or k == steps:
            rows.append(_metric_row(state))

    metrics = pd.DataFrame(rows)
    logger.info(f"銳利介面計算結束: t={state.t:.6f}, max tangency={worst_tangency:.3e}, "
                f"max jump residual={metrics['jump_residual'].max():.3e}")
    result = SharpResult(config=cfg, final=state, metrics=metrics, nodes=grid.nodes)

    target = out_dir or cfg.out_dir
    if target:
        os.makedirs(target, exist_ok=True)
        metrics_path = os.path.join(target, "metrics.csv")
        slice_path = os.path.join(target, "slice.csv")
        metrics.to_csv(metrics_path, index=False, float_format="%.17g")
        slice_table(grid, state).to_csv(slice_path, index=False, float_format="%.17g")
        result.files = {"metrics": metrics_path, "slice": slice_path}
        logger.info(f"銳利介面輸出已寫入: {target}")
    return result

"""
調和映射熱流 - 一維網格上的顯式熱方程加投影，介面用 2×2 系統耦合

節點 x_i = (i+½)h。介面位於節點 j 與 j+1 之間，兩側單邊斜率
s_L = (ω_Γ⁻ - ω_j)/d_L、s_R = (ω_{j+1} - ω_Γ⁺)/d_R，解
    ω_Γ⁻ - ω_Γ⁺ = 0
    k_L s_L = k_R s_R
其中 Ω⁻ 一側 k = a²，Ω⁺ 一側 k = b²。
"""

import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from .config import SharpConfig
from .exceptions import DegenerateDirectorError

logger = logging.getLogger(__name__)


class TransmissionGrid(BaseModel):
    """radial 在 r=0 對稱；planar 兩端都是 Dirichlet"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: str
    m: int
    size: int
    length: float

    @property
    def h(self) -> float:
        return self.length / self.size

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.size) + 0.5) * self.h

    @property
    def faces(self) -> np.ndarray:
        return np.arange(self.size + 1) * self.h

    def radial_weight(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "planar" or self.m == 1:
            return np.ones_like(x)
        return x ** (self.m - 1)


def locate_interface(grid: TransmissionGrid, position: float) -> Optional[Tuple[int, float, float]]:
    """
    回傳 (j, d_L, d_R)；介面不在兩個節點之間時回傳 None

    d_L 限制在 [gap·h, (1-gap)·h]
    """
    h = grid.h
    j = int(np.floor(position / h - 0.5))
    if j < 0 or j >= grid.size - 1:
        return None
    gap = SharpConfig.MIN_INTERFACE_GAP * h
    d_left = min(max(position - (j + 0.5) * h, gap), h - gap)
    return j, d_left, h - d_left


def interface_solve(left: np.ndarray, right: np.ndarray, d_left: float, d_right: float,
                    k_left: float, k_right: float) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    連續 + 通量跳躍條件的 2×2 求解，所有分量共用同一個矩陣

    Returns:
        (ω_Γ⁻, ω_Γ⁺, 跳躍殘差 max|k_R s_R - k_L s_L|)
    """
    matrix = np.array([[1.0, -1.0], [k_left / d_left, k_right / d_right]])
    rhs = np.vstack([np.zeros_like(left), k_left * left / d_left + k_right * right / d_right])
    solution = np.linalg.solve(matrix, rhs)
    gamma_left, gamma_right = solution[0], solution[1]
    s_left = (gamma_left - left) / d_left
    s_right = (right - gamma_right) / d_right
    residual = float(np.max(np.abs(k_right * s_right - k_left * s_left), initial=0.0))
    return gamma_left, gamma_right, residual


def _normalize(values: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(values, axis=-1)
    smallest = float(np.min(norms))
    if smallest < SharpConfig.DEGENERATE_NORM:
        logger.error(f"指向場退化: min|ω|={smallest:.3e}")
        raise DegenerateDirectorError(f"正規化前 |ω| = {smallest:.3e} < {SharpConfig.DEGENERATE_NORM}")
    return values / norms[..., None]


def diffusion(grid: TransmissionGrid, omega: np.ndarray, position: Optional[float],
              k_left: float, k_right: float,
              left_value: Optional[np.ndarray], right_value: np.ndarray):
    """
    有限體積離散 Δω，介面兩側的面通量換成 2×2 解出的單邊斜率

    omega 可以是 (N, n) 或 (N,)；後者就是角度變數 φ。
    Returns:
        (Δω, ω_Γ 或 None, 跳躍殘差)
    """
    values = np.asarray(omega, dtype=float)
    scalar = values.ndim == 1
    if scalar:
        values = values[:, None]
    h = grid.h
    n_nodes = grid.size

    slopes = np.empty((n_nodes + 1, values.shape[1]))
    slopes[1:-1] = np.diff(values, axis=0) / h
    if grid.kind == "radial":
        slopes[0] = 0.0
    else:
        slopes[0] = (values[0] - np.atleast_1d(left_value)) / (0.5 * h)
    slopes[-1] = (np.atleast_1d(right_value) - values[-1]) / (0.5 * h)

    face_weight = grid.radial_weight(grid.faces)[:, None]
    right_flux = face_weight[1:] * slopes[1:]
    left_flux = face_weight[:-1] * slopes[:-1]

    gamma, residual = None, 0.0
    located = None if position is None else locate_interface(grid, position)
    if located is not None:
        j, d_left, d_right = located
        gamma_left, _, residual = interface_solve(values[j], values[j + 1], d_left, d_right, k_left, k_right)
        s_left = (gamma_left - values[j]) / d_left
        s_right = (k_left / k_right) * s_left
        weight = float(grid.radial_weight(position))
        right_flux[j] = weight * s_left
        left_flux[j + 1] = weight * s_right
        gamma = gamma_left
    elif position is not None:
        logger.warning(f"介面 {position:.4f} 不在兩節點之間，本步不做介面耦合")

    node_weight = grid.radial_weight(grid.nodes)[:, None]
    lap = (right_flux - left_flux) / (node_weight * h)
    if scalar:
        lap = lap[:, 0]
        gamma = None if gamma is None else float(gamma[0])
    return lap, gamma, residual


def harmonic_flow_step(grid: TransmissionGrid, omega: np.ndarray, dt: float, position: Optional[float],
                       k_left: float, k_right: float,
                       left_value: Optional[np.ndarray], right_value: np.ndarray):
    """
    ∂ₜω = Δω + |∇ω|²ω 的一步：顯式熱方程後投影回球面

    Returns:
        (新 ω, 正規化後 ω_Γ, 跳躍殘差, 切向量 max (ω'-ω)·ω)
    """
    lap, gamma, residual = diffusion(grid, omega, position, k_left, k_right, left_value, right_value)
    advanced = omega + dt * lap
    tangency = float(np.max(np.sum((advanced - omega) * omega, axis=-1)))
    new_omega = _normalize(advanced)
    if gamma is None:
        gamma = new_omega[-1] if position is None else new_omega[min(int(position / grid.h), grid.size - 1)]
    else:
        gamma = _normalize(gamma)
    return new_omega, gamma, residual, tangency

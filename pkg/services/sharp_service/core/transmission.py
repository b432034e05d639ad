"""
角度變數的兩區域傳輸問題

n=2 時 ω = (cos φ, sin φ)，調和映射熱流化成 φ 的熱方程，介面條件變成 k_L φ'_L = k_R φ'_R。
穩態可以直接用稀疏矩陣解，當作時間推進結果的對照。
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from .harmonic import TransmissionGrid, diffusion, locate_interface

logger = logging.getLogger(__name__)


def closed_form_interface_value(phi_left: float, phi_right: float, k_left: float, k_right: float,
                                width_left: float = 1.0, width_right: float = 1.0) -> float:
    """φ_Γ = φ_L + (φ_R-φ_L)·(w_L/k_L)/(w_L/k_L + w_R/k_R)"""
    resist_left = width_left / k_left
    resist_right = width_right / k_right
    return phi_left + (phi_right - phi_left) * resist_left / (resist_left + resist_right)


def _conductances(grid: TransmissionGrid, position: Optional[float], k_left: float, k_right: float):
    """每個節點左右面的 r^{m-1}·斜率係數，介面處兩側不同"""
    h = grid.h
    face_weight = grid.radial_weight(grid.faces)
    right = face_weight[1:] / h
    left = face_weight[:-1] / h
    if grid.kind == "planar":
        left[0] *= 2.0
        right[-1] *= 2.0
    else:
        left[0] = 0.0
        right[-1] *= 2.0

    located = None if position is None else locate_interface(grid, position)
    if located is not None:
        j, d_left, d_right = located
        coupling = k_right / (d_right * k_left + d_left * k_right)
        weight = float(grid.radial_weight(position))
        right[j] = weight * coupling
        left[j + 1] = weight * (k_left / k_right) * coupling
    return left, right, located


def steady_transmission(grid: TransmissionGrid, position: float, k_left: float, k_right: float,
                        phi_left: float, phi_right: float) -> Tuple[np.ndarray, float]:
    """
    直接求解離散穩態 Δφ = 0

    Returns:
        (節點上的 φ, 介面值 φ_Γ)
    """
    left, right, located = _conductances(grid, position, k_left, k_right)
    n_nodes = grid.size
    diagonal = left + right
    lower = -left[1:]
    upper = -right[:-1]
    matrix = sparse.diags([lower, diagonal, upper], [-1, 0, 1], format="csc")
    rhs = np.zeros(n_nodes)
    if grid.kind == "planar":
        rhs[0] += left[0] * phi_left
    rhs[-1] += right[-1] * phi_right
    phi = spsolve(matrix, rhs)

    if located is None:
        gamma = float(np.interp(position, grid.nodes, phi))
    else:
        j, d_left, _ = located
        slope = right[j] / float(grid.radial_weight(position)) * (phi[j + 1] - phi[j])
        gamma = float(phi[j] + d_left * slope)
    logger.info(f"穩態傳輸解: φ_Γ={gamma:.12f}")
    return phi, gamma


def angle_heat_step(grid: TransmissionGrid, phi: np.ndarray, dt: float, position: Optional[float],
                    k_left: float, k_right: float,
                    phi_left: Optional[float], phi_right: float) -> np.ndarray:
    """角度變數的顯式熱方程一步，和投影格式用同一套通量"""
    lap, _, _ = diffusion(grid, phi, position, k_left, k_right, phi_left, phi_right)
    return phi + dt * lap

"""
兩點問題 -v'' + f_A(ρ₀)v = h 與 -v'' + f_B(ρ₀)v = h

齊次解 θ₁ = ρ₀' (f_A) 與 θ₂ = ρ₀ (f_B)。令 v = θw：
    (θ²w')' = -θh  ⇒  θ²w' = ∫_z^∞ θh,  w(0) = 0
z ≥ 0 從右端往回積分，z < 0 用相容條件改寫成 -∫_{-∞}^z θh，兩邊都不會有大數相消。
"""

import logging
import math
from typing import Callable, Union

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from services.potential_service import fA_at, fB_at
from services.profile_service import ProfileTable

from .config import ExpansionConfig
from .exceptions import CompatibilityError
from .models import AngleDirector, TwoPointSolution

logger = logging.getLogger(__name__)


def weight_values(table: ProfileTable, weight: str, z):
    """
    插值權重 τ(z) 與導數

    Returns:
        (τ, τ', z·τ', τ'')
    """
    z = np.asarray(z, dtype=float)
    p = table.params
    if weight == "eta1":
        d1, d2 = table.eta1_derivatives(z)
        return table.eta1_eval(z), d1, table.z_eta1_prime(z), d2
    if weight == "profile":
        width = p.b - p.a
        d1 = table.rho0_prime_eval(z) / width
        return (table.rho0_eval(z) - p.a) / width, d1, z * d1, table.rho0_second_eval(z) / width
    raise ValueError(f"未知的權重: {weight}")


def _from_center(z: np.ndarray, g: np.ndarray, c: int) -> np.ndarray:
    """∫₀ᶻ g"""
    right = cumulative_simpson(g[c:], x=z[c:], initial=0.0)
    left = -cumulative_simpson(g[c::-1], x=-z[c::-1], initial=0.0)[::-1]
    return np.concatenate([left[:-1], right])


def _tail(theta_end: float, h_end: float, coefficient_end: float) -> float:
    """表格外的 ∫θh ≈ θh/μ，μ = √f(井)；f(井) = 0 時假設 h 已衰減"""
    if coefficient_end <= 1e-8:
        return 0.0
    return theta_end * h_end / math.sqrt(coefficient_end)


def solve_two_point(table: ProfileTable, h: Union[np.ndarray, Callable], kind: str = "A") -> TwoPointSolution:
    """
    在表格網格上解兩點問題

    Args:
        table: 剖面表
        h: 右端，表格網格上的值或 z 的函數
        kind: "A" 用 f_A(ρ₀)，"B" 用 f_B(ρ₀)

    Returns:
        TwoPointSolution: v 與相容積分 ∫hθ
    """
    z = table.z_grid
    values = np.asarray(h(z) if callable(h) else h, dtype=float)
    if values.shape != z.shape:
        raise ValueError(f"h 的形狀 {values.shape} 和表格網格 {z.shape} 不符")
    potential = table.params.potential
    if kind == "A":
        theta, coefficient = table.rho0_prime, fA_at(table.rho0, potential)
    elif kind == "B":
        theta, coefficient = table.rho0, fB_at(table.rho0, potential)
    else:
        raise ValueError(f"kind 只能是 A 或 B: {kind}")

    g = theta * values
    tail_left = _tail(theta[0], values[0], coefficient[0])
    tail_right = _tail(theta[-1], values[-1], coefficient[-1])
    compat = float(simpson(g, x=z)) + tail_left + tail_right
    scale = max(1.0, float(np.max(np.abs(values))))
    if abs(compat) > ExpansionConfig.COMPAT_TOL * scale:
        logger.error(f"兩點問題 ({kind}) 不相容: ∫hθ = {compat:.3e}")
        raise CompatibilityError(f"∫hθ = {compat:.3e} 超過 {ExpansionConfig.COMPAT_TOL:.0e}")

    c = table.center_index
    right = cumulative_simpson(g[c:][::-1], x=-z[c:][::-1], initial=0.0)[::-1] + tail_right
    left = -(cumulative_simpson(g[:c + 1], x=z[:c + 1], initial=0.0) + tail_left)
    flux = np.concatenate([left[:-1], right])
    w = _from_center(z, flux / theta ** 2, c)
    logger.debug(f"兩點問題 ({kind}) 完成: compat={compat:.2e}")
    return TwoPointSolution(kind=kind, z=z, v=theta * w, compat=compat)


def corrector_source(table: ProfileTable, director: AngleDirector, weight: str = "eta1") -> np.ndarray:
    """
    一階切向缺陷 h = ρ₀⁻¹∂z[ρ₀²∂z(z·φ̄_ν(τ(z)))]，φ̄_ν = s⁻ + τ(s⁺-s⁻)
    """
    z = table.z_grid
    tau, d1, z_d1, d2 = weight_values(table, weight, z)
    jump = director.slope_plus - director.slope_minus
    q = director.slope_minus + jump * (tau + z_d1)
    dq = jump * (2.0 * d1 + z * d2)
    return 2.0 * table.rho0_prime * q + table.rho0 * dq


def angular_corrector(table: ProfileTable, director: AngleDirector, weight: str = "eta1") -> TwoPointSolution:
    """σ₁：-σ₁'' + f_B(ρ₀)σ₁ = h，只有通量跳躍條件成立時才相容"""
    solution = solve_two_point(table, corrector_source(table, director, weight), kind="B")
    left, right = solution.limits
    logger.info(f"角向修正完成: weight={weight}, σ₁(±∞)=({left:.4e}, {right:.4e})")
    return solution


def corrector_closed_form(table: ProfileTable, director: AngleDirector, weight: str, z) -> np.ndarray:
    """σ₁ = ρ₀(b²s⁺·zF(z) - z·φ̄_ν(τ(z)))"""
    z = np.asarray(z, dtype=float)
    b = table.params.b
    tau = weight_values(table, weight, z)[0]
    phi_nu = director.slope_minus + tau * (director.slope_plus - director.slope_minus)
    return table.rho0_eval(z) * (b ** 2 * director.slope_plus * z * table.F_eval(z) - z * phi_nu)

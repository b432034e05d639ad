"""
剖面表格 - 建表、η₁、能量常數 e、衰減率擬合與 CSV 輸出
"""

import logging
import math
from dataclasses import replace
from typing import Optional

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_simpson, simpson

from services.potential_service import F_at

from .config import ProfileConfig
from .exceptions import ConsistencyError, ParameterError, TableCorruptionError
from .implicit import solve_profile_point
from .models import DecayRates, EnergyConstant, ProfileParams, ProfileTable

logger = logging.getLogger(__name__)


def energy_closed_form(p: ProfileParams) -> float:
    """e = (√2/15)(b-a)(b⁴+a⁴+b³a+a³b-4a²b²)"""
    a, b = p.a, p.b
    return math.sqrt(2.0) / 15.0 * (b - a) * (b ** 4 + a ** 4 + b ** 3 * a + a ** 3 * b - 4.0 * a ** 2 * b ** 2)


def energy_constant_e(params: ProfileParams, table: Optional[ProfileTable] = None) -> EnergyConstant:
    """閉式解；給了表格就再做一次 Simpson 積分並比對"""
    closed = energy_closed_form(params)
    if table is None:
        return EnergyConstant(closed_form=closed)

    quad = float(simpson(table.rho0_prime ** 2, x=table.z_grid))
    result = EnergyConstant(closed_form=closed, quadrature=quad)
    if result.difference > ProfileConfig.simpson_tolerance(table.z_max, len(table.z_grid)):
        logger.error(f"能量常數不一致: closed={closed:.12f}, quadrature={quad:.12f}")
        raise ConsistencyError(f"e 閉式解與積分相差 {result.difference:.3e}")
    return result


def _antiderivative_over_z(z: np.ndarray, g: np.ndarray, c: int) -> np.ndarray:
    """F(z) = (1/z)∫₀ᶻ g，從中心節點往兩側做累積 Simpson"""
    right = cumulative_simpson(g[c:], x=z[c:], initial=0.0)
    # x 必須遞增：左半邊以 -z 積分，∫₀ᶻ g = -∫₀^{|z|} g(-t)dt
    left = -cumulative_simpson(g[c::-1], x=-z[c::-1], initial=0.0)[::-1]
    integral = np.concatenate([left[:-1], right])
    F = np.empty_like(z)
    nonzero = z != 0.0
    F[nonzero] = integral[nonzero] / z[nonzero]
    F[c] = g[c]
    return F


def build_table(params: Optional[ProfileParams] = None,
                z_max: Optional[float] = None,
                nodes: Optional[int] = None) -> ProfileTable:
    """
    建立剖面表

    Args:
        params: 剖面參數，預設取 ProfileConfig 的 a, b
        z_max: 表格半寬
        nodes: 節點數 (奇數)

    Returns:
        ProfileTable: 不可變的表格
    """
    if params is None:
        params = ProfileParams(a=ProfileConfig.A, b=ProfileConfig.B, c0=ProfileConfig.C0)
    z_max = ProfileConfig.Z_MAX if z_max is None else float(z_max)
    nodes = ProfileConfig.NODES if nodes is None else int(nodes)
    if not ProfileConfig.valid_table_size(z_max, nodes):
        raise ParameterError(f"表格尺寸不合法: z_max={z_max}, nodes={nodes} (需要 z_max>0 且節點數為 ≥5 的奇數)")

    z = np.linspace(-z_max, z_max, nodes)
    c = nodes // 2
    z[c] = 0.0
    solved = np.array([solve_profile_point(v, params) for v in z])
    rho0, gap_minus, gap_plus = solved[:, 0], solved[:, 1], solved[:, 2]
    rho0_prime = (math.sqrt(2.0) / 2.0) * gap_minus * gap_plus

    # Simpson 累積積分只當交叉檢查，表格存的是閉式 F
    F_quad = _antiderivative_over_z(z, 1.0 / rho0 ** 2, c)
    if np.any(np.isnan(F_quad)):
        logger.error("F 的累積積分出現 NaN")
        raise TableCorruptionError("F 積分結果含 NaN")

    draft = ProfileTable(
        params=params,
        z_grid=z,
        rho0=rho0,
        rho0_prime=rho0_prime,
        eta1=np.zeros_like(z),
        F=F_quad,
        gap_minus=gap_minus,
        gap_plus=gap_plus,
        e_const=energy_closed_form(params),
    )
    F = draft.F_eval(z)
    drift = float(np.max(np.abs(z * (F - F_quad))))
    tolerance = ProfileConfig.simpson_tolerance(z_max, nodes)
    if not drift <= tolerance:
        logger.error(f"∫ρ₀⁻² 的閉式解與 Simpson 積分不一致: {drift:.3e} > {tolerance:.3e}")
        raise ConsistencyError(f"zF 閉式解與積分相差 {drift:.3e} (容差 {tolerance:.3e})")

    a2, b2 = params.a ** 2, params.b ** 2
    eta1 = _checked_eta((b2 - a2 * b2 * F) / (b2 - a2))
    table = replace(draft, eta1=eta1, F=F)
    validate_table(table)
    logger.info(f"剖面表建立完成: a={params.a}, b={params.b}, z_max={z_max}, nodes={nodes}, simpson_drift={drift:.2e}")
    return table


def _checked_eta(eta):
    eta = np.asarray(eta, dtype=float)
    if np.any(np.isnan(eta)):
        logger.error("η₁ 出現 NaN")
        raise TableCorruptionError("η₁ 積分結果含 NaN")
    overshoot = float(np.max(np.maximum(-eta, eta - 1.0), initial=0.0))
    if overshoot > ProfileConfig.ETA_OVERSHOOT:
        logger.error(f"η₁ 超出 [0,1]: overshoot={overshoot:.3e}")
        raise TableCorruptionError(f"η₁ 超出 [0,1] 達 {overshoot:.3e}")
    if overshoot > 0.0:
        logger.warning(f"η₁ 微小越界已截斷: {overshoot:.3e}")
    return np.clip(eta, 0.0, 1.0)


def validate_table(table: ProfileTable) -> None:
    """
    表格不變量

    浮點 ρ₀ 在 z ≳ 4 就飽和成 b，嚴格單調改在井距上檢查：
    ρ₀²-a² 在 z ≤ 0 嚴格遞增、b²-ρ₀² 在 z ≥ 0 嚴格遞減，ρ₀ 本身只要求不減。
    """
    p = table.params
    if np.any(table.rho0 <= p.a) or np.any(table.rho0 >= p.b):
        raise TableCorruptionError("ρ₀ 超出 (a, b)")
    if np.any(np.diff(table.rho0) < 0.0):
        raise TableCorruptionError("ρ₀ 非遞增")
    c = table.center_index
    gm, gp = table.gap_minus, table.gap_plus
    if np.any(np.diff(gm[:c + 1]) <= 0.0) or np.any(np.diff(gm) < 0.0):
        raise TableCorruptionError("ρ₀²-a² 非嚴格遞增")
    right = gp[c:]
    if np.any(np.diff(right[right > 0.0]) >= 0.0) or np.any(np.diff(gp) > 0.0):
        raise TableCorruptionError("b²-ρ₀² 非嚴格遞減")
    if np.any(np.diff(table.eta1) <= 0.0):
        raise TableCorruptionError("η₁ 非嚴格遞增")


def eta1_at(z, table: ProfileTable):
    """η₁(z) = (b² - a²b²F(z))/(b²-a²)，|z| 超過表格用解析尾端"""
    value = _checked_eta(table.eta1_eval(z))
    return float(value) if np.ndim(z) == 0 else value


def decay_rate_fit(table: ProfileTable) -> DecayRates:
    """log(b²-ρ₀²) 在 [5,9] 與 log(ρ₀²-a²) 在 [-9,-5] 的最小平方斜率"""
    lo, hi = ProfileConfig.DECAY_WINDOW
    if table.z_max < hi:
        raise ParameterError(f"衰減擬合需要 z_max ≥ {hi}，目前 {table.z_max}")
    z = table.z_grid
    right = (z >= lo) & (z <= hi)
    left = (z >= -hi) & (z <= -lo)
    slope_plus = np.polyfit(z[right], np.log(table.gap_plus[right]), 1)[0]
    slope_minus = np.polyfit(z[left], np.log(table.gap_minus[left]), 1)[0]
    return DecayRates(rate_plus=abs(float(slope_plus)), rate_minus=abs(float(slope_minus)))


def equipartition_defect(table: ProfileTable) -> float:
    """max |F(ρ₀) - (ρ₀')²/2|"""
    potential = F_at(table.rho0[:, None], table.params.potential)
    return float(np.max(np.abs(potential - 0.5 * table.rho0_prime ** 2)))


def table_frame(table: ProfileTable) -> pd.DataFrame:
    return pd.DataFrame({
        "z": table.z_grid,
        "rho0": table.rho0,
        "rho0_prime": table.rho0_prime,
        "eta1": table.eta1,
        "F": table.F,
    })


def write_profile_csv(table: ProfileTable, path: str) -> str:
    """寫出 z, rho0, rho0_prime, eta1, F 五欄"""
    table_frame(table).to_csv(path, index=False, float_format="%.17g")
    logger.info(f"剖面 CSV 已寫入: {path}")
    return path

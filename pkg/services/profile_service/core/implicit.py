"""
隱式關係求解 - 由 b·ln((ρ-a)/(ρ+a)) - a·ln((b-ρ)/(b+ρ)) = c₀ + κz 反解 ρ₀(z)

中間區域用二分法加牛頓法；尾端 (ρ 離某個井小於 1e-3 的相對距離) 改用
不動點迭代直接解出井距，這樣 b²-ρ₀² 和 ρ₀²-a² 在 |z| 很大時仍保有完整的相對精度。
"""

import logging
import math
from typing import Tuple

import numpy as np
from scipy.optimize import bisect

from services.potential_service import profile_force

from .config import ProfileConfig
from .exceptions import ProfileSolverError
from .models import ProfileParams

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


def implicit_lhs(rho: float, p: ProfileParams) -> float:
    """g(ρ) = b·ln((ρ-a)/(ρ+a)) - a·ln((b-ρ)/(b+ρ))，在 (a, b) 上嚴格遞增"""
    return p.b * math.log((rho - p.a) / (rho + p.a)) - p.a * math.log((p.b - rho) / (p.b + rho))


def implicit_slope(rho: float, p: ProfileParams) -> float:
    """g'(ρ) = 2ab(b²-a²) / ((ρ²-a²)(b²-ρ²))"""
    return 2.0 * p.a * p.b * (p.b ** 2 - p.a ** 2) / ((rho ** 2 - p.a ** 2) * (p.b ** 2 - rho ** 2))


def _clamp(rho: float, p: ProfileParams) -> float:
    return min(max(rho, np.nextafter(p.a, p.b)), np.nextafter(p.b, p.a))


def _right_tail(s: float, p: ProfileParams, z: float) -> Tuple[float, float, float]:
    """ρ 靠近 b：w = (b-ρ)/(b+ρ)，ln w = (b·ln((ρ-a)/(ρ+a)) - s)/a"""
    a, b = p.a, p.b
    rho = b
    w = 0.0
    for _ in range(ProfileConfig.TAIL_ITERATIONS):
        w = math.exp((b * math.log((rho - a) / (rho + a)) - s) / a)
        new_rho = b * (1.0 - w) / (1.0 + w)
        converged = abs(new_rho - rho) <= 4.0 * _EPS * b
        rho = new_rho
        if converged:
            break
    else:
        logger.error(f"右尾端不動點迭代未收斂: z={z}")
        raise ProfileSolverError("尾端迭代未收斂", z, (rho, b))
    gap_plus = w * (b + rho) ** 2
    rho = _clamp(rho, p)
    return rho, rho ** 2 - a ** 2, gap_plus


def _left_tail(s: float, p: ProfileParams, z: float) -> Tuple[float, float, float]:
    """ρ 靠近 a：v = (ρ-a)/(ρ+a)，ln v = (s + a·ln((b-ρ)/(b+ρ)))/b"""
    a, b = p.a, p.b
    rho = a
    v = 0.0
    for _ in range(ProfileConfig.TAIL_ITERATIONS):
        v = math.exp((s + a * math.log((b - rho) / (b + rho))) / b)
        new_rho = a * (1.0 + v) / (1.0 - v)
        converged = abs(new_rho - rho) <= 4.0 * _EPS * b
        rho = new_rho
        if converged:
            break
    else:
        logger.error(f"左尾端不動點迭代未收斂: z={z}")
        raise ProfileSolverError("尾端迭代未收斂", z, (a, rho))
    gap_minus = v * (rho + a) ** 2
    rho = _clamp(rho, p)
    return rho, gap_minus, b ** 2 - rho ** 2


def _bracket(s: float, p: ProfileParams, z: float) -> Tuple[float, float]:
    """從 (a, b) 內縮 δ(b-a) 開始，δ 每次縮小 10 倍直到 g(lo) ≤ s ≤ g(hi)"""
    width = p.b - p.a
    delta = ProfileConfig.TAIL_THRESHOLD
    lo, hi = p.a + delta * width, p.b - delta * width
    for _ in range(12):
        lo, hi = p.a + delta * width, p.b - delta * width
        if implicit_lhs(lo, p) <= s <= implicit_lhs(hi, p):
            return lo, hi
        delta *= 0.1
    logger.error(f"找不到包含根的區間: z={z}, s={s}")
    raise ProfileSolverError("無法建立二分區間", z, (lo, hi))


def _interior(s: float, p: ProfileParams, z: float) -> Tuple[float, float, float]:
    lo, hi = _bracket(s, p, z)
    try:
        rho = bisect(lambda r: implicit_lhs(r, p) - s, lo, hi, xtol=ProfileConfig.BISECT_XTOL)
    except (RuntimeError, ValueError) as e:
        raise ProfileSolverError(f"二分法失敗: {str(e)}", z, (lo, hi)) from e

    for _ in range(ProfileConfig.NEWTON_STEPS):
        step = (implicit_lhs(rho, p) - s) / implicit_slope(rho, p)
        rho = min(max(rho - step, lo), hi)
        if abs(step) <= 2.0 * _EPS * rho:
            break

    residual = abs(implicit_lhs(rho, p) - s)
    tol = ProfileConfig.RESIDUAL_TOL + 4.0 * _EPS * rho * implicit_slope(rho, p)
    if residual > tol:
        logger.error(f"牛頓修正後殘差過大: z={z}, residual={residual:.3e}")
        raise ProfileSolverError(f"殘差 {residual:.3e} 超過 {tol:.3e}", z, (lo, hi))
    return rho, rho ** 2 - p.a ** 2, p.b ** 2 - rho ** 2


def solve_profile_point(z: float, p: ProfileParams) -> Tuple[float, float, float]:
    """單點求解，回傳 (ρ₀, ρ₀²-a², b²-ρ₀²)"""
    z = float(z)
    if math.isnan(z):
        raise ProfileSolverError("z 為 NaN", z, (p.a, p.b))
    s = p.c0 + p.kappa * z
    log_ratio = math.log((p.b - p.a) / (p.b + p.a))
    # 以井上的值估計井距，決定走哪個分支
    w0 = math.exp(min((p.b * log_ratio - s) / p.a, 0.0))
    v0 = math.exp(min((s + p.a * log_ratio) / p.b, 0.0))
    # 不動點迭代的收縮因子約為 4b²w/(b²-a²)，門檻跟著井距縮放
    gap = p.b ** 2 - p.a ** 2
    if w0 < ProfileConfig.TAIL_THRESHOLD * min(1.0, gap / p.b ** 2):
        return _right_tail(s, p, z)
    if v0 < ProfileConfig.TAIL_THRESHOLD * min(1.0, gap / p.a ** 2):
        return _left_tail(s, p, z)
    return _interior(s, p, z)


def _apply(z, p: ProfileParams, column: int):
    if np.ndim(z) == 0:
        return solve_profile_point(z, p)[column]
    flat = np.asarray(z, dtype=float).ravel()
    out = np.array([solve_profile_point(v, p)[column] for v in flat])
    return out.reshape(np.shape(z))


def rho0_at(z, params: ProfileParams):
    """ρ₀(z)，純量或陣列輸入皆可"""
    return _apply(z, params, 0)


def profile_gaps(z, params: ProfileParams):
    """(ρ₀²-a², b²-ρ₀²)，沒有相消誤差"""
    if np.ndim(z) == 0:
        _, gm, gp = solve_profile_point(z, params)
        return gm, gp
    return _apply(z, params, 1), _apply(z, params, 2)


def rho0_prime_at(z, params: ProfileParams):
    """ρ₀'(z) = (√2/2)(ρ₀²-a²)(b²-ρ₀²)"""
    gm, gp = profile_gaps(z, params)
    return (math.sqrt(2.0) / 2.0) * gm * gp


def ode_residual(z, params: ProfileParams, step: float = 1e-4):
    """|ρ₀'' - f₁(ρ₀)| / (1+|f₁|)，ρ₀'' 用二階中心差分"""
    z = np.asarray(z, dtype=float)
    center = rho0_at(z, params)
    second = (rho0_at(z + step, params) - 2.0 * center + rho0_at(z - step, params)) / step ** 2
    force = profile_force(center, params.potential)
    return np.abs(second - force) / (1.0 + np.abs(force))

"""
平均曲率流 - 徑向介面 Ṙ = -(m-1)/R (圓收縮)，平面介面不動
"""

import logging
import math
from dataclasses import replace

from .models import SharpState

logger = logging.getLogger(__name__)


def mcf_rhs(radius: float, m: int) -> float:
    return -(m - 1) / radius


def radius_exact(radius0: float, t: float, m: int = 2) -> float:
    """R(t) = √(R₀² - 2(m-1)t)，消失後回傳 0"""
    value = radius0 ** 2 - 2.0 * (m - 1) * t
    return math.sqrt(value) if value > 0.0 else 0.0


def extinction_time(radius0: float, m: int = 2) -> float:
    if m == 1:
        return math.inf
    return radius0 ** 2 / (2.0 * (m - 1))


def mcf_step(state: SharpState, dt: float, m: int = 2) -> SharpState:
    """
    一步 RK2 (中點法)

    中點或終點半徑 ≤ 0 視為消失，消失時間用局部解析解 R²/(2(m-1)) 補上。
    """
    if state.extinct or state.geometry.kind == "planar" or m == 1:
        return replace(state, t=state.t + dt, step=state.step + 1)

    radius = state.geometry.radius
    mid = radius + 0.5 * dt * mcf_rhs(radius, m)
    new_radius = radius + dt * mcf_rhs(mid, m) if mid > 0.0 else -1.0
    if not new_radius > 0.0:
        t_star = state.t + radius ** 2 / (2.0 * (m - 1))
        logger.info(f"介面消失: t*={t_star:.6f} (最後半徑 {radius:.3e})")
        return replace(state, t=state.t + dt, step=state.step + 1, extinct=True, extinction_time=t_star)

    return replace(state, t=state.t + dt, step=state.step + 1,
                   geometry=state.geometry.with_radius(new_radius))

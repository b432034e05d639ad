"""
PDE 殘差 ∂ₜu^K - Δu^K + ε⁻²f(u^K)

空間導數用四階五點差分 (步長 FD_FACTOR·ε)，時間導數用中心差分，
介面位置 R(t) 取平均曲率流的解析解。
"""

import logging
import os
from typing import List, Optional

import numpy as np
import pandas as pd

from services.potential_service import f_at
from services.profile_service import ProfileParams, ProfileTable, build_table

from .approx import ApproxSolution, build_uK
from .config import ExpansionConfig
from .models import ResidualReport, ResidualRunConfig

logger = logging.getLogger(__name__)


def residual_points(solution: ApproxSolution, count: Optional[int] = None, t: float = 0.0) -> np.ndarray:
    """
    沿第 0 軸穿過介面的取樣點，涵蓋 |d₀| ≤ RESIDUAL_SPAN·δ

    Returns:
        np.ndarray: 形狀 (count, m)
    """
    count = ExpansionConfig.RESIDUAL_POINTS if count is None else int(count)
    cfg = solution.config
    geom = solution.geometry_at(t)
    center = geom.radius if geom.kind == "radial" else geom.offset
    span = ExpansionConfig.RESIDUAL_SPAN * cfg.delta
    lo = center - span
    if geom.kind == "radial":
        lo = max(lo, 4.0 * ExpansionConfig.fd_step(cfg.eps))
    points = np.zeros((count, cfg.m))
    points[:, 0] = np.linspace(lo, center + span, count)
    return points


def residual(solution: ApproxSolution, points, t: float = 0.0,
             dt_residual: Optional[float] = None) -> ResidualReport:
    """
    Args:
        solution: u^K
        points: 取樣點 (N, m)
        t: 時間
        dt_residual: 時間差分步長

    Returns:
        ResidualReport: 殘差場 (N, n) 與上確界
    """
    points = np.asarray(points, dtype=float)
    dt = ExpansionConfig.DT_RESIDUAL if dt_residual is None else float(dt_residual)
    eps = solution.eps
    h = ExpansionConfig.fd_step(eps)

    center = solution(points, t)
    lap = np.zeros_like(center)
    for axis in range(points.shape[-1]):
        shift = np.zeros(points.shape[-1])
        shift[axis] = h
        lap += (-solution(points + 2 * shift, t) + 16.0 * solution(points + shift, t) - 30.0 * center
                + 16.0 * solution(points - shift, t) - solution(points - 2 * shift, t)) / (12.0 * h ** 2)
    dudt = (solution(points, t + dt) - solution(points, t - dt)) / (2.0 * dt)
    field = dudt - lap + f_at(center, solution.table.params.potential) / eps ** 2

    sup = float(np.max(np.linalg.norm(field, axis=-1)))
    report = ResidualReport(eps=eps, sup=sup, field=field, points=points,
                            distance=solution.distance(points, t))
    logger.info(f"殘差: eps={eps}, K={solution.config.K}, sup={sup:.4e}, 位置 d₀={report.argmax_distance:.4f}")
    return report


def loglog_slope(eps, values) -> float:
    """log(values) 對 log(eps) 的最小平方斜率"""
    return float(np.polyfit(np.log(np.asarray(eps, dtype=float)), np.log(np.asarray(values, dtype=float)), 1)[0])


def residual_sweep(cfg: ResidualRunConfig, table: Optional[ProfileTable] = None) -> pd.DataFrame:
    """
    對 eps_list 逐一組裝 u^K 並量測殘差

    Returns:
        pd.DataFrame: eps, K, weight, sup, argmax_distance
    """
    if table is None:
        table = build_table(ProfileParams(a=cfg.a, b=cfg.b))
    rows: List[dict] = []
    for eps in cfg.eps_list:
        solution = build_uK(cfg.approx_config(eps), table)
        report = residual(solution, residual_points(solution, cfg.residual_points), dt_residual=cfg.dt_residual)
        rows.append({"eps": eps, "K": cfg.K, "weight": cfg.weight, "sup": report.sup,
                     "argmax_distance": report.argmax_distance})
    frame = pd.DataFrame(rows)
    if len(frame) >= 2:
        logger.info(f"殘差 log-log 斜率: {loglog_slope(frame['eps'], frame['sup']):.3f} (K={cfg.K})")
    return frame


def write_residual_csv(frame: pd.DataFrame, out_dir: str, name: str = "residual.csv") -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"殘差 CSV 已寫入: {path}")
    return path

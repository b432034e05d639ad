"""
ε 掃描收斂研究 - 擴散解與銳利介面參考解在同一取樣時刻比較

每個 ε 各跑一次擴散方程 (初始場是 u^K, K=0)，銳利介面只跑一次；
全部任務丟進同一個執行緒池。
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import ValidationError

from services.diffuse_service import DiffuseResult, DiffuseRunConfig, interface_radius, run_diffuse
from services.expansion_service import ApproxConfig, ApproxSolution, build_uK, loglog_slope
from services.field_service import InterfaceGeometry, OuterBoundary, RadialGrid, VectorField
from services.profile_service import ProfileParams, ProfileTable, build_table
from services.sharp_service import SharpConfig, SharpResult, SharpRunConfig, angle_from_directors, run_sharp

from .config import StudyConfig
from .config_io import write_config
from .error_energy import error_energy
from .exceptions import ConfigError, ReportError, StudyServiceError
from .models import RATE_METRICS, ConvergeResult, ConvergeRunConfig, ConvergenceRow

logger = logging.getLogger(__name__)


def converge_config(values: dict) -> ConvergeRunConfig:
    try:
        return ConvergeRunConfig(**values)
    except ValidationError as e:
        logger.error(f"收斂研究參數不合法: {str(e)}")
        raise ConfigError(f"收斂研究參數不合法: {str(e)}") from e


def comparison_dt(t_probe: float, limit: float) -> float:
    """不超過 limit 且整除 t_probe 的步長"""
    return t_probe / math.ceil(t_probe / limit - 1e-12)


def diffuse_run_config(cfg: ConvergeRunConfig, index: int) -> DiffuseRunConfig:
    eps = cfg.eps_list[index]
    nx = cfg.nodes(index)
    draft = DiffuseRunConfig(eps=eps, nx=nx, m=cfg.m, n=cfg.n, a=cfg.a, b=cfg.b, length=cfg.length,
                             grid="radial", outer_bc=OuterBoundary.DIRICHLET, scheme="imex",
                             radius=cfg.radius, phi_gamma=cfg.phi_gamma,
                             slope_minus=cfg.slope_minus, slope_plus=cfg.slope_plus)
    dt = comparison_dt(cfg.t_probe, cfg.dt_factor * draft.dt_limit)
    return DiffuseRunConfig(**{**draft.model_dump(), "dt": dt, "t_end": cfg.t_probe,
                               "metrics_every": max(1, int(round(cfg.t_probe / dt)))})


def sharp_run_config(cfg: ConvergeRunConfig) -> SharpRunConfig:
    limit = StudyConfig.SHARP_DT_FACTOR * SharpConfig.stability_limit(cfg.length / cfg.sharp_nx, cfg.a, cfg.b)
    dt = comparison_dt(cfg.t_probe, limit)
    steps = int(round(cfg.t_probe / dt))
    return SharpRunConfig(a=cfg.a, b=cfg.b, n=cfg.n, m=cfg.m, geometry="radial", radius=cfg.radius,
                          length=cfg.length, nx=cfg.sharp_nx, dt=dt, t_end=cfg.t_probe,
                          phi_gamma=cfg.phi_gamma, slope_minus=cfg.slope_minus, slope_plus=cfg.slope_plus,
                          metrics_every=max(1, steps // 10))


def approximate_solution(cfg: ConvergeRunConfig, eps: float, table: ProfileTable) -> ApproxSolution:
    approx = ApproxConfig(a=cfg.a, b=cfg.b, n=cfg.n, m=cfg.m, K=0, eps=eps,
                          geometry=InterfaceGeometry(kind="radial", center=(0.0,) * cfg.m, radius=cfg.radius),
                          phi_gamma=cfg.phi_gamma, slope_minus=cfg.slope_minus, slope_plus=cfg.slope_plus,
                          domain_length=cfg.length)
    return build_uK(approx, table)


def _radial_points(radii: np.ndarray, m: int) -> np.ndarray:
    points = np.zeros((len(radii), m))
    points[:, 0] = radii
    return points


def sample_on_grid(solution: ApproxSolution, grid: RadialGrid, t: float = 0.0) -> VectorField:
    """u^K 在徑向網格節點上的值，Dirichlet 外邊界取 r = length"""
    m = solution.config.m
    values = solution(_radial_points(grid.radii, m), t)
    boundary = None
    if grid.outer_bc == OuterBoundary.DIRICHLET:
        boundary = solution(_radial_points(np.array([grid.length]), m), t)[0]
    return VectorField(grid, values, boundary)


def bulk_errors(field: VectorField, a: float, b: float, position: float, collar: float) -> Tuple[float, float]:
    """
    (sup_{Ω⁺} ||u| - b|, sup_{Ω⁻} ||u| - a|)，介面兩側 collar 內的節點排除

    某一側沒有節點時退回該側離介面最遠的節點。
    """
    r = field.grid.radii
    modulus = field.modulus()
    inside = r < position - collar
    outside = r > position + collar
    if not inside.any():
        logger.warning(f"Ω⁻ 扣掉 collar={collar:.4g} 後沒有節點，改用 r={r[0]:.4g}")
        inside = np.zeros_like(inside)
        inside[0] = True
    if not outside.any():
        logger.warning(f"Ω⁺ 扣掉 collar={collar:.4g} 後沒有節點，改用 r={r[-1]:.4g}")
        outside = np.zeros_like(outside)
        outside[-1] = True
    plus = float(np.max(np.abs(modulus[outside] - b)))
    minus = float(np.max(np.abs(modulus[inside] - a)))
    return plus, minus


def _directors(values: np.ndarray) -> np.ndarray:
    return values / np.linalg.norm(values, axis=-1, keepdims=True)


def director_error(field: VectorField, sharp: SharpResult) -> float:
    """sup 夾角；參考解指向逐分量線性內插後重新正規化"""
    r = field.grid.radii
    omega = sharp.final.omega
    interpolated = np.stack([np.interp(r, sharp.nodes, omega[:, k]) for k in range(omega.shape[-1])], axis=-1)
    chord = np.linalg.norm(_directors(field.values) - _directors(interpolated), axis=-1)
    return float(np.max(2.0 * np.arcsin(np.clip(0.5 * chord, 0.0, 1.0))))


def one_sided_slopes(field: VectorField, position: float, collar: float) -> Tuple[float, float]:
    """擴散解指向角在 position ∓ collar 的 r 方向斜率 (s⁻, s⁺)"""
    r = field.grid.radii
    phi = angle_from_directors(_directors(field.values))
    slope = np.gradient(phi, r)
    return float(np.interp(position - collar, r, slope)), float(np.interp(position + collar, r, slope))


def jump_mismatch(field: VectorField, a: float, b: float, position: float, collar: float) -> float:
    """|b²s⁺ - a²s⁻|"""
    s_minus, s_plus = one_sided_slopes(field, position, collar)
    return abs(b ** 2 * s_plus - a ** 2 * s_minus)


def convergence_row(cfg: ConvergeRunConfig, run: DiffuseRunConfig, result: DiffuseResult,
                    sharp: SharpResult, reference: Optional[VectorField] = None) -> Tuple[ConvergenceRow, object]:
    field = result.final
    position = interface_radius(field, run)
    if not math.isfinite(position):
        logger.error(f"eps={run.eps} 的擴散解找不到介面")
        raise StudyServiceError(f"eps={run.eps} 的擴散解在 t={result.time} 沒有介面")
    if sharp.final.extinct:
        raise StudyServiceError(f"參考解在 t={sharp.final.t} 之前已消失")
    sharp_position = sharp.final.interface_position
    collar = StudyConfig.collar(run.eps, cfg.collar_factor)

    plus, minus = bulk_errors(field, cfg.a, cfg.b, sharp_position, collar)
    energy = error_energy(field, run.eps, reference) if reference is not None else None
    row = ConvergenceRow(
        eps=run.eps,
        t_probe=result.time,
        nx=run.nx,
        dt=run.dt,
        interface_error=abs(position - sharp_position),
        bulk_modulus_error_plus=plus,
        bulk_modulus_error_minus=minus,
        director_error=director_error(field, sharp),
        jump_mismatch=jump_mismatch(field, cfg.a, cfg.b, position, collar),
        error_energy=energy.value if energy is not None else math.nan,
        max_energy_increase=result.max_energy_increase,
    )
    if not row.valid:
        logger.warning(f"eps={run.eps} 的收斂列含非有限值: {row.row()}")
    return row, energy


def _diffuse_task(cfg: ConvergeRunConfig, index: int, table: ProfileTable):
    run = diffuse_run_config(cfg, index)
    solution = approximate_solution(cfg, run.eps, table)
    grid = run.grid_model()
    result = run_diffuse(run, initial=sample_on_grid(solution, grid), table=table)
    reference = sample_on_grid(solution, grid, cfg.t_probe)
    return run, result, reference


def converge(cfg: ConvergeRunConfig,
             table: Optional[ProfileTable] = None,
             threads: Optional[int] = None,
             out_dir: Optional[str] = None) -> ConvergeResult:
    """
    ε 掃描

    Args:
        cfg: 研究參數
        table: 共用剖面表，a, b 必須與 cfg 相同
        threads: 執行緒數，省略時依 StudyConfig
        out_dir: 輸出目錄，覆蓋 cfg.out_dir

    Returns:
        ConvergeResult: 依 eps_list 順序的收斂列、銳利介面結果與誤差能量診斷
    """
    if table is None:
        table = build_table(ProfileParams(a=cfg.a, b=cfg.b))
    elif (table.params.a, table.params.b) != (cfg.a, cfg.b):
        raise ConfigError(f"剖面表參數 (a={table.params.a}, b={table.params.b}) 與設定不符")

    count = len(cfg.eps_list)
    workers = StudyConfig.workers(count + 1, threads)
    logger.info(f"收斂研究開始: eps={list(cfg.eps_list)}, t_probe={cfg.t_probe}, threads={workers}")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        sharp_future = executor.submit(run_sharp, sharp_run_config(cfg))
        futures = [executor.submit(_diffuse_task, cfg, i, table) for i in range(count)]
        sharp = sharp_future.result()
        runs = [f.result() for f in futures]

    rows, energies, dissipative = [], [], []
    for run, result, reference in runs:
        row, energy = convergence_row(cfg, run, result, sharp, reference)
        rows.append(row)
        energies.append(energy)
        dissipative.append(result.dissipative)
        logger.info(f"eps={run.eps}: interface_error={row.interface_error:.3e}, "
                    f"bulk+={row.bulk_modulus_error_plus:.3e}, bulk-={row.bulk_modulus_error_minus:.3e}, "
                    f"jump={row.jump_mismatch:.3e}")

    result = ConvergeResult(config=cfg, rows=rows, sharp=sharp, energies=energies, dissipative=dissipative)
    target = out_dir or cfg.out_dir
    if target:
        result.files = write_convergence(result, target)
    logger.info(f"收斂研究結束: {count} 個 ε")
    return result


def convergence_rates(frame: pd.DataFrame) -> pd.DataFrame:
    """相鄰 ε 的誤差比 error(ε_i)/error(ε_{i+1})；少於兩列時是空表"""
    columns = ["eps_coarse", "eps_fine"] + RATE_METRICS
    rows = []
    for i in range(len(frame) - 1):
        coarse, fine = frame.iloc[i], frame.iloc[i + 1]
        row = {"eps_coarse": float(coarse["eps"]), "eps_fine": float(fine["eps"])}
        for metric in RATE_METRICS:
            row[metric] = float(coarse[metric] / fine[metric]) if fine[metric] > 0 else math.nan
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def convergence_slopes(frame: pd.DataFrame) -> dict:
    """各誤差對 ε 的 log-log 斜率；少於兩列或含非正值時略過"""
    slopes = {}
    if len(frame) < 2:
        return slopes
    for metric in RATE_METRICS:
        values = frame[metric].to_numpy(dtype=float)
        if np.all(np.isfinite(values)) and np.all(values > 0):
            slopes[metric] = loglog_slope(frame["eps"], values)
    return slopes


def write_convergence(result: ConvergeResult, out_dir: str) -> dict:
    config_path = os.path.join(out_dir, StudyConfig.CONFIG_NAME)
    table_path = os.path.join(out_dir, StudyConfig.CONVERGENCE_NAME)
    write_config(result.config, config_path)
    try:
        result.frame().to_csv(table_path, index=False, float_format=StudyConfig.CSV_FLOAT_FORMAT)
    except OSError as e:
        logger.error(f"收斂表寫入失敗: {str(e)}")
        raise ReportError(f"無法寫入 {table_path}: {str(e)}") from e
    logger.info(f"收斂表已寫入: {table_path}")
    return {"config": config_path, "convergence": table_path}

"""
擴散介面執行器 - 推進到 t_end，記錄指標、定期寫檢查點，可從檢查點續跑
"""

import logging
import math
import os
from typing import Optional

import pandas as pd
from pydantic import ValidationError

from services.field_service import (
    CheckpointError, NoInterfaceError, RadialGrid, VectorField,
    energy, interface_extract, read_checkpoint, write_checkpoint, write_slice_csv,
)
from services.profile_service import ProfileTable

from .config import DiffuseConfig
from .exceptions import CheckpointWriteError, ConfigError
from .initial import initial_field
from .models import DiffuseResult, DiffuseRunConfig
from .stepper import Stepper, check_stability

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ["t", "step", "energy", "radius", "modulus_inside", "modulus_outside"]


def diffuse_config(values: dict) -> DiffuseRunConfig:
    """dict 轉成 DiffuseRunConfig 並檢查穩定上限"""
    try:
        cfg = DiffuseRunConfig(**values)
    except ValidationError as e:
        logger.error(f"擴散介面參數不合法: {str(e)}")
        raise ConfigError(f"擴散介面參數不合法: {str(e)}") from e
    check_stability(cfg)
    return cfg


def bulk_moduli(field: VectorField):
    """(圓心處 |u|, 離介面最遠處 |u|)"""
    modulus = field.modulus()
    if isinstance(field.grid, RadialGrid):
        return float(modulus[0]), float(modulus[-1])
    center = tuple(N // 2 for N in field.grid.sizes)
    return float(modulus[center]), float(modulus[(0,) * field.grid.m])


def interface_radius(field: VectorField, cfg: DiffuseRunConfig) -> float:
    """|u| = (a+b)/2 等值面的半徑；找不到介面時回傳 NaN"""
    try:
        geom = interface_extract(field, cfg.potential, kind="radial", center=cfg.center)
    except NoInterfaceError:
        return math.nan
    if geom.kind == "planar":
        return abs(geom.offset - cfg.center[0])
    return geom.radius


def metric_row(field: VectorField, cfg: DiffuseRunConfig, step: int, value: Optional[float] = None) -> dict:
    inside, outside = bulk_moduli(field)
    return {
        "t": step * cfg.dt,
        "step": step,
        "energy": energy(field, cfg.eps, cfg.potential) if value is None else value,
        "radius": interface_radius(field, cfg),
        "modulus_inside": inside,
        "modulus_outside": outside,
    }


def checkpoint_path(out_dir: str, step: int) -> str:
    return os.path.join(out_dir, DiffuseConfig.CHECKPOINT_PATTERN.format(step=step))


def _save_checkpoint(out_dir: str, field: VectorField, cfg: DiffuseRunConfig, step: int) -> str:
    try:
        path = write_checkpoint(checkpoint_path(out_dir, step), field, step * cfg.dt, cfg.eps, step)
    except CheckpointError as e:
        raise CheckpointWriteError(str(e)) from e
    logger.info(f"檢查點已寫入: step={step}, {path}")
    return path


def _resume(cfg: DiffuseRunConfig, grid, restart: str):
    try:
        checkpoint = read_checkpoint(restart)
    except CheckpointError as e:
        raise ConfigError(f"無法從檢查點續跑: {str(e)}") from e
    if checkpoint.field.grid != grid or checkpoint.field.n != cfg.n:
        raise ConfigError(f"檢查點網格與設定不符: {checkpoint.field.grid}")
    if checkpoint.eps != cfg.eps:
        raise ConfigError(f"檢查點 eps={checkpoint.eps} 與設定 eps={cfg.eps} 不符")
    logger.info(f"從檢查點續跑: step={checkpoint.step}, t={checkpoint.time}")
    return checkpoint.field, checkpoint.step


def run_diffuse(cfg: DiffuseRunConfig,
                out_dir: Optional[str] = None,
                initial: Optional[VectorField] = None,
                restart: Optional[str] = None,
                table: Optional[ProfileTable] = None) -> DiffuseResult:
    """
    推進 ∂ₜu = Δu - ε⁻²f(u) 到 t_end

    Args:
        cfg: 執行參數
        out_dir: 輸出目錄，覆蓋 cfg.out_dir；兩者都沒有就只回傳結果
        initial: 直接給定初始場 (例如 u^K)，優先於 cfg.init
        restart: 檢查點路徑，從其 step 接續
        table: init=profile 時共用的剖面表

    Returns:
        DiffuseResult: 最終場、指標表 (t, step, energy, radius, modulus_inside, modulus_outside)
    """
    grid = cfg.grid_model()
    start = 0
    if restart is not None:
        field, start = _resume(cfg, grid, restart)
    elif initial is not None:
        if initial.grid != grid or initial.n != cfg.n:
            raise ConfigError(f"給定初始場的網格與設定不符: {initial.grid}")
        field = initial
    else:
        field = initial_field(cfg, table)

    stepper = Stepper(cfg, grid)
    target = out_dir or cfg.out_dir
    if target:
        os.makedirs(target, exist_ok=True)
    steps = cfg.steps
    checkpoints = []

    current = energy(field, cfg.eps, cfg.potential)
    rows = [metric_row(field, cfg, start, current)]
    worst = -math.inf
    logger.info(f"擴散介面計算開始: scheme={cfg.scheme}, grid={cfg.grid}, nx={cfg.nx}, eps={cfg.eps}, "
                f"steps={start}→{steps}")

    for k in range(start + 1, steps + 1):
        field = stepper(field, k * cfg.dt)
        new = energy(field, cfg.eps, cfg.potential)
        increase = (new - current) / max(abs(current), DiffuseConfig.ENERGY_FLOOR)
        if increase > DiffuseConfig.ENERGY_TOL:
            logger.warning(f"step={k} 能量上升: {current:.12g} → {new:.12g}")
        worst = max(worst, increase)
        current = new
        if k % cfg.metrics_every == 0 or k == steps:
            rows.append(metric_row(field, cfg, k, current))
        if target and cfg.checkpoint_every and k % cfg.checkpoint_every == 0:
            checkpoints.append(_save_checkpoint(target, field, cfg, k))

    metrics = pd.DataFrame(rows, columns=METRIC_COLUMNS)
    final_step = max(start, steps)
    logger.info(f"擴散介面計算結束: t={final_step * cfg.dt:.6g}, 最大相對能量增量={worst:.3e}")
    result = DiffuseResult(config=cfg, final=field, time=final_step * cfg.dt, step=final_step,
                           metrics=metrics, max_energy_increase=worst)

    if target:
        metrics_path = os.path.join(target, "metrics.csv")
        slice_path = os.path.join(target, "slice.csv")
        try:
            metrics.to_csv(metrics_path, index=False, float_format=DiffuseConfig.CSV_FLOAT_FORMAT)
            write_slice_csv(field, slice_path)
        except OSError as e:
            logger.error(f"指標檔寫入失敗: {str(e)}")
            raise CheckpointWriteError(f"無法寫入 {target}: {str(e)}") from e
        files = {"metrics": metrics_path, "slice": slice_path}
        if checkpoints:
            files["checkpoints"] = checkpoints
        result.files = files
        logger.info(f"擴散介面輸出已寫入: {target}")
    return result

"""
報告 - 從輸出目錄的收斂表與設定檔產生 summary.json、rates.csv 與 gnuplot 用的 .dat

同一份設定與收斂表重跑時，輸出逐位元組相同 (無時間戳、鍵順序固定)。
"""

import logging
import os
from typing import Dict, Optional

import pandas as pd

from .config import StudyConfig
from .config_io import build_config, config_hash, read_config_file, serialize_config
from .converge import convergence_rates, convergence_slopes
from .exceptions import ConfigError, ReportError
from .models import CONVERGENCE_COLUMNS, RATE_METRICS, ConvergeRunConfig, StudySummary

logger = logging.getLogger(__name__)


def _load_config(out_dir: str) -> Optional[ConvergeRunConfig]:
    path = os.path.join(out_dir, StudyConfig.CONFIG_NAME)
    if not os.path.isfile(path):
        return None
    try:
        return build_config(ConvergeRunConfig, read_config_file(path))
    except ConfigError as e:
        raise ReportError(f"{path} 無法解析: {str(e)}") from e


def _load_table(out_dir: str) -> pd.DataFrame:
    path = os.path.join(out_dir, StudyConfig.CONVERGENCE_NAME)
    if not os.path.isfile(path):
        return pd.DataFrame(columns=CONVERGENCE_COLUMNS)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, ValueError, pd.errors.ParserError) as e:
        logger.error(f"收斂表讀取失敗: {str(e)}")
        raise ReportError(f"無法讀取 {path}: {str(e)}") from e
    missing = [c for c in CONVERGENCE_COLUMNS if c not in frame.columns]
    if missing:
        raise ReportError(f"{path} 缺少欄位: {missing}")
    return frame[CONVERGENCE_COLUMNS]


def write_dat(frame: pd.DataFrame, column: str, path: str) -> str:
    """兩欄空白分隔：eps 與 column，# 開頭的表頭"""
    lines = [f"# eps {column}"]
    lines += [f"{eps!r} {value!r}" for eps, value in zip(frame["eps"].astype(float), frame[column].astype(float))]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    return path


def _rows(frame: pd.DataFrame) -> list:
    return [{k: float(v) for k, v in record.items()} for record in frame.to_dict(orient="records")]


def report(out_dir: str) -> StudySummary:
    """
    整理 out_dir 內的收斂研究結果

    Args:
        out_dir: converge 的輸出目錄；沒有結果時產生空的摘要

    Returns:
        StudySummary: 已寫入 summary.json 的內容
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as e:
        raise ReportError(f"無法建立輸出目錄 {out_dir}: {str(e)}") from e

    cfg = _load_config(out_dir)
    frame = _load_table(out_dir)
    files = []
    rates = pd.DataFrame()
    try:
        if len(frame):
            rates = convergence_rates(frame)
            rates_path = os.path.join(out_dir, StudyConfig.RATES_NAME)
            rates.to_csv(rates_path, index=False, float_format=StudyConfig.CSV_FLOAT_FORMAT)
            files.append(StudyConfig.RATES_NAME)
            for column in RATE_METRICS + ["error_energy"]:
                name = f"{column}.dat"
                write_dat(frame, column, os.path.join(out_dir, name))
                files.append(name)
    except OSError as e:
        logger.error(f"報告檔寫入失敗: {str(e)}")
        raise ReportError(f"無法寫入報告檔: {str(e)}") from e

    config: Dict[str, str] = {}
    if cfg is not None:
        config = dict(line.split("=", 1) for line in serialize_config(cfg).splitlines())
    summary = StudySummary(
        config_hash=config_hash(cfg) if cfg is not None else None,
        config=config,
        energy_k=cfg.energy_k if cfg is not None else None,
        rows=_rows(frame),
        rates=_rows(rates),
        slopes=convergence_slopes(frame),
        files=sorted(files),
    )
    path = os.path.join(out_dir, StudyConfig.SUMMARY_NAME)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(summary.model_dump_json(indent=2) + "\n")
    except OSError as e:
        raise ReportError(f"無法寫入 {path}: {str(e)}") from e
    logger.info(f"報告已寫入: {path} ({len(frame)} 列)")
    return summary
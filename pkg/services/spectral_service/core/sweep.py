"""
ε 掃描 - 每個 ε 求 λ_min，檢查加倍網格的穩定性與 ε → 0 時的一致下界
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import pandas as pd

from services.profile_service import ProfileTable

from .assemble import assemble, layer_mass, profile_table, to_function
from .config import SpectralConfig
from .eigen import min_eig
from .exceptions import SpectralServiceError, UnderResolvedError
from .models import BoundEntry, FormSpec, SpectralReport, SweepResult
from .store import BoundStore

logger = logging.getLogger(__name__)


def spectral_report(spec: FormSpec, table: Optional[ProfileTable] = None,
                    check_refinement: bool = True) -> SpectralReport:
    """
    單一 ε 的最小特徵對

    Raises:
        UnderResolvedError: 網格加倍後 λ_min 相對變動超過 REFINE_TOL
    """
    table = profile_table(spec, table)
    fm = assemble(spec, table)
    value, vector, residual = min_eig(fm.matrix)
    eigvector = to_function(fm, vector)
    mass = layer_mass(fm, eigvector, SpectralConfig.LAYER_WIDTH)

    refined = None
    if check_refinement:
        refined, _, _ = min_eig(assemble(spec.refined(), table).matrix)
        scale = max(abs(value), SpectralConfig.LAMBDA_FLOOR)
        if abs(refined - value) > SpectralConfig.REFINE_TOL * scale:
            logger.error(f"解析度不足: eps={spec.eps}, λ={value:.6g}, 加倍後 λ={refined:.6g}")
            raise UnderResolvedError(
                f"eps={spec.eps} 解析度不足: nodes={spec.resolution} 時 λ={value:.6g}，加倍後 λ={refined:.6g}")

    logger.info(f"{spec.kind} eps={spec.eps}: λ_min={value:.8g}, nodes={spec.resolution}, "
                f"layer_mass={mass:.3f}")
    report = SpectralReport(eps=spec.eps, kind=spec.kind, lambda_min=value, eigvector=eigvector,
                            nodes=spec.resolution, residual=residual, layer_mass=mass, lambda_refined=refined)
    if not report.localized:
        logger.warning(f"{spec.kind} eps={spec.eps}: 負方向沒有集中在介面層 "
                       f"(layer_mass={mass:.3f} < {SpectralConfig.LAYER_MASS})")
    return report


def calibrated_bound(lambda_min: float) -> float:
    return SpectralConfig.CALIBRATION_FACTOR * max(1.0, abs(lambda_min))


def uniformity_verdict(reports: Sequence[SpectralReport], bound: float) -> bool:
    """min λ ≥ -C 且相鄰 ε 之間 |λ| 不發散"""
    if not reports:
        return True
    if min(r.lambda_min for r in reports) < -bound:
        return False
    for coarse, fine in zip(reports, reports[1:]):
        limit = SpectralConfig.GROWTH_FACTOR * abs(coarse.lambda_min) + SpectralConfig.GROWTH_SLACK
        if abs(fine.lambda_min) > limit:
            logger.warning(f"|λ| 成長過快: eps {coarse.eps} → {fine.eps}, "
                           f"{coarse.lambda_min:.6g} → {fine.lambda_min:.6g}")
            return False
    return True


def _check_eps_list(eps_list: Sequence[float]) -> List[float]:
    values = [float(e) for e in eps_list]
    if not values:
        raise SpectralServiceError("eps 清單不可為空")
    if any(e <= 0 for e in values) or any(b >= a for a, b in zip(values, values[1:])):
        raise SpectralServiceError(f"eps 清單必須為正且嚴格遞減: {values}")
    return values


def sweep(template: FormSpec,
          eps_list: Sequence[float],
          bound: Optional[float] = None,
          store: Optional[BoundStore] = None,
          threads: Optional[int] = None,
          table: Optional[ProfileTable] = None,
          check_refinement: bool = True) -> SweepResult:
    """
    對 eps_list 逐一求 λ_min 並判定一致下界

    Args:
        template: 二次型設定，eps 會被逐一替換
        eps_list: 嚴格遞減的 ε
        bound: 直接指定 C_cfg
        store: 下界存檔；沒有對應項目時以第一個 ε 校準並寫入
        threads: 平行執行緒數
        table: 共用的剖面表

    Returns:
        SweepResult: 報告依 eps_list 順序排列
    """
    values = _check_eps_list(eps_list)
    table = profile_table(template, table)
    specs = [template.with_eps(e) for e in values]
    workers = threads or min(len(specs), os.cpu_count() or 1)

    logger.info(f"{template.kind} 掃描開始: eps={values}, threads={workers}")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        reports = list(executor.map(lambda s: spectral_report(s, table, check_refinement), specs))

    calibrated = False
    if bound is None:
        entry = store.get(template.kind, template.a, template.b) if store is not None else None
        if entry is not None:
            bound = entry.bound
        else:
            first = reports[0]
            bound = calibrated_bound(first.lambda_min)
            calibrated = True
            if store is not None:
                store.set(BoundEntry(kind=template.kind, a=template.a, b=template.b, bound=bound,
                                     eps=first.eps, lambda_min=first.lambda_min))
            logger.info(f"C_cfg 校準: {bound:.6g} (eps={first.eps}, λ={first.lambda_min:.6g})")

    for report in reports:
        report.bound_ok = report.lambda_min >= -bound
    verdict = uniformity_verdict(reports, bound)
    logger.info(f"{template.kind} 掃描結束: C_cfg={bound:.6g}, verdict={verdict}")
    return SweepResult(kind=template.kind, reports=reports, bound=bound, verdict=verdict, calibrated=calibrated)


def write_spectrum_csv(result: SweepResult, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame: pd.DataFrame = result.frame()
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"譜估計結果已寫入: {path}")
    return path

"""
收斂研究處理器 - converge 與 report
"""

import logging

from services.study_service import ConvergeRunConfig, ReportError, converge, report

from .base_handler import BaseHandler, HandlerResponse

logger = logging.getLogger(__name__)


class ConvergeHandler(BaseHandler):
    config_model = ConvergeRunConfig

    def __init__(self):
        super().__init__("converge", "擴散解對銳利介面的 ε 收斂研究")

    def handle(self, cfg: ConvergeRunConfig, args) -> HandlerResponse:
        result = converge(cfg, threads=args.threads)
        lines = [f"收斂研究: m={cfg.m}, R₀={cfg.radius}, t={cfg.t_probe}, collar_factor={cfg.collar_factor}"]
        for row in result.rows:
            lines.append(f"  eps={row.eps:<8g} 介面={row.interface_error:.3e} "
                         f"模長(+)={row.bulk_modulus_error_plus:.3e} 模長(-)={row.bulk_modulus_error_minus:.3e} "
                         f"指向={row.director_error:.3e} 跳躍={row.jump_mismatch:.3e}")
        lines.append(f"能量遞減: {'全部是' if all(result.dissipative) else '有例外'}")
        files = [v for _, v in sorted(result.files.items())]
        if cfg.out_dir:
            summary = report(cfg.out_dir)
            files += summary.files
        return HandlerResponse(text="\n".join(lines), files=files)


class ReportHandler(BaseHandler):
    out_key = None

    def __init__(self):
        super().__init__("report", "整理 converge 輸出目錄，產生 summary.json 與 .dat")

    def handle(self, cfg, args) -> HandlerResponse:
        if not args.out_dir:
            raise ReportError("report 需要 --out-dir")
        summary = report(args.out_dir)
        lines = [f"報告: {len(summary.rows)} 列, config_hash={summary.config_hash or '-'}",
                 summary.energy_note]
        return HandlerResponse(text="\n".join(lines), files=summary.files)

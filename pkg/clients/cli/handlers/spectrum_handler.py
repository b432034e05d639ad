"""
譜估計處理器 - 對 ε 清單求 λ_min 並判定一致下界
"""

import logging
import os

from services.spectral_service import BoundStore, FormSpec, sweep, write_spectrum_csv
from services.study_service import SpectrumRunConfig, split_floats

from .base_handler import BaseHandler, HandlerResponse

logger = logging.getLogger(__name__)


class SpectrumHandler(BaseHandler):
    config_model = SpectrumRunConfig
    out_key = "out"

    def __init__(self):
        super().__init__("spectrum", "線性化二次型的最小特徵值掃描")

    def add_arguments(self, parser) -> None:
        parser.add_argument("--form", choices=["q0", "q1", "vector"], help="二次型")
        parser.add_argument("--a", type=float, help="內井半徑")
        parser.add_argument("--b", type=float, help="外井半徑")
        parser.add_argument("--eps-list", help="遞減的 ε，以逗號分隔")
        parser.add_argument("--nodes", type=int, help="固定節點數")
        parser.add_argument("--out", help="輸出 CSV 路徑")
        parser.add_argument("--bound", type=float, help="直接指定 C_cfg，不讀寫存檔")

    def overrides(self, args) -> dict:
        return {
            "form": args.form,
            "a": args.a,
            "b": args.b,
            "eps_list": split_floats(args.eps_list) if args.eps_list else None,
            "nodes": args.nodes,
            "bound": args.bound,
            "out": args.out,
        }

    def out_value(self, out_dir: str) -> str:
        return os.path.join(out_dir, "spectrum.csv")

    def handle(self, cfg: SpectrumRunConfig, args) -> HandlerResponse:
        template = FormSpec(kind=cfg.form, eps=cfg.eps_list[0], a=cfg.a, b=cfg.b, n=cfg.n, nodes=cfg.nodes,
                            k_res=cfg.k_res, boundary=cfg.boundary, phi_gamma=cfg.phi_gamma,
                            slope_minus=cfg.slope_minus, slope_plus=cfg.slope_plus)
        store = None if cfg.bound is not None else BoundStore()
        result = sweep(template, cfg.eps_list, bound=cfg.bound, store=store, threads=args.threads,
                       check_refinement=cfg.check_refinement)
        lines = [f"{cfg.form} 譜估計: a={cfg.a}, b={cfg.b}, C_cfg={result.bound:.6g}"
                 f"{' (本次校準)' if result.calibrated else ''}"]
        lines += [f"  eps={r.eps:<8g} nodes={r.nodes:<8d} λ_min={r.lambda_min:.10g}" for r in result.reports]
        lines.append(f"一致下界判定: {'通過' if result.verdict else '未通過'}")
        files = [write_spectrum_csv(result, cfg.out)] if cfg.out else []
        return HandlerResponse(text="\n".join(lines), files=files, ok=result.verdict)

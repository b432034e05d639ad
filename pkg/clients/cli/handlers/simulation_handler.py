"""
時間推進處理器 - simulate (擴散介面) 與 sharp (銳利介面參考解)
"""

import logging

from services.diffuse_service import DiffuseRunConfig, check_stability, interface_radius, run_diffuse
from services.sharp_service import SharpRunConfig, run_sharp

from .base_handler import BaseHandler, HandlerResponse

logger = logging.getLogger(__name__)


class SimulateHandler(BaseHandler):
    config_model = DiffuseRunConfig

    def __init__(self):
        super().__init__("simulate", "推進向量 Allen-Cahn 方程")

    def add_arguments(self, parser) -> None:
        parser.add_argument("--restart", help="從檢查點續跑")

    def handle(self, cfg: DiffuseRunConfig, args) -> HandlerResponse:
        check_stability(cfg)
        result = run_diffuse(cfg, restart=args.restart)
        last = result.metrics.iloc[-1]
        lines = [
            f"擴散介面: eps={cfg.eps}, scheme={cfg.scheme}, grid={cfg.grid}, nx={cfg.nx}",
            f"t = {result.time:.6g} (step {result.step})",
            f"能量 = {last['energy']:.12g}, 介面半徑 = {interface_radius(result.final, cfg):.6f}",
            f"能量遞減: {'是' if result.dissipative else '否'} (最大相對增量 {result.max_energy_increase:.3e})",
        ]
        files = [v for k, v in sorted(result.files.items()) if k != "checkpoints"]
        files += result.files.get("checkpoints", [])
        return HandlerResponse(text="\n".join(lines), files=files)


class SharpHandler(BaseHandler):
    config_model = SharpRunConfig

    def __init__(self):
        super().__init__("sharp", "推進銳利介面極限系統")

    def handle(self, cfg: SharpRunConfig, args) -> HandlerResponse:
        result = run_sharp(cfg)
        state = result.final
        lines = [
            f"銳利介面: geometry={cfg.geometry}, m={cfg.m}, nx={cfg.nx}, dt={cfg.dt}",
            f"t = {state.t:.6g}, 介面位置 = {0.0 if state.extinct else state.interface_position:.8f}",
            f"最大跳躍殘差 = {result.metrics['jump_residual'].max():.3e}",
        ]
        if state.extinct:
            lines.append(f"介面已於 t = {state.extinction_time:.6g} 消失")
        return HandlerResponse(text="\n".join(lines), files=[v for _, v in sorted(result.files.items())])

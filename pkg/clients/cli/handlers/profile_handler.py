"""
剖面處理器 - 建表、能量常數、衰減率與等分配檢查
"""

import logging

from services.profile_service import (
    ProfileConfig, ProfileParams, build_table, decay_rate_fit, energy_constant_e, equipartition_defect,
    write_profile_csv,
)
from services.study_service import ProfileRunConfig

from .base_handler import BaseHandler, HandlerResponse

logger = logging.getLogger(__name__)


class ProfileHandler(BaseHandler):
    config_model = ProfileRunConfig

    def __init__(self):
        super().__init__("profile", "建立 ρ₀, η₁ 剖面表並輸出 profile.csv")

    def handle(self, cfg: ProfileRunConfig, args) -> HandlerResponse:
        params = ProfileParams(a=cfg.a, b=cfg.b)
        table = build_table(params, z_max=cfg.z_max, nodes=cfg.nodes)
        energy = energy_constant_e(params, table)
        lines = [
            f"剖面表: a={cfg.a}, b={cfg.b}, z_max={cfg.z_max}, nodes={cfg.nodes}",
            f"ρ₀(0) = {table.rho0[table.center_index]:.10f}",
            f"e 閉式解 = {energy.closed_form:.12f}, 數值積分差 = {energy.difference:.3e}",
            f"等分配殘差 = {equipartition_defect(table):.3e}",
        ]
        if table.z_max >= ProfileConfig.DECAY_WINDOW[1]:
            rates = decay_rate_fit(table)
            lines.append(f"衰減率: rate_plus = {rates.rate_plus:.6f}, rate_minus = {rates.rate_minus:.6f}")

        files = []
        path = self.output_path(cfg.out_dir, "profile.csv")
        if path:
            files.append(write_profile_csv(table, path))
        return HandlerResponse(text="\n".join(lines), files=files)

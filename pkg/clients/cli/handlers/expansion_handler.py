"""
漸近展開處理器 - expansion-residual 與 compat-check
"""

import logging

import pandas as pd

from services.expansion_service import (
    AngleDirector, ResidualRunConfig, compat_mcf_quadrature, jump_identity_check, loglog_slope, residual_sweep,
    write_residual_csv,
)
from services.field_service import InterfaceGeometry
from services.profile_service import ProfileParams, build_table
from services.study_service import CompatRunConfig

from .base_handler import BaseHandler, HandlerResponse

logger = logging.getLogger(__name__)


class ResidualHandler(BaseHandler):
    config_model = ResidualRunConfig

    def __init__(self):
        super().__init__("expansion-residual", "量測 u^K 的 PDE 殘差對 ε 的斜率")

    def handle(self, cfg: ResidualRunConfig, args) -> HandlerResponse:
        frame = residual_sweep(cfg)
        lines = [f"u^K 殘差: K={cfg.K}, weight={cfg.weight}"]
        lines += [f"  eps={row.eps:<8g} sup={row.sup:.6e}" for row in frame.itertuples()]
        if len(frame) >= 2:
            lines.append(f"log-log 斜率 = {loglog_slope(frame['eps'], frame['sup']):.3f}")
        files = [write_residual_csv(frame, cfg.out_dir)] if cfg.out_dir else []
        return HandlerResponse(text="\n".join(lines), files=files)


class CompatHandler(BaseHandler):
    config_model = CompatRunConfig

    def __init__(self):
        super().__init__("compat-check", "檢查內層方程的相容性恆等式")

    def handle(self, cfg: CompatRunConfig, args) -> HandlerResponse:
        table = build_table(ProfileParams(a=cfg.a, b=cfg.b))
        director = AngleDirector(phi_gamma=cfg.phi_gamma, slope_minus=cfg.slope_minus,
                                 slope_plus=cfg.slope_plus, n=cfg.n)
        geometry = InterfaceGeometry(kind="radial", center=(0.0,) * cfg.m, radius=cfg.radius)
        normal = compat_mcf_quadrature(table, director, geometry, weight=cfg.weight, m=cfg.m)
        dnu_minus, dnu_plus = director.normal_derivatives()
        jump = jump_identity_check(table, dnu_minus, dnu_plus, cfg.weight)
        defect = director.jump_defect(cfg.a, cfg.b)

        row = {"e_quadrature": normal.e_quadrature, "normal_residual": normal.residual,
               "jump_deviation": jump.deviation, "jump_defect": defect}
        lines = [
            f"相容性檢查: a={cfg.a}, b={cfg.b}, weight={cfg.weight}",
            f"e = {normal.e_quadrature:.12f}, 法向恆等式殘差 = {normal.residual:.3e}",
            f"通量跳躍 |b²s⁺ - a²s⁻| = {defect:.3e}, 內層恆等式偏差 = {jump.deviation:.3e}",
        ]
        files = []
        path = self.output_path(cfg.out_dir, "compat.csv")
        if path:
            pd.DataFrame([row]).to_csv(path, index=False, float_format="%.17g")
            files.append(path)
        return HandlerResponse(text="\n".join(lines), files=files)

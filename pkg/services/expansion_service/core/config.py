"""
漸近展開服務配置
"""

import os
from dotenv import load_dotenv

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class ExpansionConfig:
    # ω⁻·ω⁺ 比 -1 + TOL 更接近就視為對蹠
    ANTIPODAL_TOL: float = 1e-8

    # 夾角小於這個值時直接回傳共同端點
    SMALL_ANGLE: float = 1e-12

    # 截斷函數半寬 δ
    DELTA: float = float(os.getenv("LAB_DELTA", "0.3"))

    # 殘差的差分步長：空間 h = FD_FACTOR·ε，時間 dt_residual
    FD_FACTOR: float = 5e-3
    DT_RESIDUAL: float = float(os.getenv("LAB_DT_RESIDUAL", "1e-6"))

    # 取樣點數與範圍 (介面兩側各 RESIDUAL_SPAN·δ)
    RESIDUAL_POINTS: int = int(os.getenv("LAB_RESIDUAL_POINTS", "801"))
    RESIDUAL_SPAN: float = 2.5

    # 兩點問題相容條件容許值
    COMPAT_TOL: float = 1e-8

    @classmethod
    def fd_step(cls, eps: float) -> float:
        return cls.FD_FACTOR * eps

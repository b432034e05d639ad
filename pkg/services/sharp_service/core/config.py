"""
銳利介面服務配置
"""

import os
from dotenv import load_dotenv

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class SharpConfig:
    # 顯式熱方程步長上限 dt ≤ STABILITY·h²/(1 + b²/a²)
    STABILITY: float = float(os.getenv("LAB_SHARP_STABILITY", "0.5"))

    # 介面距離節點至少 GAP·h
    MIN_INTERFACE_GAP: float = 1e-3

    # 正規化前長度下限
    DEGENERATE_NORM: float = 1e-6

    # 預設場景
    DEFAULT_RADIUS: float = 0.4
    DEFAULT_NODES: int = int(os.getenv("LAB_SHARP_NODES", "64"))

    @classmethod
    def stability_limit(cls, h: float, a: float, b: float) -> float:
        return cls.STABILITY * h ** 2 / (1.0 + (b / a) ** 2)

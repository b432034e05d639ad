"""
剖面服務配置 - 預設值可由環境變數覆蓋
"""

import os
from dotenv import load_dotenv

# 專案根目錄
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

# 載入環境變數 - 強制覆蓋系統環境變數
load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class ProfileConfig:
    # 井半徑
    A: float = float(os.getenv("LAB_A", "1.0"))
    B: float = float(os.getenv("LAB_B", "2.0"))
    C0: float = 0.0  # 不失一般性取 c₀ = 0

    # 表格範圍 - ±10 之外的尾端已低於捨入誤差
    Z_MAX: float = float(os.getenv("LAB_PROFILE_ZMAX", "10.0"))
    NODES: int = int(os.getenv("LAB_PROFILE_NODES", "4001"))

    # 求解器
    BISECT_XTOL: float = 1e-8
    NEWTON_STEPS: int = 5
    RESIDUAL_TOL: float = 1e-12
    TAIL_THRESHOLD: float = 1e-3
    TAIL_ITERATIONS: int = 60

    # 檢查容差
    ETA_OVERSHOOT: float = 1e-10
    CONSISTENCY_TOL: float = 1e-6
    # Simpson 交叉檢查的容差 max(CONSISTENCY_TOL, SIMPSON_H4·h⁴)
    SIMPSON_H4: float = 10.0

    # α 預設取上界的 99%
    ALPHA_FRACTION: float = float(os.getenv("LAB_ALPHA_FRACTION", "0.99"))

    # 衰減擬合區間
    DECAY_WINDOW: tuple = (5.0, 9.0)

    @classmethod
    def valid_table_size(cls, z_max: float, nodes: int) -> bool:
        """節點數必須是奇數，中心節點才會落在 z = 0"""
        return z_max > 0 and nodes >= 5 and nodes % 2 == 1

    @classmethod
    def simpson_tolerance(cls, z_max: float, nodes: int) -> float:
        h = 2.0 * z_max / (nodes - 1)
        return max(cls.CONSISTENCY_TOL, cls.SIMPSON_H4 * h ** 4)

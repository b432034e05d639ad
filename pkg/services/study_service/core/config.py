"""
收斂研究服務配置
"""

import math
import os
from dotenv import load_dotenv

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class StudyConfig:
    # 預設場景：m=2 徑向，R₀ = 0.4，t = 0.01 (消失時間 0.08 之前)
    T_PROBE: float = float(os.getenv("LAB_T_PROBE", "0.01"))
    RADIUS: float = 0.4
    EPS_LIST: tuple = (0.1, 0.05, 0.025)

    # 擴散網格 nx = max(MIN_NODES, ⌈CELLS_PER_EPS·length/ε⌉)
    CELLS_PER_EPS: int = 32
    MIN_NODES: int = 512
    DT_FACTOR: float = 0.5

    # 介面兩側排除帶寬 COLLAR_FACTOR·ε·|log ε|
    COLLAR_FACTOR: float = float(os.getenv("LAB_COLLAR_FACTOR", "1.0"))

    # 參考解網格與步長 (顯式上限的比例)
    SHARP_NODES: int = int(os.getenv("LAB_SHARP_STUDY_NODES", "256"))
    SHARP_DT_FACTOR: float = 0.9

    # 0 表示依 CPU 數決定
    THREADS: int = int(os.getenv("LAB_THREADS", "0"))

    CONFIG_NAME: str = "config.env"
    CONVERGENCE_NAME: str = "convergence.csv"
    RATES_NAME: str = "rates.csv"
    SUMMARY_NAME: str = "summary.json"
    CSV_FLOAT_FORMAT: str = "%.17g"

    @classmethod
    def diffuse_nodes(cls, eps: float, length: float = 1.0) -> int:
        return max(cls.MIN_NODES, math.ceil(cls.CELLS_PER_EPS * length / eps))

    @classmethod
    def collar(cls, eps: float, factor: float = None) -> float:
        factor = cls.COLLAR_FACTOR if factor is None else factor
        return factor * eps * abs(math.log(eps))

    @classmethod
    def workers(cls, tasks: int, threads: int = None) -> int:
        threads = cls.THREADS if threads is None else threads
        if threads and threads > 0:
            return threads
        return max(1, min(tasks, os.cpu_count() or 1))

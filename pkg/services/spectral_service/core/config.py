"""
譜估計服務配置
"""

import math
import os
from dotenv import load_dotenv

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class SpectralConfig:
    # 解析度 nodes = max(MIN_NODES, ⌈CELLS_PER_EPS/ε⌉, ⌈K_RES/ε²⌉) + 1
    MIN_NODES: int = 256
    CELLS_PER_EPS: int = 8
    K_RES: int = int(os.getenv("LAB_SPECTRAL_KRES", "64"))

    # 位移二分：區間寬度 ≤ BISECT_RTOL·max(1, |σ|)
    BISECT_RTOL: float = 1e-3
    BISECT_MAXITER: int = 200

    # eigsh
    EIG_TOL: float = 1e-10
    MAX_ITER: int = int(os.getenv("LAB_EIG_MAXITER", "5000"))
    RESIDUAL_TOL: float = 1e-6
    # 殘差的捨入下限 ROUNDOFF_FACTOR·u·‖A‖₁，‖A‖ 隨 ε⁻⁴ 增長
    ROUNDOFF_FACTOR: float = 64.0

    # 加倍網格後的相對變動上限，分母 max(|λ|, LAMBDA_FLOOR)
    REFINE_TOL: float = 0.05
    LAMBDA_FLOOR: float = 1.0

    # 一致性判定 |λ(ε_{i+1})| ≤ GROWTH_FACTOR·|λ(ε_i)| + GROWTH_SLACK
    GROWTH_FACTOR: float = 1.5
    GROWTH_SLACK: float = 1e-6

    # C_cfg = CALIBRATION_FACTOR·max(1, |λ_min|)
    CALIBRATION_FACTOR: float = 2.0
    BOUND_STORE: str = os.getenv("LAB_BOUND_STORE", os.path.join("data", "spectral_bounds.json"))

    # 特徵向量集中度：|r| ≤ LAYER_WIDTH·ε 內的質量
    LAYER_WIDTH: float = 10.0
    LAYER_MASS: float = 0.9

    # 端點估計的隨機樣本
    ENDPOINT_SAMPLES: int = 8
    ENDPOINT_MODES: int = 6
    ENDPOINT_SEED: int = int(os.getenv("LAB_ENDPOINT_SEED", "0"))

    @classmethod
    def min_nodes(cls, eps: float) -> int:
        return max(cls.MIN_NODES, math.ceil(cls.CELLS_PER_EPS / eps))

    @classmethod
    def resolution(cls, eps: float, k_res: int = None) -> int:
        k_res = cls.K_RES if k_res is None else k_res
        return max(cls.min_nodes(eps), math.ceil(k_res / eps ** 2)) + 1

    @classmethod
    def store_path(cls) -> str:
        path = cls.BOUND_STORE
        return path if os.path.isabs(path) else os.path.join(PROJECT_ROOT, path)

"""
擴散介面服務配置
"""

import os
from dotenv import load_dotenv

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', '..'))

load_dotenv(dotenv_path=os.path.join(PROJECT_ROOT, '.env'), override=True)


class DiffuseConfig:
    # dt ≤ FACTOR·min(h², c·ε²)，c 可由 LAB_STABILITY_C 覆蓋
    STABILITY_FACTOR: float = 0.2
    STABILITY_C: float = float(os.getenv("LAB_STABILITY_C", "0.05"))

    # 能量單調性的相對容許值
    ENERGY_TOL: float = 1e-9
    ENERGY_FLOOR: float = 1e-12

    DEFAULT_NODES: int = int(os.getenv("LAB_DIFFUSE_NODES", "256"))
    DEFAULT_EPS: float = float(os.getenv("LAB_DIFFUSE_EPS", "0.05"))

    CHECKPOINT_PATTERN: str = "checkpoint_{step:08d}.bin"
    CSV_FLOAT_FORMAT: str = "%.17g"

    @classmethod
    def dt_limit(cls, scheme: str, h: float, eps: float, c: float = None) -> float:
        """
        顯式格式受 h² 與 ε² 同時限制；IMEX 的擴散是隱式，只剩反應項的 ε² 限制
        """
        c = cls.STABILITY_C if c is None else c
        if scheme == "explicit":
            return cls.STABILITY_FACTOR * min(h ** 2, c * eps ** 2)
        return cls.STABILITY_FACTOR * c * eps ** 2

"""
銳利介面數據模型
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from services.field_service import InterfaceGeometry

from .config import SharpConfig


class SharpRunConfig(BaseModel):
    """
    極限系統的執行參數

    初始指向場以角度給出 (n ≥ 2)：φ = phi_gamma + slope_∓·d，d 是符號距離。
    phi_left / phi_right 只用於 planar，覆蓋兩端 Dirichlet 值。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    n: int = 2
    m: int = 2
    geometry: str = "radial"
    radius: float = SharpConfig.DEFAULT_RADIUS
    offset: float = 0.5
    orientation: int = 1
    length: float = 1.0
    nx: int = SharpConfig.DEFAULT_NODES
    dt: float = 1e-5
    t_end: float = 0.01
    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 0.25
    phi_left: Optional[float] = None
    phi_right: Optional[float] = None
    metrics_every: int = 10
    out_dir: Optional[str] = None

    @field_validator("geometry")
    @classmethod
    def _geometry(cls, value: str) -> str:
        if value not in ("radial", "planar"):
            raise ValueError(f"geometry 只能是 radial 或 planar: {value}")
        return value

    @model_validator(mode="after")
    def _check(self) -> "SharpRunConfig":
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.n < 1 or self.m not in (1, 2):
            raise ValueError(f"n ≥ 1 且 m ∈ {{1, 2}}，收到 n={self.n}, m={self.m}")
        if self.nx < 8 or self.length <= 0:
            raise ValueError(f"網格不合法: nx={self.nx}, length={self.length}")
        if not self.dt > 0 or self.t_end < 0:
            raise ValueError(f"時間參數不合法: dt={self.dt}, t_end={self.t_end}")
        limit = SharpConfig.stability_limit(self.length / self.nx, self.a, self.b)
        if self.dt > limit:
            raise ValueError(f"dt={self.dt} 超過顯式穩定上限 {limit:.3e}")
        position = self.radius if self.geometry == "radial" else self.offset
        if not 0 < position < self.length:
            raise ValueError(f"介面位置 {position} 必須落在 (0, {self.length})")
        if self.orientation not in (-1, 1):
            raise ValueError(f"orientation 只能是 ±1: {self.orientation}")
        if self.metrics_every < 1:
            raise ValueError("metrics_every 至少為 1")
        return self

    @property
    def h(self) -> float:
        return self.length / self.nx

    def geometry_model(self) -> InterfaceGeometry:
        if self.geometry == "radial":
            return InterfaceGeometry(kind="radial", center=(0.0,), radius=self.radius)
        return InterfaceGeometry(kind="planar", axis=0, offset=self.offset, orientation=self.orientation)


@dataclass(frozen=True)
class SharpState:
    """
    某時刻的極限系統狀態

    omega 是整條一維網格上的單位向量 (N, n)，左側節點屬於介面左邊的子區域。
    radial 與 orientation=+1 的 planar 左側是 Ω⁻。
    """
    t: float
    geometry: InterfaceGeometry
    omega: np.ndarray
    omega_gamma: np.ndarray
    step: int = 0
    jump_residual: float = 0.0
    extinct: bool = False
    extinction_time: Optional[float] = None

    @property
    def interface_position(self) -> float:
        return self.geometry.radius if self.geometry.kind == "radial" else self.geometry.offset

    @property
    def left_is_minus(self) -> bool:
        return self.geometry.kind == "radial" or self.geometry.orientation == 1


@dataclass
class SharpResult:
    """run_sharp 的輸出"""
    config: SharpRunConfig
    final: SharpState
    metrics: pd.DataFrame
    nodes: np.ndarray
    files: dict = field(default_factory=dict)

"""
擴散介面數據模型
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from services.field_service import OuterBoundary, PeriodicGrid, RadialGrid, VectorField
from services.potential_service import PotentialParams
from services.profile_service import ProfileParams

from .config import DiffuseConfig


class DiffuseRunConfig(BaseModel):
    """
    ∂ₜu = Δu - ε⁻²f(u) 的執行參數

    grid=radial 時 r ∈ (0, length)，r=0 對稱；grid=periodic 時是邊長 length 的週期盒，
    介面圓心在盒子中央。初始條件 init:
        profile  ρ₀(d/ε)·ω̄(η₁(d/ε))
        front    tanh 形狀的模長，方向用同一個 tanh 權重沿 ω⁻ 到 ω⁺ 的弧內插
        uniform  常數場 modulus·ω(phi_gamma)
        file     從 seed_file 檢查點讀入
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    eps: float = DiffuseConfig.DEFAULT_EPS
    dt: float = 1e-5
    t_end: float = 0.0
    scheme: str = "imex"
    grid: str = "radial"
    m: int = 2
    nx: int = DiffuseConfig.DEFAULT_NODES
    length: float = 1.0
    outer_bc: OuterBoundary = OuterBoundary.DIRICHLET
    n: int = 2
    a: float = 1.0
    b: float = 2.0
    init: str = "profile"
    radius: float = 0.4
    modulus: Optional[float] = None
    phi_gamma: float = 0.0
    slope_minus: float = 0.0
    slope_plus: float = 0.0
    phi_minus: Optional[float] = None
    phi_plus: Optional[float] = None
    seed_file: Optional[str] = None
    stability_c: float = DiffuseConfig.STABILITY_C
    checkpoint_every: int = 0
    metrics_every: int = 10
    out_dir: Optional[str] = None

    @field_validator("scheme")
    @classmethod
    def _scheme(cls, value: str) -> str:
        if value not in ("explicit", "imex"):
            raise ValueError(f"scheme 只能是 explicit 或 imex: {value}")
        return value

    @field_validator("grid")
    @classmethod
    def _grid(cls, value: str) -> str:
        if value not in ("radial", "periodic"):
            raise ValueError(f"grid 只能是 radial 或 periodic: {value}")
        return value

    @field_validator("init")
    @classmethod
    def _init(cls, value: str) -> str:
        if value not in ("profile", "front", "uniform", "file"):
            raise ValueError(f"未知初始條件: {value}")
        return value

    @model_validator(mode="after")
    def _check(self) -> "DiffuseRunConfig":
        if not self.eps > 0 or not self.dt > 0 or self.t_end < 0:
            raise ValueError(f"需要 eps > 0, dt > 0, t_end ≥ 0，收到 eps={self.eps}, dt={self.dt}, t_end={self.t_end}")
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.n < 1 or self.m not in (1, 2):
            raise ValueError(f"n ≥ 1 且 m ∈ {{1, 2}}，收到 n={self.n}, m={self.m}")
        if self.length <= 0:
            raise ValueError(f"length 必須為正: {self.length}")
        limit = self.length if self.grid == "radial" else 0.5 * self.length
        if self.init in ("profile", "front") and not 0 < self.radius < limit:
            raise ValueError(f"介面位置 radius={self.radius} 必須落在 (0, {limit})")
        if self.init == "file" and not self.seed_file:
            raise ValueError("init=file 需要 seed_file")
        if self.modulus is not None and not self.modulus > 0:
            raise ValueError(f"modulus 必須為正: {self.modulus}")
        if not self.stability_c > 0:
            raise ValueError(f"stability_c 必須為正: {self.stability_c}")
        if self.checkpoint_every < 0 or self.metrics_every < 1:
            raise ValueError("checkpoint_every ≥ 0 且 metrics_every ≥ 1")
        return self

    def grid_model(self):
        if self.grid == "radial":
            return RadialGrid(m=self.m, size=self.nx, length=self.length, outer_bc=self.outer_bc)
        return PeriodicGrid(m=self.m, sizes=(self.nx,) * self.m, lengths=(self.length,) * self.m)

    @property
    def h(self) -> float:
        return self.length / self.nx

    @property
    def dt_limit(self) -> float:
        return DiffuseConfig.dt_limit(self.scheme, self.h, self.eps, self.stability_c)

    @property
    def steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def potential(self) -> PotentialParams:
        return PotentialParams(a=self.a, b=self.b)

    @property
    def profile_params(self) -> ProfileParams:
        return ProfileParams(a=self.a, b=self.b)

    @property
    def center(self) -> tuple:
        """介面圓心；徑向網格在原點"""
        if self.grid == "radial":
            return (0.0,) * self.m
        return (0.5 * self.length,) * self.m


@dataclass
class DiffuseResult:
    config: DiffuseRunConfig
    final: VectorField
    time: float
    step: int
    metrics: pd.DataFrame
    max_energy_increase: float = float("-inf")
    files: dict = field(default_factory=dict)

    @property
    def dissipative(self) -> bool:
        """每一步 E(u_{k+1}) ≤ E(u_k) + tol·|E(u_k)|；max_energy_increase 是相對增量的最大值"""
        return self.max_energy_increase <= DiffuseConfig.ENERGY_TOL

    def modulus(self) -> np.ndarray:
        return self.final.modulus()

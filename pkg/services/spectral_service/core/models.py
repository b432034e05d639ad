"""
譜估計數據模型
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from services.potential_service import PotentialParams

from .config import SpectralConfig

FORM_KINDS = ("q0", "q1", "vector")
SPECTRUM_COLUMNS = ["eps", "nodes", "lambda_min", "residual", "bound_ok"]


class FormSpec(BaseModel):
    """
    I = [-1, 1] 上的二次型

        q0:      ∫ |∂r b|² + ε⁻² f_A(θ₂,ε) b²
        q1:      ∫ |∂r b|² + ε⁻² f_B(θ₂,ε) b²
        vector:  ∫ |∂r u|² + ε⁻² u·Df(u^K) u，u^K 是平面截面上的近似解

    θ₂,ε(r) = ρ₀(r/ε)。plumbing=True 時位能歸零 (只剩 Laplacian)。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: str = "q1"
    eps: float = 0.05
    nodes: Optional[int] = None
    k_res: int = SpectralConfig.K_RES
    a: float = 1.0
    b: float = 2.0
    n: int = 2
    boundary: str = "free"
    plumbing: bool = False
    phi_gamma: float = 0.0
    slope_minus: float = 0.0
    slope_plus: float = 0.0
    delta: float = 0.5

    @field_validator("kind")
    @classmethod
    def _kind(cls, value: str) -> str:
        if value not in FORM_KINDS:
            raise ValueError(f"kind 只能是 {FORM_KINDS}: {value}")
        return value

    @field_validator("boundary")
    @classmethod
    def _boundary(cls, value: str) -> str:
        if value not in ("free", "dirichlet"):
            raise ValueError(f"boundary 只能是 free 或 dirichlet: {value}")
        return value

    @model_validator(mode="after")
    def _check(self) -> "FormSpec":
        if not self.eps > 0:
            raise ValueError(f"eps 必須為正: {self.eps}")
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.kind == "vector" and self.n < 2:
            raise ValueError(f"vector 型需要 n ≥ 2: {self.n}")
        if self.k_res < 1:
            raise ValueError(f"k_res 至少為 1: {self.k_res}")
        minimum = SpectralConfig.min_nodes(self.eps)
        if self.nodes is not None and self.nodes < minimum:
            raise ValueError(f"nodes={self.nodes} 不足，ε={self.eps} 至少需要 {minimum}")
        return self

    @property
    def resolution(self) -> int:
        return self.nodes if self.nodes is not None else SpectralConfig.resolution(self.eps, self.k_res)

    @property
    def width(self) -> int:
        """每個節點的分量數"""
        return self.n if self.kind == "vector" else 1

    @property
    def potential(self) -> PotentialParams:
        return PotentialParams(a=self.a, b=self.b)

    def grid(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.resolution)

    def with_eps(self, eps: float) -> "FormSpec":
        return FormSpec(**{**self.model_dump(), "eps": float(eps)})

    def refined(self) -> "FormSpec":
        """網格加倍 (間距減半)"""
        return FormSpec(**{**self.model_dump(), "nodes": 2 * (self.resolution - 1) + 1})


@dataclass(frozen=True, eq=False)
class FormMatrix:
    """
    對稱化後的矩陣 A = W^{-1/2}(K + W V)W^{-1/2}

    r 是保留下來的節點 (Dirichlet 時去掉兩端)，weights 是集中質量。
    """
    spec: FormSpec
    matrix: object
    r: np.ndarray
    weights: np.ndarray
    stiffness: object
    potential: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass
class SpectralReport:
    eps: float
    kind: str
    lambda_min: float
    eigvector: np.ndarray
    nodes: int
    residual: float
    layer_mass: float
    lambda_refined: Optional[float] = None
    bound_ok: Optional[bool] = None

    @property
    def localized(self) -> bool:
        """負方向要集中在介面層內；λ ≥ 0 時沒有負方向可檢查"""
        return self.lambda_min >= 0.0 or self.layer_mass >= SpectralConfig.LAYER_MASS

    def row(self) -> dict:
        return {
            "eps": self.eps,
            "nodes": self.nodes,
            "lambda_min": self.lambda_min,
            "residual": self.residual,
            "bound_ok": self.bound_ok,
        }


@dataclass
class SweepResult:
    kind: str
    reports: List[SpectralReport]
    bound: float
    verdict: bool
    calibrated: bool = False

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.row() for r in self.reports], columns=SPECTRUM_COLUMNS)


@dataclass
class EndpointReport:
    eps: float
    worst: float
    ratios: Dict[str, float] = field(default_factory=dict)


class BoundEntry(BaseModel):
    """存檔中的一筆 C_cfg"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: str
    a: float
    b: float
    bound: float
    eps: float
    lambda_min: float

    @property
    def key(self) -> str:
        return bound_key(self.kind, self.a, self.b)


def bound_key(kind: str, a: float, b: float) -> str:
    return f"{kind}:a={a!r}:b={b!r}"

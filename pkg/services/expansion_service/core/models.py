"""
漸近展開數據模型
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from services.field_service import InterfaceGeometry

from .config import ExpansionConfig
from .exceptions import AmbiguousGeodesicError, DomainRangeError


@dataclass(frozen=True, eq=False)
class GeodesicFrame:
    """
    ω⁻ 到 ω⁺ 的大圓弧

    兩端可以是單一向量 (n,) 或整個場 (..., n)；angle 是逐點夾角。
    """
    omega_minus: np.ndarray
    omega_plus: np.ndarray
    angle: np.ndarray = field(init=False)

    def __post_init__(self):
        minus = np.asarray(self.omega_minus, dtype=float)
        plus = np.asarray(self.omega_plus, dtype=float)
        if minus.shape != plus.shape:
            raise DomainRangeError(f"ω⁻ 與 ω⁺ 形狀不同: {minus.shape} vs {plus.shape}")
        for name, vec in (("ω⁻", minus), ("ω⁺", plus)):
            defect = float(np.max(np.abs(np.linalg.norm(vec, axis=-1) - 1.0)))
            if defect > 1e-10:
                raise DomainRangeError(f"{name} 不是單位向量: ||ω|-1| = {defect:.3e}")
        dot = np.clip(np.sum(minus * plus, axis=-1), -1.0, 1.0)
        if np.any(dot < -1.0 + ExpansionConfig.ANTIPODAL_TOL):
            raise AmbiguousGeodesicError("ω⁻ 與 ω⁺ 對蹠，測地線不唯一")
        cross = np.linalg.norm(plus - dot[..., None] * minus, axis=-1)
        object.__setattr__(self, "omega_minus", minus)
        object.__setattr__(self, "omega_plus", plus)
        object.__setattr__(self, "angle", np.arctan2(cross, dot))

    @property
    def n(self) -> int:
        return self.omega_minus.shape[-1]


class AngleDirector(BaseModel):
    """
    兩側外場指向 ω± = (cos φ±, sin φ±, 0, …)，φ± = phi_gamma + slope_∓·d

    兩個角度函數都延拓到整個空間，在 Γ 上相等。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 0.25
    n: int = 2

    @field_validator("n")
    @classmethod
    def _n(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"角度指向場需要 n ≥ 2: {value}")
        return value

    def _directors(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        out = np.zeros(phi.shape + (self.n,))
        out[..., 0] = np.cos(phi)
        out[..., 1] = np.sin(phi)
        return out

    def angle_minus(self, d):
        return self.phi_gamma + self.slope_minus * np.asarray(d, dtype=float)

    def angle_plus(self, d):
        return self.phi_gamma + self.slope_plus * np.asarray(d, dtype=float)

    def omega_minus(self, d) -> np.ndarray:
        return self._directors(self.angle_minus(d))

    def omega_plus(self, d) -> np.ndarray:
        return self._directors(self.angle_plus(d))

    def frame(self, d) -> GeodesicFrame:
        return GeodesicFrame(self.omega_minus(d), self.omega_plus(d))

    def tangent(self, omega) -> np.ndarray:
        """在 (e₀, e₁) 平面內把 ω 轉 90°，即角度增加的方向"""
        omega = np.asarray(omega, dtype=float)
        out = np.zeros_like(omega)
        out[..., 0] = -omega[..., 1]
        out[..., 1] = omega[..., 0]
        return out

    def normal_derivatives(self) -> Tuple[np.ndarray, np.ndarray]:
        """Γ 上的 (∂νω⁻, ∂νω⁺)"""
        t = self.tangent(self._directors(self.phi_gamma))
        return self.slope_minus * t, self.slope_plus * t

    def jump_defect(self, a: float, b: float) -> float:
        """|b²s⁺ - a²s⁻|，為 0 表示滿足通量跳躍條件"""
        return abs(b ** 2 * self.slope_plus - a ** 2 * self.slope_minus)


class ApproxConfig(BaseModel):
    """u^K 的組裝參數"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    n: int = 2
    m: int = 2
    K: int = 0
    eps: float = 0.05
    delta: float = ExpansionConfig.DELTA
    weight: str = "eta1"
    geometry: InterfaceGeometry = InterfaceGeometry(kind="radial", radius=1.0)
    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 0.25
    domain_length: Optional[float] = None

    @model_validator(mode="after")
    def _check(self) -> "ApproxConfig":
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.K not in (0, 1):
            raise ValueError(f"只支援 K ∈ {{0, 1}}: {self.K}")
        if self.weight not in ("eta1", "profile"):
            raise ValueError(f"weight 只能是 eta1 或 profile: {self.weight}")
        if not (self.eps > 0 and self.delta > 0):
            raise ValueError(f"eps 與 delta 必須為正: eps={self.eps}, delta={self.delta}")
        if self.m not in (1, 2) or self.n < 2:
            raise ValueError(f"需要 m ∈ {{1, 2}} 且 n ≥ 2: m={self.m}, n={self.n}")
        return self

    @property
    def director(self) -> AngleDirector:
        return AngleDirector(phi_gamma=self.phi_gamma, slope_minus=self.slope_minus,
                             slope_plus=self.slope_plus, n=self.n)


class ResidualRunConfig(BaseModel):
    """expansion-residual 指令的參數"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    m: int = 2
    geometry: str = "radial"
    radius: float = 1.0
    eps_list: Tuple[float, ...] = (0.1, 0.05, 0.025)
    delta: float = ExpansionConfig.DELTA
    K: int = 0
    weight: str = "eta1"
    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 1.0
    dt_residual: float = ExpansionConfig.DT_RESIDUAL
    residual_points: int = ExpansionConfig.RESIDUAL_POINTS
    out_dir: Optional[str] = None

    @field_validator("eps_list", mode="before")
    @classmethod
    def _split(cls, value):
        if isinstance(value, str):
            return tuple(float(v) for v in value.replace(" ", "").split(",") if v)
        return value

    @model_validator(mode="after")
    def _check(self) -> "ResidualRunConfig":
        if self.geometry not in ("radial", "planar"):
            raise ValueError(f"geometry 只能是 radial 或 planar: {self.geometry}")
        if not self.eps_list or any(e <= 0 for e in self.eps_list):
            raise ValueError(f"eps_list 必須是正數列表: {self.eps_list}")
        if any(x <= y for x, y in zip(self.eps_list, self.eps_list[1:])):
            raise ValueError(f"eps_list 必須遞減: {self.eps_list}")
        if self.dt_residual <= 0 or self.residual_points < 3:
            raise ValueError(f"取樣設定不合法: dt_residual={self.dt_residual}, residual_points={self.residual_points}")
        return self

    def geometry_model(self) -> InterfaceGeometry:
        if self.geometry == "radial":
            return InterfaceGeometry(kind="radial", radius=self.radius)
        return InterfaceGeometry(kind="planar", axis=0, offset=self.radius)

    def approx_config(self, eps: float) -> ApproxConfig:
        return ApproxConfig(a=self.a, b=self.b, m=self.m, K=self.K, eps=eps, delta=self.delta,
                            weight=self.weight, geometry=self.geometry_model(), phi_gamma=self.phi_gamma,
                            slope_minus=self.slope_minus, slope_plus=self.slope_plus)


@dataclass(frozen=True, eq=False)
class TwoPointSolution:
    """-v'' + f(ρ₀)v = h 在表格網格上的解；超出網格取端點值"""
    kind: str
    z: np.ndarray
    v: np.ndarray
    compat: float

    def __call__(self, z):
        return np.interp(np.asarray(z, dtype=float), self.z, self.v)

    @property
    def limits(self) -> Tuple[float, float]:
        return float(self.v[0]), float(self.v[-1])


@dataclass
class ResidualReport:
    eps: float
    sup: float
    field: np.ndarray
    points: np.ndarray
    distance: np.ndarray

    @property
    def argmax_distance(self) -> float:
        return float(self.distance[int(np.argmax(np.linalg.norm(self.field, axis=-1)))])


@dataclass
class CompatReport:
    e_quadrature: float
    residual: float


@dataclass
class JumpIdentityReport:
    deviation: float
    constant: np.ndarray
    predicted: np.ndarray


@dataclass
class TelescopingReport:
    quadrature: float
    endpoint: float
    limit: float

    @property
    def deviation(self) -> float:
        return abs(self.quadrature - self.endpoint)

"""
場數據模型 - 網格、向量場、介面幾何
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .config import FieldConfig
from .exceptions import GridError


class OuterBoundary(str, Enum):
    """徑向網格外邊界條件"""
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class PeriodicGrid(BaseModel):
    """週期網格，節點 x_i = i·h，h = L/N"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m: int = 1
    sizes: Tuple[int, ...] = (256,)
    lengths: Tuple[float, ...] = (1.0,)

    @model_validator(mode="after")
    def _check(self) -> "PeriodicGrid":
        if self.m not in (1, 2):
            raise ValueError(f"只支援 m = 1 或 2，收到 {self.m}")
        if len(self.sizes) != self.m or len(self.lengths) != self.m:
            raise ValueError(f"sizes/lengths 長度必須等於 m={self.m}")
        if min(self.sizes) < FieldConfig.MIN_NODES:
            raise ValueError(f"每個軸至少 {FieldConfig.MIN_NODES} 個節點，收到 {self.sizes}")
        if min(self.lengths) <= 0:
            raise ValueError(f"長度必須為正: {self.lengths}")
        return self

    @property
    def kind(self) -> str:
        return "periodic"

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.sizes)

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(L / N for L, N in zip(self.lengths, self.sizes))

    @property
    def min_spacing(self) -> float:
        return min(self.spacing)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def axes(self):
        return [np.arange(N) * h for N, h in zip(self.sizes, self.spacing)]

    def points(self) -> np.ndarray:
        """節點座標，形狀 (*shape, m)"""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def weights(self) -> np.ndarray:
        return np.full(self.shape, self.cell_volume)


class RadialGrid(BaseModel):
    """
    徑向網格 - cell-centered，r_i = (i+½)h，h = R_out/N

    m 是空間維度：Δ = ∂rr + (m-1)/r ∂r，r=0 處對稱。
    m=1 代表對 0 偶對稱的直線，積分時乘 2。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    m: int = 2
    size: int = 256
    length: float = 1.0
    outer_bc: OuterBoundary = OuterBoundary.DIRICHLET

    @field_validator("size")
    @classmethod
    def _size(cls, value: int) -> int:
        if value < FieldConfig.MIN_NODES:
            raise ValueError(f"至少 {FieldConfig.MIN_NODES} 個節點，收到 {value}")
        return value

    @model_validator(mode="after")
    def _check(self) -> "RadialGrid":
        if self.m not in (1, 2):
            raise ValueError(f"只支援 m = 1 或 2，收到 {self.m}")
        if self.length <= 0:
            raise ValueError(f"外半徑必須為正: {self.length}")
        return self

    @property
    def kind(self) -> str:
        return "radial"

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.size,)

    @property
    def h(self) -> float:
        return self.length / self.size

    @property
    def spacing(self) -> Tuple[float, ...]:
        return (self.h,)

    @property
    def min_spacing(self) -> float:
        return self.h

    @property
    def radii(self) -> np.ndarray:
        return (np.arange(self.size) + 0.5) * self.h

    @property
    def faces(self) -> np.ndarray:
        """內部面 r_{i+½}，i = 0..N-2"""
        return (np.arange(1, self.size)) * self.h

    @property
    def measure(self) -> float:
        """單位球面面積：m=1 → 2，m=2 → 2π"""
        return 2.0 if self.m == 1 else 2.0 * math.pi

    def radial_weight(self, r):
        return np.asarray(r, dtype=float) ** (self.m - 1)

    def weights(self) -> np.ndarray:
        return self.measure * self.radial_weight(self.radii) * self.h

    def points(self) -> np.ndarray:
        return self.radii[:, None]


class InterfaceGeometry(BaseModel):
    """
    介面幾何 - radial (圓心、半徑) 或 planar (軸、位置、方向)

    符號距離在 Ω⁻ 為負：radial 內部是 Ω⁻；planar 時 d = orientation·(x_axis - offset)。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: str = "radial"
    center: Tuple[float, ...] = (0.0,)
    radius: float = 0.5
    axis: int = 0
    offset: float = 0.5
    orientation: int = 1

    @field_validator("kind")
    @classmethod
    def _kind(cls, value: str) -> str:
        if value not in ("radial", "planar"):
            raise ValueError(f"未知幾何類型: {value}")
        return value

    @model_validator(mode="after")
    def _check(self) -> "InterfaceGeometry":
        if self.kind == "radial" and not self.radius > 0:
            raise ValueError(f"半徑必須為正: {self.radius}")
        if self.orientation not in (-1, 1):
            raise ValueError(f"orientation 只能是 ±1: {self.orientation}")
        return self

    def with_radius(self, radius: float) -> "InterfaceGeometry":
        return self.model_copy(update={"radius": float(radius)})

    def with_offset(self, offset: float) -> "InterfaceGeometry":
        return self.model_copy(update={"offset": float(offset)})


@dataclass(frozen=True)
class VectorField:
    """
    網格上的向量場 u: grid → ℝⁿ

    values 形狀 (*grid.shape, n)。徑向網格用 Dirichlet 外邊界時 boundary 是 r = R_out 上的值。
    """
    grid: object
    values: np.ndarray
    boundary: Optional[np.ndarray] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != len(self.grid.shape) + 1 or values.shape[:-1] != tuple(self.grid.shape):
            raise GridError(f"場的形狀 {values.shape} 和網格 {self.grid.shape} 不符")
        if not np.all(np.isfinite(values)):
            raise GridError("場含有非有限值")
        object.__setattr__(self, "values", values)
        if self.boundary is not None:
            boundary = np.asarray(self.boundary, dtype=float).reshape(values.shape[-1])
            object.__setattr__(self, "boundary", boundary)
        elif getattr(self.grid, "outer_bc", None) == OuterBoundary.DIRICHLET:
            raise GridError("Dirichlet 徑向網格需要提供外邊界值")

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    def modulus(self) -> np.ndarray:
        return np.linalg.norm(self.values, axis=-1)

    def with_values(self, values: np.ndarray) -> "VectorField":
        return VectorField(self.grid, values, self.boundary)

    def rotated(self, Q: np.ndarray) -> "VectorField":
        """常數旋轉 Q ∈ O(n)"""
        boundary = None if self.boundary is None else Q @ self.boundary
        return VectorField(self.grid, self.values @ Q.T, boundary)

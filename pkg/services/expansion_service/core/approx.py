"""
近似解 u^K - 內層剖面沿測地線插值，經截斷函數黏到外層展開

    u^K = u_i + (1 - ξ(d₀/δ))(u_o - u_i)
    u_i = ρ₀(z)ω̄(τ(z)) [+ ε σ₁(z) ξ₁ + ε ρ₁ ω̄]，z = d₀/ε
    u_o = bω⁺ (d₀ > 0) 或 aω⁻ (d₀ < 0)
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from services.field_service import InterfaceGeometry, signed_distance
from services.profile_service import ProfileParams, ProfileTable, build_table
from services.sharp_service import radius_exact

from .exceptions import DomainRangeError, ExpansionServiceError
from .geodesic import geodesic_eval
from .models import AngleDirector, ApproxConfig, TwoPointSolution
from .twopoint import angular_corrector, weight_values

logger = logging.getLogger(__name__)


def _smooth_step(t):
    """0 → 1 的 C^∞ 過渡，t ∈ [0, 1]"""
    t = np.clip(t, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        left = np.where(t > 0.0, np.exp(-1.0 / np.where(t > 0.0, t, 1.0)), 0.0)
        right = np.where(t < 1.0, np.exp(-1.0 / np.where(t < 1.0, 1.0 - t, 1.0)), 0.0)
    return left / (left + right)


def cutoff(s):
    """ξ(s) = 1 (|s| ≤ 1)，0 (|s| ≥ 2)"""
    return _smooth_step(2.0 - np.abs(np.asarray(s, dtype=float)))


@dataclass(frozen=True, eq=False)
class ApproxSolution:
    config: ApproxConfig
    table: ProfileTable
    corrector: Optional[TwoPointSolution] = None
    rho1: Optional[Callable] = None

    @property
    def eps(self) -> float:
        return self.config.eps

    @property
    def director(self) -> AngleDirector:
        return self.config.director

    def geometry_at(self, t: float = 0.0) -> InterfaceGeometry:
        geom = self.config.geometry
        if geom.kind == "planar" or self.config.m == 1:
            return geom
        radius = radius_exact(geom.radius, t, self.config.m)
        if radius <= 0.0:
            raise DomainRangeError(f"t={t} 時介面已消失")
        return geom.with_radius(radius)

    def _check_points(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.config.m:
            raise DomainRangeError(f"座標維度 {points.shape[-1]} 與 m={self.config.m} 不符")
        if not np.all(np.isfinite(points)):
            raise DomainRangeError("求值點含 NaN 或 Inf")
        length = self.config.domain_length
        if length is not None:
            if self.config.geometry.kind == "radial":
                outside = np.linalg.norm(points, axis=-1) > length
            else:
                axis = points[..., self.config.geometry.axis]
                outside = (axis < 0.0) | (axis > length)
            if np.any(outside):
                raise DomainRangeError(f"求值點超出定義域 [0, {length}]")
        return points

    def distance(self, points, t: float = 0.0) -> np.ndarray:
        return signed_distance(self.geometry_at(t), self._check_points(points))

    def inner(self, points, t: float = 0.0) -> np.ndarray:
        d = self.distance(points, t)
        return self._inner(d, points)

    def _inner(self, d: np.ndarray, points) -> np.ndarray:
        z = d / self.eps
        rho = self.table.rho0_eval(z)
        tau = weight_values(self.table, self.config.weight, z)[0]
        omega_bar = geodesic_eval(self.director.frame(d), tau)
        value = rho[..., None] * omega_bar
        if self.corrector is not None:
            value = value + self.eps * self.corrector(z)[..., None] * self.director.tangent(omega_bar)
        if self.rho1 is not None:
            value = value + self.eps * np.asarray(self.rho1(z, points), dtype=float)[..., None] * omega_bar
        return value

    def _outer(self, d: np.ndarray) -> np.ndarray:
        p = self.table.params
        plus = p.b * self.director.omega_plus(d)
        minus = p.a * self.director.omega_minus(d)
        return np.where((d >= 0.0)[..., None], plus, minus)

    def outer(self, points, t: float = 0.0) -> np.ndarray:
        return self._outer(self.distance(points, t))

    def __call__(self, points, t: float = 0.0) -> np.ndarray:
        d = self.distance(points, t)
        xi = cutoff(d / self.config.delta)[..., None]
        inner = self._inner(d, points)
        outer = self._outer(d)
        blended = inner + (1.0 - xi) * (outer - inner)
        return np.where(xi == 1.0, inner, np.where(xi == 0.0, outer, blended))

    def modulus(self, points, t: float = 0.0) -> np.ndarray:
        return np.linalg.norm(self(points, t), axis=-1)


def build_uK(cfg: ApproxConfig, table: Optional[ProfileTable] = None,
             rho1: Optional[Callable] = None) -> ApproxSolution:
    """
    組裝 u^K

    Args:
        cfg: 組裝參數
        table: 剖面表，省略時依 cfg 的 a, b 建表
        rho1: 選用的 ρ₁(z, x)，沿 ω̄ 方向加上 ε·ρ₁

    Returns:
        ApproxSolution: 可對 (點, t) 求值
    """
    if table is None:
        table = build_table(ProfileParams(a=cfg.a, b=cfg.b))
    elif (table.params.a, table.params.b) != (cfg.a, cfg.b):
        raise ExpansionServiceError(
            f"剖面表參數 (a={table.params.a}, b={table.params.b}) 與設定 (a={cfg.a}, b={cfg.b}) 不符")
    corrector = angular_corrector(table, cfg.director, cfg.weight) if cfg.K == 1 else None
    logger.info(f"u^K 組裝完成: K={cfg.K}, eps={cfg.eps}, delta={cfg.delta}, weight={cfg.weight}")
    return ApproxSolution(config=cfg, table=table, corrector=corrector, rho1=rho1)

"""
剖面數據模型 - 參數與不可變的剖面表
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.interpolate import CubicHermiteSpline

from services.potential_service import PotentialParams, profile_force

from .config import ProfileConfig


class ProfileParams(BaseModel):
    """異宿軌剖面參數 - a < b 兩個井半徑，c₀ 積分常數，α 衰減指數上界"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    c0: float = 0.0
    alpha: Optional[float] = None

    @model_validator(mode="before")
    @classmethod
    def _default_alpha(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("alpha") is None:
            a = float(data.get("a", 1.0))
            b = float(data.get("b", 2.0))
            if 0 < a < b:
                data = {**data, "alpha": ProfileConfig.ALPHA_FRACTION * alpha_bound(a, b)}
        return data

    @model_validator(mode="after")
    def _check(self) -> "ProfileParams":
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        bound = alpha_bound(self.a, self.b)
        if not 0 < self.alpha < bound:
            raise ValueError(f"α 必須落在 (0, {bound:.6g})，收到 {self.alpha}")
        return self

    @property
    def potential(self) -> PotentialParams:
        return PotentialParams(a=self.a, b=self.b)

    @property
    def kappa(self) -> float:
        """隱式關係左端的斜率 √2·ab(b²-a²)"""
        return math.sqrt(2.0) * self.a * self.b * (self.b ** 2 - self.a ** 2)

    @property
    def rate_plus(self) -> float:
        """z → +∞ 的衰減率 √2·b(b²-a²)"""
        return math.sqrt(2.0) * self.b * (self.b ** 2 - self.a ** 2)

    @property
    def rate_minus(self) -> float:
        """z → -∞ 的衰減率 √2·a(b²-a²)"""
        return math.sqrt(2.0) * self.a * (self.b ** 2 - self.a ** 2)


def alpha_bound(a: float, b: float) -> float:
    return math.sqrt(2.0) * (b ** 2 - a ** 2) * min(a, b)


@dataclass(frozen=True)
class EnergyConstant:
    """e = ∫(ρ₀')² 的閉式解與數值積分"""
    closed_form: float
    quadrature: Optional[float] = None

    @property
    def difference(self) -> float:
        if self.quadrature is None:
            return 0.0
        return abs(self.closed_form - self.quadrature)


@dataclass(frozen=True)
class DecayRates:
    rate_plus: float
    rate_minus: float


@dataclass(frozen=True, eq=False)
class ProfileTable:
    """
    均勻網格上的 ρ₀, ρ₀', η₁, F 表格

    建好之後不可變，可供任意數量的 worker 同時讀取。
    gap_minus = ρ₀²-a², gap_plus = b²-ρ₀²，由隱式關係直接算出，不受相消誤差影響。

    任意 z 的求值：ρ₀ 用 Hermite 樣條當初值再做牛頓修正；F 用閉式
    zF(z) = z/b² + √2(q(ρ₀(z)) - q(ρ₀(0)))/(a²b²)，q(ρ) = 1/ρ + ln((ρ-a)/(ρ+a))/(2a)，
    |z| 小時改寫成 F(z) = ∫₀¹ ρ₀(zt)⁻² dt 以 Gauss-Legendre 積分，導數同理。
    """
    params: ProfileParams
    z_grid: np.ndarray
    rho0: np.ndarray
    rho0_prime: np.ndarray
    eta1: np.ndarray
    F: np.ndarray
    gap_minus: np.ndarray
    gap_plus: np.ndarray
    e_const: float
    _rho_spline: Any = field(init=False, repr=False, compare=False)
    _q_center: float = field(init=False, repr=False, compare=False)

    SERIES_RADIUS = 0.5
    QUADRATURE_NODES = 32

    def __post_init__(self):
        for name in ("z_grid", "rho0", "rho0_prime", "eta1", "F", "gap_minus", "gap_plus"):
            getattr(self, name).setflags(write=False)
        object.__setattr__(self, "_rho_spline", CubicHermiteSpline(self.z_grid, self.rho0, self.rho0_prime))
        rho_c = float(self.rho0[self.center_index])
        p = self.params
        object.__setattr__(self, "_q_center", 1.0 / rho_c + math.log((rho_c - p.a) / (rho_c + p.a)) / (2.0 * p.a))

    @property
    def z_max(self) -> float:
        return float(self.z_grid[-1])

    @property
    def spacing(self) -> float:
        return float(self.z_grid[1] - self.z_grid[0])

    @property
    def center_index(self) -> int:
        return len(self.z_grid) // 2

    # ---- ρ₀ ----

    def rho0_eval(self, z):
        p = self.params
        z = np.asarray(z, dtype=float)
        zc = np.clip(np.nan_to_num(z), -self.z_max, self.z_max)
        rho = np.asarray(self._rho_spline(zc), dtype=float)
        rho = np.where(z > self.z_max, p.b, np.where(z < -self.z_max, p.a, rho))
        rho = self._newton_refine(z, rho)
        return np.clip(rho, np.nextafter(p.a, p.b), np.nextafter(p.b, p.a))

    def _newton_refine(self, z, rho):
        """中間區域用隱式關係做兩步牛頓，樣條誤差降到捨入等級"""
        p = self.params
        width = p.b - p.a
        mask = (rho - p.a > 1e-6 * width) & (p.b - rho > 1e-6 * width) & np.isfinite(z)
        if not np.any(mask):
            return rho
        r = rho[mask]
        s = p.c0 + p.kappa * z[mask]
        for _ in range(2):
            g = p.b * np.log((r - p.a) / (r + p.a)) - p.a * np.log((p.b - r) / (p.b + r))
            slope = 2.0 * p.a * p.b * (p.b ** 2 - p.a ** 2) / ((r ** 2 - p.a ** 2) * (p.b ** 2 - r ** 2))
            r = np.clip(r - (g - s) / slope, p.a + 0.5e-6 * width, p.b - 0.5e-6 * width)
        out = np.array(rho, copy=True)
        out[mask] = r
        return out

    def rho0_prime_eval(self, z):
        p = self.params
        rho = self.rho0_eval(z)
        return (math.sqrt(2.0) / 2.0) * (rho ** 2 - p.a ** 2) * (p.b ** 2 - rho ** 2)

    def rho0_second_eval(self, z):
        return profile_force(self.rho0_eval(z), self.params.potential)

    # ---- F 與 η₁ ----

    def _q(self, z, rho):
        p = self.params
        s = p.c0 + p.kappa * z
        with np.errstate(divide="ignore", invalid="ignore"):
            # 左側 ρ-a 會下溢，改用隱式關係從 b-ρ 換算
            left = (s + p.a * np.log((p.b - rho) / (p.b + rho))) / p.b
            right = np.log((rho - p.a) / (rho + p.a))
        return 1.0 / rho + np.where(z < 0.0, left, right) / (2.0 * p.a)

    def _rho_derivatives(self, z):
        p = self.params
        rho = self.rho0_eval(z)
        d1 = (math.sqrt(2.0) / 2.0) * (rho ** 2 - p.a ** 2) * (p.b ** 2 - rho ** 2)
        d2 = profile_force(rho, p.potential)
        return rho, d1, d2

    def _inverse_square(self, z):
        """g = ρ₀⁻² 與 g', g''"""
        rho, d1, d2 = self._rho_derivatives(z)
        g = 1.0 / rho ** 2
        g1 = -2.0 * d1 / rho ** 3
        g2 = -2.0 * d2 / rho ** 3 + 6.0 * d1 ** 2 / rho ** 4
        return g, g1, g2

    def _F_all(self, z):
        """(F, F', F'')"""
        p = self.params
        z = np.atleast_1d(np.asarray(z, dtype=float))
        F = np.empty_like(z)
        F1 = np.empty_like(z)
        F2 = np.empty_like(z)

        near = np.abs(z) <= self.SERIES_RADIUS
        if np.any(near):
            x, w = np.polynomial.legendre.leggauss(self.QUADRATURE_NODES)
            t = 0.5 * (x + 1.0)
            w = 0.5 * w
            g, g1, g2 = self._inverse_square(z[near][:, None] * t[None, :])
            F[near] = g @ w
            F1[near] = (g1 * t) @ w
            F2[near] = (g2 * t ** 2) @ w

        far = ~near
        if np.any(far):
            zf = z[far]
            rho = self.rho0_eval(zf)
            g, g1, _ = self._inverse_square(zf)
            with np.errstate(divide="ignore", invalid="ignore"):
                Ff = 1.0 / p.b ** 2 + math.sqrt(2.0) * (self._q(zf, rho) - self._q_center) / (p.a ** 2 * p.b ** 2 * zf)
            Ff = np.where(np.isposinf(zf), 1.0 / p.b ** 2, Ff)
            Ff = np.where(np.isneginf(zf), 1.0 / p.a ** 2, Ff)
            finite = np.isfinite(zf)
            with np.errstate(divide="ignore", invalid="ignore"):
                d1 = np.where(finite, (g - Ff) / zf, 0.0)
                d2 = np.where(finite, (g1 - 2.0 * d1) / zf, 0.0)
            F[far], F1[far], F2[far] = Ff, d1, d2
        return F, F1, F2

    def F_eval(self, z):
        """F(z) = (1/z)∫₀ᶻ ρ₀⁻²，F(0) = ρ₀(0)⁻²，F(±∞) = b⁻², a⁻²"""
        shape = np.shape(z)
        return self._F_all(z)[0].reshape(shape)

    def F_derivatives(self, z):
        """(F', F'')"""
        shape = np.shape(z)
        _, d1, d2 = self._F_all(z)
        return d1.reshape(shape), d2.reshape(shape)

    def eta1_eval(self, z):
        p = self.params
        return (p.b ** 2 - p.a ** 2 * p.b ** 2 * self.F_eval(z)) / (p.b ** 2 - p.a ** 2)

    def eta1_derivatives(self, z):
        """(η₁', η₁'')"""
        p = self.params
        scale = -p.a ** 2 * p.b ** 2 / (p.b ** 2 - p.a ** 2)
        d1, d2 = self.F_derivatives(z)
        return scale * d1, scale * d2

    def z_eta1_prime(self, z):
        """z·η₁'(z) = -a²b²(ρ₀⁻² - F)/(b²-a²)，不經過除以 z"""
        p = self.params
        rho = self.rho0_eval(z)
        return -p.a ** 2 * p.b ** 2 * (1.0 / rho ** 2 - self.F_eval(z)) / (p.b ** 2 - p.a ** 2)

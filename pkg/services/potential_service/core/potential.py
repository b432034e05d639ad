"""
雙球面勢的代數函數

所有係數函數都只吃模長 ρ (或 s = ρ²)，向量版本在外面組合。
陣列最後一維是目標空間 ℝⁿ 的分量。
"""

import numpy as np

from .models import PotentialParams


def G_prime(s, p: PotentialParams):
    """G'(s) = (s-a²)(s-b²)(2s-a²-b²)"""
    s = np.asarray(s, dtype=float)
    a2, b2 = p.a ** 2, p.b ** 2
    return (s - a2) * (s - b2) * (2.0 * s - a2 - b2)


def G_second(s, p: PotentialParams):
    """G''(s) = (2s-a²-b²)² + 2(s-a²)(s-b²)"""
    s = np.asarray(s, dtype=float)
    a2, b2 = p.a ** 2, p.b ** 2
    return (2.0 * s - a2 - b2) ** 2 + 2.0 * (s - a2) * (s - b2)


def G_third(s, p: PotentialParams):
    """G'''(s) = 6(2s-a²-b²)"""
    s = np.asarray(s, dtype=float)
    return 6.0 * (2.0 * s - p.a ** 2 - p.b ** 2)


def F_at(u, p: PotentialParams):
    """F(u) = (|u|²-a²)²(|u|²-b²)²/4，永遠 ≥ 0"""
    s = np.sum(np.square(np.asarray(u, dtype=float)), axis=-1)
    return 0.25 * (s - p.a ** 2) ** 2 * (s - p.b ** 2) ** 2


def f_at(u, p: PotentialParams):
    """f(u) = ∂ᵤF = G'(|u|²) u"""
    u = np.asarray(u, dtype=float)
    s = np.sum(np.square(u), axis=-1)
    return G_prime(s, p)[..., None] * u


def Df_at(u0, p: PotentialParams):
    """Df(u₀) = G'(|u₀|²) I + 2G''(|u₀|²) u₀⊗u₀，形狀 (..., n, n)"""
    u0 = np.asarray(u0, dtype=float)
    n = u0.shape[-1]
    s = np.sum(np.square(u0), axis=-1)
    eye = np.eye(n)
    outer = u0[..., :, None] * u0[..., None, :]
    return G_prime(s, p)[..., None, None] * eye + 2.0 * G_second(s, p)[..., None, None] * outer


def f1_taylor(v0, v1, p: PotentialParams):
    """f(v₀+εv₁) 的 ε² 係數 f⁽¹⁾(v₀, v₁)"""
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    s0 = np.sum(np.square(v0), axis=-1)
    dot = np.sum(v0 * v1, axis=-1)
    norm1 = np.sum(np.square(v1), axis=-1)
    g2 = G_second(s0, p)
    radial = g2 * norm1 + 2.0 * G_third(s0, p) * dot ** 2
    return radial[..., None] * v0 + (2.0 * g2 * dot)[..., None] * v1


def taylor_remainder(v0, v1, eps: float, p: PotentialParams) -> float:
    """|f(v₀+εv₁) - f(v₀) - εDf(v₀)v₁ - ε²f⁽¹⁾| 的最大值，應為 O(ε³)"""
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    linear = np.einsum("...ij,...j->...i", Df_at(v0, p), v1)
    rest = f_at(v0 + eps * v1, p) - f_at(v0, p) - eps * linear - eps ** 2 * f1_taylor(v0, v1, p)
    return float(np.max(np.linalg.norm(rest, axis=-1)))


def profile_force(rho, p: PotentialParams):
    """純量剖面方程右端 f₁(ρ) = G'(ρ²)ρ，即 ρ₀'' = f₁(ρ₀)"""
    rho = np.asarray(rho, dtype=float)
    return G_prime(rho ** 2, p) * rho


def fA_at(rho, p: PotentialParams):
    """f_A(ρ) = G'(ρ²) + 2G''(ρ²)ρ²，沿 u 方向的線性化係數"""
    s = np.asarray(rho, dtype=float) ** 2
    return G_prime(s, p) + 2.0 * G_second(s, p) * s


def fB_at(rho, p: PotentialParams):
    """f_B(ρ) = G'(ρ²)，切向係數，在兩井上為零"""
    return G_prime(np.asarray(rho, dtype=float) ** 2, p)


def fC_at(rho, p: PotentialParams):
    """f_C = df_A/dρ"""
    rho = np.asarray(rho, dtype=float)
    s = rho ** 2
    a2, b2 = p.a ** 2, p.b ** 2
    m = 2.0 * s - a2 - b2
    return 6.0 * rho * (m ** 2 + 4.0 * m * s + 2.0 * (s - a2) * (s - b2))


def fD_at(rho, p: PotentialParams):
    """f_D = df_B/dρ = 2ρG''(ρ²)"""
    rho = np.asarray(rho, dtype=float)
    return 2.0 * rho * G_second(rho ** 2, p)

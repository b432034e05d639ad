"""
大圓弧插值 ω̄(τ)，τ ∈ [0, 1]，等速
"""

import numpy as np

from .config import ExpansionConfig
from .models import GeodesicFrame


def _coefficients(theta, tau):
    small = theta < ExpansionConfig.SMALL_ANGLE
    sin_theta = np.where(small, 1.0, np.sin(theta))
    c_minus = np.where(small, 1.0 - tau, np.sin((1.0 - tau) * theta) / sin_theta)
    c_plus = np.where(small, tau, np.sin(tau * theta) / sin_theta)
    return small, c_minus, c_plus


def geodesic_eval(frame: GeodesicFrame, tau) -> np.ndarray:
    """ω̄(τ) = [sin((1-τ)θ)ω⁻ + sin(τθ)ω⁺]/sin θ；θ≈0 時正規化線性插值"""
    tau = np.asarray(tau, dtype=float)
    theta = np.broadcast_to(frame.angle, np.broadcast_shapes(frame.angle.shape, tau.shape))
    small, c_minus, c_plus = _coefficients(theta, tau)
    value = c_minus[..., None] * frame.omega_minus + c_plus[..., None] * frame.omega_plus
    if np.any(small):
        norms = np.linalg.norm(value, axis=-1, keepdims=True)
        value = np.where(small[..., None], value / norms, value)
    return value


def geodesic_derivative(frame: GeodesicFrame, tau) -> np.ndarray:
    """∂τω̄，長度恆為 θ"""
    tau = np.asarray(tau, dtype=float)
    theta = np.broadcast_to(frame.angle, np.broadcast_shapes(frame.angle.shape, tau.shape))
    small = theta < ExpansionConfig.SMALL_ANGLE
    sin_theta = np.where(small, 1.0, np.sin(theta))
    c_minus = np.where(small, -1.0, -theta * np.cos((1.0 - tau) * theta) / sin_theta)
    c_plus = np.where(small, 1.0, theta * np.cos(tau * theta) / sin_theta)
    return c_minus[..., None] * frame.omega_minus + c_plus[..., None] * frame.omega_plus


def tangent_basis(frame: GeodesicFrame, tau: float) -> np.ndarray:
    """
    單一弧上某點的切平面正交基 ξ₁..ξ_{n-1}，形狀 (n-1, n)

    ξ₁ 沿 ∂τω̄ 方向 (弧退化時任取)，其餘用 QR 補齊。
    """
    if frame.omega_minus.ndim != 1:
        raise ValueError("tangent_basis 只接受單一向量的弧")
    n = frame.n
    point = geodesic_eval(frame, tau)
    columns = [point[:, None]]
    velocity = geodesic_derivative(frame, tau)
    if np.linalg.norm(velocity) > ExpansionConfig.SMALL_ANGLE:
        columns.append(velocity[:, None])
    columns.append(np.eye(n))
    q, _ = np.linalg.qr(np.hstack(columns))
    q = q[:, :n]
    if q[:, 0] @ point < 0.0:
        q[:, 0] = -q[:, 0]
    if len(columns) == 3 and q[:, 1] @ velocity < 0.0:
        q[:, 1] = -q[:, 1]
    return q[:, 1:].T

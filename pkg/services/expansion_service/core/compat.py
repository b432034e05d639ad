"""
內層方程的相容性恆等式

- 法向投影：∫(ρ₀')²(∂ₜd₀ - Δd₀) 加上含 ∂νω̄·ω̄ 的項，平均曲率流下為 0
- 通量跳躍：ρ₀²∂z(z·∂νω̄(η₁(z))) 在 b²∂νω⁺ = a²∂νω⁻ 時恆等於 a²∂νω⁻
- 邊界項：∫∂z(ρ₀²∂νω̄·ξ) 的積分等於兩端值之差
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from services.field_service import InterfaceGeometry
from services.profile_service import ProfileTable
from services.sharp_service import mcf_rhs

from .geodesic import geodesic_derivative, geodesic_eval
from .models import AngleDirector, CompatReport, JumpIdentityReport, TelescopingReport
from .twopoint import weight_values

logger = logging.getLogger(__name__)


def mcf_defect(geometry: Optional[InterfaceGeometry], m: int = 2) -> float:
    """Γ 上 ∂ₜd₀ - Δd₀；介面依平均曲率流移動時為 0"""
    if geometry is None or geometry.kind == "planar" or m == 1:
        return 0.0
    radius = geometry.radius
    return -mcf_rhs(radius, m) - (m - 1) / radius


def compat_mcf_quadrature(table: ProfileTable, director: AngleDirector,
                          geometry: Optional[InterfaceGeometry] = None,
                          defect: Optional[float] = None,
                          weight: str = "eta1", m: int = 2) -> CompatReport:
    """
    Args:
        table: 剖面表
        director: Γ 上的外場指向
        geometry: 介面幾何，用來計算 ∂ₜd₀ - Δd₀
        defect: 直接指定 ∂ₜd₀ - Δd₀，覆蓋 geometry

    Returns:
        CompatReport: e 的積分值與恆等式殘差
    """
    z = table.z_grid
    theta1 = table.rho0_prime
    e_quad = float(simpson(theta1 ** 2, x=z))
    defect = mcf_defect(geometry, m) if defect is None else float(defect)

    frame = director.frame(0.0)
    tau, d1, _, _ = weight_values(table, weight, z)
    omega_bar = geodesic_eval(frame, tau)
    velocity = geodesic_derivative(frame, tau)
    dnu_minus, dnu_plus = director.normal_derivatives()
    dnu_bar = dnu_minus + tau[:, None] * (dnu_plus - dnu_minus)

    normal = np.sum(dnu_bar * omega_bar, axis=-1)
    cross = -np.sum(velocity * dnu_bar, axis=-1)
    residual = (e_quad * defect
                - 2.0 * float(simpson(theta1 ** 2 * normal, x=z))
                - 2.0 * float(simpson(theta1 * table.rho0 * d1 * cross, x=z)))
    logger.info(f"法向相容積分: e={e_quad:.12f}, defect={defect:.3e}, residual={residual:.3e}")
    return CompatReport(e_quadrature=e_quad, residual=float(residual))


def jump_identity_check(table: ProfileTable, dnu_minus, dnu_plus, weight: str = "eta1") -> JumpIdentityReport:
    """
    max_z |ρ₀²∂z(z·∂νω̄(τ(z))) - a²∂νω⁻|

    ∂νω̄(τ) 取 (1-τ)∂νω⁻ + τ∂νω⁺。
    """
    p = table.params
    z = table.z_grid
    dnu_minus = np.atleast_1d(np.asarray(dnu_minus, dtype=float))
    dnu_plus = np.atleast_1d(np.asarray(dnu_plus, dtype=float))
    tau, _, z_d1, _ = weight_values(table, weight, z)
    derivative = dnu_minus + (tau + z_d1)[:, None] * (dnu_plus - dnu_minus)
    expression = table.rho0[:, None] ** 2 * derivative
    deviation = float(np.max(np.linalg.norm(expression - p.a ** 2 * dnu_minus, axis=-1)))
    predicted = p.a ** 2 * p.b ** 2 / (p.b ** 2 - p.a ** 2) * (dnu_minus - dnu_plus)
    return JumpIdentityReport(deviation=deviation, constant=expression[table.center_index], predicted=predicted)


def telescoping_check(table: ProfileTable, dnu_minus, dnu_plus, xi,
                      weight: str = "eta1", window: Optional[float] = None) -> TelescopingReport:
    """
    -∫[(ρ₀²)'(∂νω̄·ξ) + ρ₀²τ'((∂νω⁺-∂νω⁻)·ξ)] 與 -[ρ₀²∂νω̄·ξ] 兩端值比對

    limit 是 |z| → ∞ 的端點值 -(b²∂νω⁺ - a²∂νω⁻)·ξ。
    """
    p = table.params
    window = table.z_max if window is None else float(window)
    mask = np.abs(table.z_grid) <= window + 1e-12
    z = table.z_grid[mask]
    rho, rho_prime = table.rho0[mask], table.rho0_prime[mask]
    xi = np.asarray(xi, dtype=float)
    minus = float(np.dot(np.asarray(dnu_minus, dtype=float), xi))
    plus = float(np.dot(np.asarray(dnu_plus, dtype=float), xi))
    tau, d1, _, _ = weight_values(table, weight, z)
    projected = minus + tau * (plus - minus)

    integrand = -(2.0 * rho * rho_prime * projected + rho ** 2 * d1 * (plus - minus))
    quadrature = float(simpson(integrand, x=z))
    boundary = rho ** 2 * projected
    endpoint = -float(boundary[-1] - boundary[0])
    limit = -(p.b ** 2 * plus - p.a ** 2 * minus)
    return TelescopingReport(quadrature=quadrature, endpoint=endpoint, limit=limit)

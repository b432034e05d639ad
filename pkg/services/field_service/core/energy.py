"""
能量泛函 E(u) = ∫ ½|∇u|² + ε⁻²F(u) dx 的離散版本

與 operators 的 Laplacian 配對：-∂E/∂u_i = w_i(Δu - ε⁻²f(u))_i，
所以顯式梯度流在步長夠小時 E 單調不增。求和順序固定。
"""

import numpy as np

from services.potential_service import F_at, PotentialParams

from .models import VectorField
from .operators import gradient_inner_product


def gradient_energy(field: VectorField) -> float:
    return 0.5 * gradient_inner_product(field, field)


def potential_energy(field: VectorField, eps: float, params: PotentialParams) -> float:
    density = F_at(field.values, params)
    return float(np.sum(field.grid.weights() * density)) / eps ** 2


def energy(field: VectorField, eps: float, params: PotentialParams) -> float:
    """總能量"""
    return gradient_energy(field) + potential_energy(field, eps, params)

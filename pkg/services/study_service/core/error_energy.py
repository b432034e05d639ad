"""
誤差能量 E(u) = Σ_{i=0}^{[m/2]+1} ε^{6i}∫‖∂ⁱu‖²

徑向網格用 np.gradient (二階端點差分)，Hessian 範數取 |u_rr|² + (m-1)|u_r/r|²；
週期網格用前向差分，二階項對所有 (j, l) 取 D_l D_j u。
"""

import logging
from typing import List, Optional

import numpy as np

from services.field_service import PeriodicGrid, RadialGrid, VectorField

from .exceptions import ConfigError
from .models import ErrorEnergy, error_energy_k

logger = logging.getLogger(__name__)


def energy_order(m: int) -> int:
    return m // 2 + 1


def _radial_terms(grid: RadialGrid, values: np.ndarray, order: int) -> List[float]:
    weights = grid.weights()
    r = grid.radii
    terms = [float(np.sum(weights * np.sum(values ** 2, axis=-1)))]
    u_r = np.gradient(values, r, axis=0, edge_order=2)
    terms.append(float(np.sum(weights * np.sum(u_r ** 2, axis=-1))))
    if order >= 2:
        u_rr = np.gradient(u_r, r, axis=0, edge_order=2)
        hessian = np.sum(u_rr ** 2, axis=-1) + (grid.m - 1) * np.sum((u_r / r[:, None]) ** 2, axis=-1)
        terms.append(float(np.sum(weights * hessian)))
    return terms[:order + 1]


def _forward(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    return (np.roll(values, -1, axis=axis) - values) / h


def _periodic_terms(grid: PeriodicGrid, values: np.ndarray, order: int) -> List[float]:
    volume = grid.cell_volume
    terms = [float(volume * np.sum(values ** 2))]
    first = [_forward(values, j, h) for j, h in enumerate(grid.spacing)]
    terms.append(float(volume * sum(np.sum(d ** 2) for d in first)))
    if order >= 2:
        total = 0.0
        for d in first:
            for l, h in enumerate(grid.spacing):
                total += np.sum(_forward(d, l, h) ** 2)
        terms.append(float(volume * total))
    return terms[:order + 1]


def error_energy(field: VectorField, eps: float, reference: Optional[VectorField] = None) -> ErrorEnergy:
    """
    計算 E(u)，給了 reference 時是 E(u - reference)

    Args:
        field: u
        eps: ε
        reference: 同一網格上的比較場 (例如 u^K)

    Raises:
        ConfigError: reference 的網格或分量數不同
    """
    values = field.values
    if reference is not None:
        if reference.grid != field.grid or reference.n != field.n:
            raise ConfigError(f"誤差能量的兩個場網格不一致: {field.grid} / {reference.grid}")
        values = values - reference.values

    grid = field.grid
    order = energy_order(grid.m)
    if isinstance(grid, RadialGrid):
        terms = _radial_terms(grid, values, order)
    elif isinstance(grid, PeriodicGrid):
        terms = _periodic_terms(grid, values, order)
    else:
        raise ConfigError(f"不支援的網格類型: {type(grid).__name__}")

    value = float(sum(eps ** (6 * i) * t for i, t in enumerate(terms)))
    logger.debug(f"誤差能量: eps={eps}, terms={terms}, E={value:.6e}")
    return ErrorEnergy(eps=float(eps), k=error_energy_k(grid.m), value=value, terms=tuple(terms))

"""
介面幾何 - 符號距離與 |u| = (a+b)/2 等值面擷取
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from services.potential_service import PotentialParams

from .config import FieldConfig
from .exceptions import GridError, NoInterfaceError
from .models import InterfaceGeometry, PeriodicGrid, RadialGrid, VectorField

logger = logging.getLogger(__name__)


def signed_distance(geom: InterfaceGeometry, x) -> np.ndarray:
    """
    符號距離，Ω⁻ 內為負

    Args:
        geom: 介面幾何
        x: 座標，形狀 (..., m)；徑向網格直接傳半徑 (..., 1)
    """
    x = np.asarray(x, dtype=float)
    if geom.kind == "radial":
        m = x.shape[-1]
        center = np.zeros(m)
        c = np.asarray(geom.center, dtype=float)[:m]
        center[:len(c)] = c
        return np.linalg.norm(x - center, axis=-1) - geom.radius
    if geom.axis >= x.shape[-1]:
        raise GridError(f"planar 軸 {geom.axis} 超出座標維度 {x.shape[-1]}")
    return geom.orientation * (x[..., geom.axis] - geom.offset)


def level_crossings(x: np.ndarray, values: np.ndarray, level: float) -> np.ndarray:
    """沿一條取樣線的所有穿越點 (線性內插)"""
    shifted = np.asarray(values, dtype=float) - level
    sign_change = np.nonzero(np.signbit(shifted[:-1]) != np.signbit(shifted[1:]))[0]
    if len(sign_change) == 0:
        return np.empty(0)
    x0, x1 = x[sign_change], x[sign_change + 1]
    f0, f1 = shifted[sign_change], shifted[sign_change + 1]
    return x0 - f0 * (x1 - x0) / (f1 - f0)


def _first_crossing(x, values, level) -> Optional[float]:
    crossings = level_crossings(x, values, level)
    return float(crossings[0]) if len(crossings) else None


def interface_extract(field: VectorField,
                      params: PotentialParams,
                      kind: str = "radial",
                      center: Optional[Sequence[float]] = None,
                      axis: int = 0) -> InterfaceGeometry:
    """
    擷取 |u| = (a+b)/2 的等值面

    徑向網格直接沿 r 找；2D 週期網格從圓心發出多條射線，
    用 ndimage.map_coordinates 做雙線性取樣後取平均半徑。
    planar 回傳第一個穿越點，orientation 依 |u| 的增減方向決定。
    """
    level = 0.5 * (params.a + params.b)
    grid = field.grid
    modulus = field.modulus()

    if isinstance(grid, RadialGrid):
        radius = _first_crossing(grid.radii, modulus, level)
        if radius is None:
            raise NoInterfaceError(f"|u| 沒有穿過 {level}")
        return InterfaceGeometry(kind="radial", center=(0.0,), radius=radius)

    if not isinstance(grid, PeriodicGrid):
        raise GridError(f"不支援的網格類型: {type(grid).__name__}")

    if kind == "planar" or grid.m == 1:
        return _extract_planar(grid, modulus, level, axis)
    return _extract_radial_2d(grid, modulus, level, center)


def _extract_planar(grid: PeriodicGrid, modulus: np.ndarray, level: float, axis: int) -> InterfaceGeometry:
    h = grid.spacing[axis]
    x = np.arange(grid.sizes[axis]) * h
    lines = np.moveaxis(modulus, axis, -1).reshape(-1, grid.sizes[axis])
    offsets, orientations = [], []
    for line in lines:
        crossings = level_crossings(x, line, level)
        if len(crossings) == 0:
            continue
        offsets.append(crossings[0])
        k = min(int(crossings[0] / h), len(line) - 2)
        orientations.append(1 if line[k + 1] > line[k] else -1)
    if not offsets:
        raise NoInterfaceError(f"|u| 沒有穿過 {level}")
    orientation = 1 if sum(orientations) >= 0 else -1
    return InterfaceGeometry(kind="planar", axis=axis, offset=float(np.mean(offsets)), orientation=orientation)


def _extract_radial_2d(grid: PeriodicGrid, modulus: np.ndarray, level: float, center) -> InterfaceGeometry:
    if center is None:
        center = tuple(0.5 * L for L in grid.lengths)
    hx, hy = grid.spacing
    step = 0.5 * min(hx, hy)
    r = np.arange(0.0, 0.5 * min(grid.lengths), step)
    radii = []
    for theta in np.linspace(0.0, 2.0 * np.pi, FieldConfig.EXTRACT_RAYS, endpoint=False):
        px = (center[0] + r * np.cos(theta)) / hx
        py = (center[1] + r * np.sin(theta)) / hy
        samples = ndimage.map_coordinates(modulus, [px, py], order=1, mode="grid-wrap")
        radius = _first_crossing(r, samples, level)
        if radius is not None:
            radii.append(radius)
    if not radii:
        raise NoInterfaceError(f"所有射線上 |u| 都沒有穿過 {level}")
    if len(radii) < FieldConfig.EXTRACT_RAYS:
        logger.warning(f"只有 {len(radii)}/{FieldConfig.EXTRACT_RAYS} 條射線找到介面")
    return InterfaceGeometry(kind="radial", center=tuple(float(c) for c in center), radius=float(np.mean(radii)))

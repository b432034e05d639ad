"""
場檢查點 - 二進位格式

    magic (8 bytes)
    int64 little-endian: version, kind, m, n, step, outer_bc, has_boundary, rank, sizes...
    float64 little-endian: time, eps, lengths..., boundary (n 個，若有)
    float64 little-endian: 節點值，row-major (*shape, n)
"""

import logging
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .config import FieldConfig
from .exceptions import CheckpointError
from .models import OuterBoundary, PeriodicGrid, RadialGrid, VectorField

logger = logging.getLogger(__name__)

_KIND = {"periodic": 0, "radial": 1}
_BC = {None: 0, OuterBoundary.DIRICHLET: 1, OuterBoundary.NEUMANN: 2}


@dataclass(frozen=True)
class Checkpoint:
    field: VectorField
    time: float
    eps: float
    step: int


def _header(field: VectorField, time: float, eps: float, step: int):
    grid = field.grid
    if isinstance(grid, PeriodicGrid):
        sizes, lengths, bc = list(grid.sizes), list(grid.lengths), None
    else:
        sizes, lengths, bc = [grid.size], [grid.length], grid.outer_bc
    has_boundary = 0 if field.boundary is None else 1
    ints = [FieldConfig.CHECKPOINT_VERSION, _KIND[grid.kind], grid.m, field.n, int(step), _BC[bc],
            has_boundary, len(sizes)] + sizes
    floats = [float(time), float(eps)] + [float(L) for L in lengths]
    if has_boundary:
        floats += [float(v) for v in field.boundary]
    return np.asarray(ints, dtype="<i8"), np.asarray(floats, dtype="<f8")


def write_checkpoint(path: str, field: VectorField, time: float, eps: float, step: int = 0) -> str:
    """先寫暫存檔再 rename，不會留下半個檔案"""
    ints, floats = _header(field, time, eps, step)
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "wb") as fh:
            fh.write(FieldConfig.CHECKPOINT_MAGIC)
            fh.write(ints.tobytes())
            fh.write(floats.tobytes())
            fh.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes(order="C"))
        os.replace(tmp, path)
    except OSError as e:
        logger.error(f"檢查點寫入失敗: {path}: {str(e)}")
        raise CheckpointError(f"無法寫入檢查點 {path}: {str(e)}") from e
    return path


def read_checkpoint(path: str) -> Checkpoint:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise CheckpointError(f"無法讀取檢查點 {path}: {str(e)}") from e

    magic = FieldConfig.CHECKPOINT_MAGIC
    if not raw.startswith(magic):
        raise CheckpointError(f"不是檢查點檔案: {path}")
    pos = len(magic)
    try:
        fixed = np.frombuffer(raw, dtype="<i8", count=8, offset=pos)
        version, kind, m, n, step, bc, has_boundary, rank = (int(v) for v in fixed)
        if version != FieldConfig.CHECKPOINT_VERSION:
            raise CheckpointError(f"不支援的檢查點版本 {version}")
        pos += 8 * 8
        sizes = [int(v) for v in np.frombuffer(raw, dtype="<i8", count=rank, offset=pos)]
        pos += 8 * rank
        n_floats = 2 + rank + (n if has_boundary else 0)
        floats = np.frombuffer(raw, dtype="<f8", count=n_floats, offset=pos)
        pos += 8 * n_floats
        count = int(np.prod(sizes)) * n
        values = np.frombuffer(raw, dtype="<f8", count=count, offset=pos).reshape(*sizes, n)
        if pos + 8 * count != len(raw):
            raise CheckpointError(f"檢查點長度不符: {path}")
    except ValueError as e:
        raise CheckpointError(f"檢查點內容損壞 {path}: {str(e)}") from e

    time, eps = float(floats[0]), float(floats[1])
    lengths = [float(v) for v in floats[2:2 + rank]]
    boundary = np.array(floats[2 + rank:]) if has_boundary else None
    if kind == _KIND["periodic"]:
        grid = PeriodicGrid(m=m, sizes=tuple(sizes), lengths=tuple(lengths))
    else:
        outer = {v: k for k, v in _BC.items()}[bc]
        grid = RadialGrid(m=m, size=sizes[0], length=lengths[0], outer_bc=outer)
    return Checkpoint(field=VectorField(grid, np.array(values), boundary), time=time, eps=eps, step=step)


def slice_frame(field: VectorField, axis: int = 0) -> pd.DataFrame:
    """沿某軸穿過網格中央的一維切片"""
    grid = field.grid
    if isinstance(grid, RadialGrid):
        x = grid.radii
        values = field.values
    else:
        x = np.arange(grid.sizes[axis]) * grid.spacing[axis]
        values = np.moveaxis(field.values, axis, 0)
        while values.ndim > 2:
            values = values[:, values.shape[1] // 2]
    frame = pd.DataFrame({"x": x})
    for k in range(field.n):
        frame[f"u{k}"] = values[:, k]
    frame["modulus"] = np.linalg.norm(values, axis=-1)
    return frame


def write_slice_csv(field: VectorField, path: str, axis: int = 0) -> str:
    slice_frame(field, axis).to_csv(path, index=False, float_format=FieldConfig.CSV_FLOAT_FORMAT)
    return path

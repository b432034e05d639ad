"""
場服務 - 網格、向量場、差分算子、符號距離、能量與檢查點
"""

from .core import (
    FieldConfig,
    FieldServiceError, GridError, NoInterfaceError, CheckpointError,
    OuterBoundary, PeriodicGrid, RadialGrid, InterfaceGeometry, VectorField,
    laplacian, laplacian_values, laplacian_matrix, forward_gradient,
    inner_product, gradient_inner_product,
    signed_distance, level_crossings, interface_extract,
    energy, gradient_energy, potential_energy,
    Checkpoint, write_checkpoint, read_checkpoint, slice_frame, write_slice_csv,
)

__all__ = [
    'FieldConfig',
    'FieldServiceError', 'GridError', 'NoInterfaceError', 'CheckpointError',
    'OuterBoundary', 'PeriodicGrid', 'RadialGrid', 'InterfaceGeometry', 'VectorField',
    'laplacian', 'laplacian_values', 'laplacian_matrix', 'forward_gradient',
    'inner_product', 'gradient_inner_product',
    'signed_distance', 'level_crossings', 'interface_extract',
    'energy', 'gradient_energy', 'potential_energy',
    'Checkpoint', 'write_checkpoint', 'read_checkpoint', 'slice_frame', 'write_slice_csv',
]

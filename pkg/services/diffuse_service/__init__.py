"""
擴散介面服務 - 向量 Allen-Cahn 方程的時間推進、初始條件與檢查點
"""

from .core import (
    DiffuseConfig,
    DiffuseServiceError, ConfigError, StabilityError, BlowUpError, CheckpointWriteError,
    DiffuseRunConfig, DiffuseResult,
    seed_distance, seed_directors, profile_values, front_values, uniform_values, load_seed, initial_field,
    check_stability, Stepper, step,
    METRIC_COLUMNS, diffuse_config, bulk_moduli, interface_radius, metric_row, checkpoint_path, run_diffuse,
)

__all__ = [
    'DiffuseConfig',
    'DiffuseServiceError', 'ConfigError', 'StabilityError', 'BlowUpError', 'CheckpointWriteError',
    'DiffuseRunConfig', 'DiffuseResult',
    'seed_distance', 'seed_directors', 'profile_values', 'front_values', 'uniform_values', 'load_seed',
    'initial_field',
    'check_stability', 'Stepper', 'step',
    'METRIC_COLUMNS', 'diffuse_config', 'bulk_moduli', 'interface_radius', 'metric_row', 'checkpoint_path',
    'run_diffuse',
]

"""
收斂研究服務 - 設定檔讀寫、擴散解對銳利介面的 ε 掃描、誤差能量與報告輸出
"""

from .core import (
    StudyConfig,
    StudyServiceError, ConfigError, ReportError,
    CONVERGENCE_COLUMNS, RATE_METRICS, ENERGY_NOTE,
    ConvergeRunConfig, SpectrumRunConfig, ProfileRunConfig, CompatRunConfig,
    ErrorEnergy, ConvergenceRow, ConvergeResult, StudySummary, error_energy_k, split_floats,
    read_config_file, read_config_text, build_config, parse_config, format_value, serialize_config,
    config_hash, write_config,
    energy_order, error_energy,
    converge_config, comparison_dt, diffuse_run_config, sharp_run_config, approximate_solution, sample_on_grid,
    bulk_errors, director_error, one_sided_slopes, jump_mismatch, convergence_row, converge,
    convergence_rates, convergence_slopes, write_convergence,
    write_dat, report,
)

__all__ = [
    'StudyConfig',
    'StudyServiceError', 'ConfigError', 'ReportError',
    'CONVERGENCE_COLUMNS', 'RATE_METRICS', 'ENERGY_NOTE',
    'ConvergeRunConfig', 'SpectrumRunConfig', 'ProfileRunConfig', 'CompatRunConfig',
    'ErrorEnergy', 'ConvergenceRow', 'ConvergeResult', 'StudySummary', 'error_energy_k', 'split_floats',
    'read_config_file', 'read_config_text', 'build_config', 'parse_config', 'format_value', 'serialize_config',
    'config_hash', 'write_config',
    'energy_order', 'error_energy',
    'converge_config', 'comparison_dt', 'diffuse_run_config', 'sharp_run_config', 'approximate_solution',
    'sample_on_grid', 'bulk_errors', 'director_error', 'one_sided_slopes', 'jump_mismatch', 'convergence_row',
    'converge', 'convergence_rates', 'convergence_slopes', 'write_convergence',
    'write_dat', 'report',
]

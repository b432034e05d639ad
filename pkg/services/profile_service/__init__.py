"""
剖面服務 - 異宿軌 ρ₀、插值權重 η₁ 與能量常數
"""

from .core import (
    ProfileConfig,
    ProfileServiceError, ParameterError, ProfileSolverError, ConsistencyError, TableCorruptionError,
    ProfileParams, ProfileTable, EnergyConstant, DecayRates, alpha_bound,
    implicit_lhs, implicit_slope, solve_profile_point, rho0_at, rho0_prime_at, profile_gaps, ode_residual,
    build_table, validate_table, eta1_at, energy_constant_e, energy_closed_form, decay_rate_fit,
    equipartition_defect, table_frame, write_profile_csv,
)

__all__ = [
    'ProfileConfig',
    'ProfileServiceError', 'ParameterError', 'ProfileSolverError', 'ConsistencyError', 'TableCorruptionError',
    'ProfileParams', 'ProfileTable', 'EnergyConstant', 'DecayRates', 'alpha_bound',
    'implicit_lhs', 'implicit_slope', 'solve_profile_point', 'rho0_at', 'rho0_prime_at', 'profile_gaps',
    'ode_residual',
    'build_table', 'validate_table', 'eta1_at', 'energy_constant_e', 'energy_closed_form', 'decay_rate_fit',
    'equipartition_defect', 'table_frame', 'write_profile_csv',
]

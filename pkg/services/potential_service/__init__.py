"""
勢能服務 - 雙球面勢及其線性化係數
"""

from .core import (
    PotentialServiceError, ParameterError, PotentialParams, make_params,
    G_prime, G_second, G_third, F_at, f_at, Df_at, f1_taylor, taylor_remainder,
    profile_force, fA_at, fB_at, fC_at, fD_at,
)

__all__ = [
    'PotentialServiceError', 'ParameterError',
    'PotentialParams', 'make_params',
    'G_prime', 'G_second', 'G_third',
    'F_at', 'f_at', 'Df_at', 'f1_taylor', 'taylor_remainder',
    'profile_force', 'fA_at', 'fB_at', 'fC_at', 'fD_at',
]

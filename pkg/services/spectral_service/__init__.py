"""
譜估計服務 - 線性化二次型的離散化、最小特徵值與 ε 一致下界
"""

from .core import (
    SpectralConfig,
    SpectralServiceError, EigenSolverError, UnderResolvedError, BoundStoreError,
    FORM_KINDS, FormSpec, FormMatrix, SpectralReport, SweepResult, EndpointReport, BoundEntry, bound_key,
    lumped_weights, stiffness_matrix, profile_table, theta_values, uK_cross_section, potential_values,
    assemble, form_value, l2_norm2, to_function, layer_mass,
    gershgorin_lower, bandwidth, lower_banded, bracket_min_eig, eigen_residual, residual_tolerance, min_eig,
    BoundStore,
    SPECTRUM_COLUMNS, spectral_report, calibrated_bound, uniformity_verdict, sweep, write_spectrum_csv,
    c1_constant, q0_envelope, default_samples, endpoint_ratio, endpoint_estimate_check, endpoint_ratio_sweep,
    rayleigh_check, eigen_identity_defects, correction_term_bound, boundary_terms, profile_form_values,
)

__all__ = [
    'SpectralConfig',
    'SpectralServiceError', 'EigenSolverError', 'UnderResolvedError', 'BoundStoreError',
    'FORM_KINDS', 'FormSpec', 'FormMatrix', 'SpectralReport', 'SweepResult', 'EndpointReport', 'BoundEntry',
    'bound_key',
    'lumped_weights', 'stiffness_matrix', 'profile_table', 'theta_values', 'uK_cross_section', 'potential_values',
    'assemble', 'form_value', 'l2_norm2', 'to_function', 'layer_mass',
    'gershgorin_lower', 'bandwidth', 'lower_banded', 'bracket_min_eig', 'eigen_residual', 'residual_tolerance',
    'min_eig',
    'BoundStore',
    'SPECTRUM_COLUMNS', 'spectral_report', 'calibrated_bound', 'uniformity_verdict', 'sweep', 'write_spectrum_csv',
    'c1_constant', 'q0_envelope', 'default_samples', 'endpoint_ratio', 'endpoint_estimate_check',
    'endpoint_ratio_sweep',
    'rayleigh_check', 'eigen_identity_defects', 'correction_term_bound', 'boundary_terms', 'profile_form_values',
]

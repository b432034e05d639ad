"""
漸近展開服務 - 測地線插值、u^K 組裝、PDE 殘差與相容性檢查
"""

from .core import (
    ExpansionConfig,
    ExpansionServiceError, AmbiguousGeodesicError, DomainRangeError, CompatibilityError,
    GeodesicFrame, AngleDirector, ApproxConfig, ResidualRunConfig, TwoPointSolution,
    ResidualReport, CompatReport, JumpIdentityReport, TelescopingReport,
    geodesic_eval, geodesic_derivative, tangent_basis,
    weight_values, solve_two_point, corrector_source, angular_corrector, corrector_closed_form,
    cutoff, ApproxSolution, build_uK,
    residual_points, residual, loglog_slope, residual_sweep, write_residual_csv,
    mcf_defect, compat_mcf_quadrature, jump_identity_check, telescoping_check,
)

__all__ = [
    'ExpansionConfig',
    'ExpansionServiceError', 'AmbiguousGeodesicError', 'DomainRangeError', 'CompatibilityError',
    'GeodesicFrame', 'AngleDirector', 'ApproxConfig', 'ResidualRunConfig', 'TwoPointSolution',
    'ResidualReport', 'CompatReport', 'JumpIdentityReport', 'TelescopingReport',
    'geodesic_eval', 'geodesic_derivative', 'tangent_basis',
    'weight_values', 'solve_two_point', 'corrector_source', 'angular_corrector', 'corrector_closed_form',
    'cutoff', 'ApproxSolution', 'build_uK',
    'residual_points', 'residual', 'loglog_slope', 'residual_sweep', 'write_residual_csv',
    'mcf_defect', 'compat_mcf_quadrature', 'jump_identity_check', 'telescoping_check',
]

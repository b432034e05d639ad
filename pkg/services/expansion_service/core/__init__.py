from .config import ExpansionConfig
from .exceptions import ExpansionServiceError, AmbiguousGeodesicError, DomainRangeError, CompatibilityError
from .models import (
    GeodesicFrame, AngleDirector, ApproxConfig, ResidualRunConfig, TwoPointSolution,
    ResidualReport, CompatReport, JumpIdentityReport, TelescopingReport,
)
from .geodesic import geodesic_eval, geodesic_derivative, tangent_basis
from .twopoint import weight_values, solve_two_point, corrector_source, angular_corrector, corrector_closed_form
from .approx import cutoff, ApproxSolution, build_uK
from .residual import residual_points, residual, loglog_slope, residual_sweep, write_residual_csv
from .compat import mcf_defect, compat_mcf_quadrature, jump_identity_check, telescoping_check

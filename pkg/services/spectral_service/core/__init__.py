from .config import SpectralConfig
from .exceptions import SpectralServiceError, EigenSolverError, UnderResolvedError, BoundStoreError
from .models import (
    FORM_KINDS, SPECTRUM_COLUMNS, FormSpec, FormMatrix, SpectralReport, SweepResult, EndpointReport, BoundEntry,
    bound_key,
)
from .assemble import (
    lumped_weights, stiffness_matrix, profile_table, theta_values, uK_cross_section, potential_values,
    assemble, form_value, l2_norm2, to_function, layer_mass,
)
from .eigen import (
    gershgorin_lower, bandwidth, lower_banded, bracket_min_eig, eigen_residual, residual_tolerance, min_eig,
)
from .store import BoundStore
from .sweep import (
    spectral_report, calibrated_bound, uniformity_verdict, sweep, write_spectrum_csv,
)
from .checks import (
    c1_constant, q0_envelope, default_samples, endpoint_ratio, endpoint_estimate_check, endpoint_ratio_sweep,
    rayleigh_check, eigen_identity_defects, correction_term_bound, boundary_terms, profile_form_values,
)

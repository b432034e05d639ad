from .config import ProfileConfig
from .exceptions import (
    ProfileServiceError, ParameterError, ProfileSolverError, ConsistencyError, TableCorruptionError,
)
from .models import ProfileParams, ProfileTable, EnergyConstant, DecayRates, alpha_bound
from .implicit import (
    implicit_lhs, implicit_slope, solve_profile_point, rho0_at, rho0_prime_at, profile_gaps, ode_residual,
)
from .table import (
    build_table, validate_table, eta1_at, energy_constant_e, energy_closed_form, decay_rate_fit,
    equipartition_defect, table_frame, write_profile_csv,
)

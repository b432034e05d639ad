from .config import StudyConfig
from .exceptions import StudyServiceError, ConfigError, ReportError
from .models import (
    CONVERGENCE_COLUMNS, RATE_METRICS, ENERGY_NOTE,
    ConvergeRunConfig, SpectrumRunConfig, ProfileRunConfig, CompatRunConfig,
    ErrorEnergy, ConvergenceRow, ConvergeResult, StudySummary, error_energy_k, split_floats,
)
from .config_io import (
    read_config_file, read_config_text, build_config, parse_config, format_value, serialize_config,
    config_hash, write_config,
)
from .error_energy import energy_order, error_energy
from .converge import (
    converge_config, comparison_dt, diffuse_run_config, sharp_run_config, approximate_solution, sample_on_grid,
    bulk_errors, director_error, one_sided_slopes, jump_mismatch, convergence_row, converge,
    convergence_rates, convergence_slopes, write_convergence,
)
from .report import write_dat, report

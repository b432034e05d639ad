from .config import DiffuseConfig
from .exceptions import DiffuseServiceError, ConfigError, StabilityError, BlowUpError, CheckpointWriteError
from .models import DiffuseRunConfig, DiffuseResult
from .initial import (
    seed_distance, seed_directors, profile_values, front_values, uniform_values, load_seed, initial_field,
)
from .stepper import check_stability, Stepper, step
from .runner import (
    METRIC_COLUMNS, diffuse_config, bulk_moduli, interface_radius, metric_row, checkpoint_path, run_diffuse,
)

from .config import SharpConfig
from .exceptions import SharpServiceError, ConfigError, DegenerateDirectorError
from .models import SharpRunConfig, SharpState, SharpResult
from .mcf import mcf_rhs, mcf_step, radius_exact, extinction_time
from .harmonic import TransmissionGrid, locate_interface, interface_solve, diffusion, harmonic_flow_step
from .transmission import closed_form_interface_value, steady_transmission, angle_heat_step
from .runner import (
    sharp_config, transmission_grid, initial_angle, directors_from_angle, angle_from_directors,
    boundary_values, conductivities, initial_state, advance, slice_table, run_sharp,
)

from .config import FieldConfig
from .exceptions import FieldServiceError, GridError, NoInterfaceError, CheckpointError
from .models import OuterBoundary, PeriodicGrid, RadialGrid, InterfaceGeometry, VectorField
from .operators import (
    laplacian, laplacian_values, laplacian_matrix, forward_gradient,
    inner_product, gradient_inner_product,
)
from .geometry import signed_distance, level_crossings, interface_extract
from .energy import energy, gradient_energy, potential_energy
from .checkpoint import Checkpoint, write_checkpoint, read_checkpoint, slice_frame, write_slice_csv

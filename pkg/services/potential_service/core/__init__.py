from .exceptions import PotentialServiceError, ParameterError
from .models import PotentialParams, make_params
from .potential import (
    G_prime, G_second, G_third, F_at, f_at, Df_at, f1_taylor, taylor_remainder,
    profile_force, fA_at, fB_at, fC_at, fD_at,
)

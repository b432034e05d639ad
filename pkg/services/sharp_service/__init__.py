"""
銳利介面服務 - 介面平均曲率流與兩側調和映射熱流的參考解
"""

from .core import (
    SharpConfig,
    SharpServiceError, ConfigError, DegenerateDirectorError,
    SharpRunConfig, SharpState, SharpResult,
    mcf_rhs, mcf_step, radius_exact, extinction_time,
    TransmissionGrid, locate_interface, interface_solve, diffusion, harmonic_flow_step,
    closed_form_interface_value, steady_transmission, angle_heat_step,
    sharp_config, transmission_grid, initial_angle, directors_from_angle, angle_from_directors,
    boundary_values, conductivities, initial_state, advance, slice_table, run_sharp,
)

__all__ = [
    'SharpConfig',
    'SharpServiceError', 'ConfigError', 'DegenerateDirectorError',
    'SharpRunConfig', 'SharpState', 'SharpResult',
    'mcf_rhs', 'mcf_step', 'radius_exact', 'extinction_time',
    'TransmissionGrid', 'locate_interface', 'interface_solve', 'diffusion', 'harmonic_flow_step',
    'closed_form_interface_value', 'steady_transmission', 'angle_heat_step',
    'sharp_config', 'transmission_grid', 'initial_angle', 'directors_from_angle', 'angle_from_directors',
    'boundary_values', 'conductivities', 'initial_state', 'advance', 'slice_table', 'run_sharp',
]

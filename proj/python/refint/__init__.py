"""Reflective monolithic atom interferometer: path tracing and fringe synthesis."""

from refint._core import (
    BeamConfig,
    ConfigError,
    DomainError,
    ExitChannel,
    FringePattern,
    InterferometerGeometry,
    OrderRange,
    PathSpec,
    ReflectionTable,
    SimulationConfig,
    SurfaceLattice,
    TracedPath,
    channel_transmission,
    composed_exit_angle,
    diffract_order,
    enumerate_paths,
    fringe_contrast,
    fringe_period,
    default_phi_grid,
    intensity_pattern,
    interferometer_reflection,
    load_config,
    near_field_residual,
    reference_config,
    parse_config,
    path_phase,
    reflection_function,
    scan_incidence,
    scan_wavelength,
    splitting_angle,
    spread_averaged_pattern,
    trace_path,
    two_leg_path_length,
)

__all__ = [name for name in dir() if not name.startswith("_")]

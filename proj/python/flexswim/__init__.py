"""Planar slender-body swimmer simulation and controllability analysis."""

from ._core import (
    BumpParams,
    ConfigError,
    ModelParams,
    Pose,
    SimulationError,
    SingularSystemError,
    __version__,
    bump,
    bump_velocity,
    compose,
    connection_curvature,
    drag_matrix,
    filtration_ranks,
    head_resistance,
    local_connection,
    purcell_resistance,
    resolved_config,
    run_purcell_scan,
    run_simulate,
    run_sweep,
    se2_bracket,
    se2_exp,
    se2_log,
    simulate_bump,
    sweep_parameters,
)

TRAJECTORY_COLUMNS = ("t", "v0x", "v0y", "omega0", "x", "y", "theta", "theta_unwrapped", "residual")

__all__ = [name for name in dir() if not name.startswith("_")]

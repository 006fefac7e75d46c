"""pmesim: two-step relaxation protocols for Markovian qubits.

Subpackages: lindblad (general-N generators), bloch (N = 2 affine dynamics),
dynamics (integration and monitor analytics), protocol (case and type
classification), field (velocity-field export), config/cli (front end).
"""

from .bloch import (
    AffineGenerator,
    bloch_from_density,
    build_affine,
    density_from_bloch,
    environment_from_target,
    plane_condition_check,
    stationary_bloch,
    steady_state_bloch,
    trace_distance,
    velocity,
)
from .dynamics import (
    MonitorSeries,
    Trajectory,
    convergence_time,
    crossing_time,
    first_minimum,
    integrate,
    monitor,
    monitor_derivative,
    scalar_velocity,
)
from .field import FieldGrid, field_grid
from .lindblad import (
    DiagonalForm,
    Environment,
    build_liouvillian,
    diagonalize_kossakowski,
    environment,
    rhs_first_form,
    steady_state,
    validate_environment,
)
from .protocol import (
    CaseLabel,
    PmeType,
    ProtocolResult,
    Scenario,
    classify_case,
    classify_pme_type,
    run_direct,
    run_two_step,
    sweep_tsi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

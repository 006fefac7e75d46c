"""Direct and two-step relaxation protocols, case analysis, and PME typing.

Two copies start from the same state S.  Copy 1 relaxes directly under the
target environment F.  Copy 2 first evolves under an auxiliary environment A
until the switch time t_SI, then under F.  The effect occurs when
t_SI + t_IF < t_SF, with all times declared at the epsilon cutoff of the
trace-distance monitor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bloch import steady_state_bloch, trace_distance
from .dynamics import (
    DEFAULT_ATOL,
    DEFAULT_EPSILON,
    DEFAULT_RTOL,
    DEFAULT_T_MAX,
    MonitorSeries,
    Trajectory,
    convergence_time,
    crossing_time,
    first_minimum,
    integrate,
    monitor,
    monitor_derivative,
)
from .errors import ConfigError, NoConvergence
from .lindblad import Environment, require_valid

TYPE_TOL = 1e-9


class CaseLabel(str, enum.Enum):
    CASE1_CROSSING = "case1_crossing"
    CASE1_NO_CROSSING = "case1_no_crossing"
    CASE2_MONOTONE = "case2_monotone"
    CASE3_REPELLED = "case3_repelled"


class PmeType(str, enum.Enum):
    WEAK_TYPE_A = "weak_type_A"
    WEAK_TYPE_B = "weak_type_B"
    STRONG = "strong"
    NONE = "none"


@dataclass(frozen=True)
class Scenario:
    """One protocol setting: target and auxiliary environments plus S."""

    env_f: Environment
    env_a: Environment
    r_s: np.ndarray
    epsilon: float = DEFAULT_EPSILON
    t_max: float = DEFAULT_T_MAX
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL

    def __post_init__(self):
        require_valid(self.env_f)
        require_valid(self.env_a)
        object.__setattr__(self, "r_s", np.asarray(self.r_s, dtype=float))
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be positive")


@dataclass(frozen=True)
class DirectResult:
    t_sf: float
    trajectory: Trajectory
    series: MonitorSeries


@dataclass(frozen=True)
class ProtocolResult:
    t_sf: float
    t_si: float
    t_if: float
    t_sa: float | None
    case_label: CaseLabel
    pme_type: PmeType
    pme_occurs: bool
    d_sf: float
    d_a_at_tsi: float
    d_f_at_tsi: float
    direct: DirectResult
    aux_trajectory: Trajectory
    aux_series: MonitorSeries
    leg2_trajectory: Trajectory
    leg2_series: MonitorSeries


def run_direct(scenario: Scenario) -> DirectResult:
    """Copy 1: S -> F under the target environment."""
    r_f = steady_state_bloch(scenario.env_f)
    traj = integrate(scenario.env_f, scenario.r_s, scenario.t_max,
                     rtol=scenario.rtol, atol=scenario.atol)
    series = monitor(traj, r_f)
    t_sf = convergence_time(series, scenario.epsilon)
    return DirectResult(t_sf=t_sf, trajectory=traj, series=series)


def classify_case(env_f: Environment, env_a: Environment, r_s,
                  aux_series: MonitorSeries | None = None,
                  direct_series: MonitorSeries | None = None,
                  t_max: float = DEFAULT_T_MAX,
                  dip_tol: float = DEFAULT_EPSILON) -> CaseLabel:
    """Case of the auxiliary trajectory relative to the target state.

    Repelled if the monitor to F grows under A from the start; otherwise
    case 1 (finite first minimum), split by the existence of a finite-time
    crossing with the direct curve; otherwise monotone (minimum pushed to
    infinite time).

    Distances are only resolved to the epsilon cutoff, so an initial descent
    whose total depth stays below dip_tol while the curve later rises above
    its starting value still counts as repelled.  Published rounded parameter
    sets can sit exactly on this boundary.
    """
    r_f = steady_state_bloch(env_f)
    if aux_series is None:
        aux_series = monitor(integrate(env_a, r_s, t_max), r_f)
    if direct_series is None:
        direct_series = monitor(integrate(env_f, r_s, t_max), r_f)
    if monitor_derivative(r_s, env_a, r_f) > 0:
        return CaseLabel.CASE3_REPELLED
    minimum = first_minimum(aux_series)
    if minimum is not None:
        t_m, value = minimum
        d0 = aux_series.values[0]
        rises_away = float(np.max(aux_series.values)) > d0 + dip_tol
        if d0 - value <= dip_tol and rises_away:
            return CaseLabel.CASE3_REPELLED
        if crossing_time(aux_series, direct_series) is None:
            return CaseLabel.CASE1_NO_CROSSING
        return CaseLabel.CASE1_CROSSING
    return CaseLabel.CASE2_MONOTONE


def classify_pme_type(d_sf: float, d_a_at_tsi: float, d_f_at_tsi: float,
                      tol: float = TYPE_TOL) -> PmeType:
    """PME type from the three distances to F.

    Checked in priority order strong, weak type B, weak type A; boundary ties
    within tol resolve toward the weaker claim, except the type-A/type-B
    boundary d_A = d_F, which closes into type B.
    """
    if d_a_at_tsi > d_sf + tol:
        return PmeType.STRONG
    if d_sf > d_a_at_tsi + tol:
        if d_a_at_tsi > d_f_at_tsi - tol:
            return PmeType.WEAK_TYPE_B
        return PmeType.WEAK_TYPE_A
    return PmeType.NONE


def run_two_step(scenario: Scenario, t_si: float,
                 direct: DirectResult | None = None,
                 aux_trajectory: Trajectory | None = None) -> ProtocolResult:
    """Both copies of the protocol for one switch time.

    The optional direct/aux arguments let sweeps reuse the shared legs; they
    must come from the same scenario.
    """
    if t_si < 0:
        raise ConfigError("t_SI must be non-negative")
    r_f = steady_state_bloch(scenario.env_f)
    r_a = steady_state_bloch(scenario.env_a)
    if direct is None:
        direct = run_direct(scenario)
    if aux_trajectory is None:
        aux_trajectory = integrate(scenario.env_a, scenario.r_s, scenario.t_max,
                                   rtol=scenario.rtol, atol=scenario.atol)
    aux_series = monitor(aux_trajectory, r_f)
    try:
        t_sa = convergence_time(monitor(aux_trajectory, r_a), scenario.epsilon)
    except NoConvergence:
        t_sa = None
    if t_sa is not None and t_si >= t_sa and t_si > 0:
        raise ConfigError(f"t_SI = {t_si} must be below t_SA = {t_sa:.6g}")

    r_i = aux_trajectory.at(t_si)
    leg2 = integrate(scenario.env_f, r_i, scenario.t_max,
                     rtol=scenario.rtol, atol=scenario.atol)
    leg2_series = monitor(leg2, r_f)
    t_if = convergence_time(leg2_series, scenario.epsilon)

    d_sf = trace_distance(scenario.r_s, r_f)
    d_a_at_tsi = 0.5 * float(np.linalg.norm(r_i - r_f))
    d_f_at_tsi = direct.series.value_at(t_si)
    case = classify_case(scenario.env_f, scenario.env_a, scenario.r_s,
                         aux_series=aux_series, direct_series=direct.series,
                         dip_tol=scenario.epsilon)
    pme_type = classify_pme_type(d_sf, d_a_at_tsi, d_f_at_tsi)
    return ProtocolResult(
        t_sf=direct.t_sf,
        t_si=t_si,
        t_if=t_if,
        t_sa=t_sa,
        case_label=case,
        pme_type=pme_type,
        pme_occurs=bool(t_si + t_if < direct.t_sf),
        d_sf=d_sf,
        d_a_at_tsi=d_a_at_tsi,
        d_f_at_tsi=d_f_at_tsi,
        direct=direct,
        aux_trajectory=aux_trajectory,
        aux_series=aux_series,
        leg2_trajectory=leg2,
        leg2_series=leg2_series,
    )


@dataclass(frozen=True)
class SweepPoint:
    t_si: float
    result: ProtocolResult | None
    error: str | None


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]
    best_t_si: float | None
    best_total: float | None
    any_pme: bool


def sweep_tsi(scenario: Scenario, grid) -> SweepResult:
    """Run the two-step protocol over a grid of switch times.

    Failed points are flagged, not fatal; the argmin minimizes the total time
    t_SI + t_IF over successful points.
    """
    grid = sorted(float(t) for t in grid)
    if not grid:
        raise ConfigError("empty sweep grid")
    direct = run_direct(scenario)
    aux = integrate(scenario.env_a, scenario.r_s, scenario.t_max,
                    rtol=scenario.rtol, atol=scenario.atol)
    points = []
    best = None
    any_pme = False
    for t_si in grid:
        try:
            res = run_two_step(scenario, t_si, direct=direct, aux_trajectory=aux)
        except (ConfigError, NoConvergence) as exc:
            points.append(SweepPoint(t_si=t_si, result=None, error=str(exc)))
            continue
        points.append(SweepPoint(t_si=t_si, result=res, error=None))
        total = t_si + res.t_if
        any_pme = any_pme or res.pme_occurs
        if best is None or total < best[1]:
            best = (t_si, total)
    return SweepResult(
        points=tuple(points),
        best_t_si=None if best is None else best[0],
        best_total=None if best is None else best[1],
        any_pme=any_pme,
    )

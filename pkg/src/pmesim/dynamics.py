"""Trajectory integration and monitor-curve analytics.

Trajectories solve the affine Bloch ODE with an adaptive embedded
Runge-Kutta 4(5) pair (scipy's RK45) at tight tolerances, keeping the dense
interpolant so that event times (epsilon crossings, minima, curve crossings)
can be refined by bisection instead of being read off the sample grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .bloch import AffineGenerator, build_affine, trace_distance, velocity
from .errors import DegenerateReference, NoConvergence, StepSizeUnderflow
from .lindblad import Environment

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-10
DEFAULT_T_MAX = 50.0
DEFAULT_EPSILON = 1e-3
TIME_RES = 1e-9
DERIV_ZERO = 1e-10


@dataclass(frozen=True)
class Trajectory:
    """Dense solution of rdot = 2 Lambda r + b on [0, t_max]."""

    times: np.ndarray
    states: np.ndarray
    env: Environment
    gen: AffineGenerator = field(repr=False, default=None)
    _sol: object = field(repr=False, default=None)

    @property
    def t_max(self) -> float:
        return float(self.times[-1])

    def at(self, t) -> np.ndarray:
        """Evaluate the dense interpolant; vectorized over t."""
        return np.asarray(self._sol(t)).T


def integrate(env: Environment, r0, t_max: float = DEFAULT_T_MAX,
              rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
              n_samples: int = 2001) -> Trajectory:
    """Adaptive RK45 solution of the Bloch ODE with dense output."""
    gen = build_affine(env)
    r0 = np.asarray(r0, dtype=float)

    def rhs(_t, r):
        return 2.0 * gen.lam @ r + gen.b

    res = solve_ivp(rhs, (0.0, t_max), r0, method="RK45", rtol=rtol, atol=atol,
                    dense_output=True)
    if not res.success:
        raise StepSizeUnderflow(res.message)
    times = np.linspace(0.0, t_max, n_samples)
    states = res.sol(times).T
    return Trajectory(times=times, states=states, env=env, gen=gen, _sol=res.sol)


@dataclass(frozen=True)
class MonitorSeries:
    """Trace distance to a fixed reference along a trajectory."""

    times: np.ndarray
    values: np.ndarray
    reference: np.ndarray
    traj: Trajectory = field(repr=False, default=None)

    def value_at(self, t) -> float:
        r = self.traj.at(t)
        return 0.5 * float(np.linalg.norm(r - self.reference))


def monitor(traj: Trajectory, r_ref) -> MonitorSeries:
    """Pointwise trace distance of the trajectory to r_ref."""
    r_ref = np.asarray(r_ref, dtype=float)
    values = 0.5 * np.linalg.norm(traj.states - r_ref, axis=1)
    return MonitorSeries(times=traj.times, values=values, reference=r_ref, traj=traj)


def monitor_derivative(r, env: Environment, r_ref) -> float:
    """Exact time derivative of the monitor at state r.

    d/dt (|r - r_ref| / 2) = (r - r_ref) . v(r) / (2 |r - r_ref|).
    """
    r = np.asarray(r, dtype=float)
    r_ref = np.asarray(r_ref, dtype=float)
    diff = r - r_ref
    dist = np.linalg.norm(diff)
    if dist < 1e-12:
        raise DegenerateReference("monitor derivative undefined at the reference")
    return float(diff @ velocity(r, build_affine(env))) / (2.0 * dist)


def _bisect(f, lo: float, hi: float, tol: float = TIME_RES) -> float:
    flo = f(lo)
    for _ in range(200):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if (flo <= 0.0) == (fmid <= 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def convergence_time(series: MonitorSeries, epsilon: float) -> float:
    """First time t_c with D_T(t_c) = epsilon, refined by bisection.

    Intended for monotone series generated under the reference's own
    environment; raises NoConvergence if the series never reaches epsilon.
    """
    if series.values[0] <= epsilon:
        return 0.0
    below = np.flatnonzero(series.values <= epsilon)
    if len(below) == 0:
        if series.value_at(series.times[-1]) > epsilon:
            raise NoConvergence(
                f"monitor stayed above epsilon={epsilon} up to t={series.times[-1]}"
            )
        below = [len(series.times) - 1]
    i = below[0]
    lo, hi = series.times[i - 1], series.times[i]
    return _bisect(lambda t: series.value_at(t) - epsilon, lo, hi)


def _derivative_grid(series: MonitorSeries, n: int = 4001):
    """Analytic monitor derivative sampled on a refined grid."""
    ts = np.linspace(series.times[0], series.times[-1], n)
    env = series.traj.env
    ref = series.reference
    vals = np.empty(n)
    for i, t in enumerate(ts):
        try:
            vals[i] = monitor_derivative(series.traj.at(t), env, ref)
        except DegenerateReference:
            vals[i] = 0.0
    return ts, vals


def first_minimum(series: MonitorSeries):
    """First interior local minimum (t_M, value) of the monitor, or None.

    Works on the analytic derivative of the dense interpolant; derivative
    magnitudes below DERIV_ZERO count as zero, and a flat segment followed by
    an increase is a minimum at the segment start.
    """
    ts, dv = _derivative_grid(series)
    signs = np.where(np.abs(dv) < DERIV_ZERO, 0, np.sign(dv)).astype(int)
    seen_neg = None
    flat_start = None
    env, ref = series.traj.env, series.reference
    for i in range(1, len(ts)):
        s = signs[i]
        if s < 0:
            seen_neg = i
            flat_start = None
        elif s == 0:
            if seen_neg is not None and flat_start is None:
                flat_start = i
        elif s > 0 and seen_neg is not None:
            if flat_start is not None:
                t_m = ts[flat_start]
            else:
                t_m = _bisect(
                    lambda t: monitor_derivative(series.traj.at(t), env, ref),
                    ts[seen_neg], ts[i],
                )
            return t_m, series.value_at(t_m)
    return None


def crossing_time(s1: MonitorSeries, s2: MonitorSeries, tol: float = 1e-12):
    """First finite-time sign change of s1 - s2, or None.

    Both series start from the same state in protocol use, so the initial tie
    is skipped; only a strict later sign flip counts as a crossing.
    """
    t_end = min(s1.times[-1], s2.times[-1])
    ts = np.linspace(0.0, t_end, 4001)
    diff = lambda t: s1.value_at(t) - s2.value_at(t)
    vals = np.array([diff(t) for t in ts])
    sign0 = 0
    i0 = 0
    for i, v in enumerate(vals):
        if abs(v) > tol:
            sign0 = 1 if v > 0 else -1
            i0 = i
            break
    if sign0 == 0:
        return None
    for i in range(i0 + 1, len(ts)):
        v = vals[i]
        if abs(v) > tol and (1 if v > 0 else -1) != sign0:
            return _bisect(diff, ts[i - 1], ts[i])
    return None


def scalar_velocity(r, env: Environment) -> float:
    """|rdot| at state r, equal to Tr|rhodot|."""
    return float(np.linalg.norm(velocity(np.asarray(r, dtype=float),
                                         build_affine(env))))

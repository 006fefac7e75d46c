"""Scenario configuration files.

Configs are JSON with every complex number written as an explicit [re, im]
pair, so no complex-literal parsing is needed.  A config names at least the
target environment "F" and, for protocol runs, an auxiliary environment "A",
each with a 3x3 Kossakowski matrix, a field vector h, and an optional
declared steady state used as a sanity check (two-decimal tolerance).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bloch import steady_state_bloch
from .dynamics import DEFAULT_ATOL, DEFAULT_EPSILON, DEFAULT_RTOL, DEFAULT_T_MAX
from .errors import ConfigError, PmesimError
from .lindblad import PAULI, Environment, environment, require_valid
from .protocol import Scenario

STEADY_DECL_TOL = 0.01


def _complex_matrix(raw, name: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: malformed complex matrix: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ConfigError(
            f"{name}: expected entries as [re, im] pairs, got shape {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass(frozen=True)
class EnvironmentSpec:
    name: str
    env: Environment
    declared_steady: np.ndarray | None


@dataclass(frozen=True)
class ScenarioConfig:
    environments: dict[str, EnvironmentSpec]
    r_s: np.ndarray
    epsilon: float = DEFAULT_EPSILON
    t_max: float = DEFAULT_T_MAX
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    t_si: float | None = None
    sweep_grid: tuple[float, ...] = field(default=())

    def scenario(self) -> Scenario:
        if "F" not in self.environments or "A" not in self.environments:
            raise ConfigError("protocol runs need environments 'F' and 'A'")
        return Scenario(
            env_f=self.environments["F"].env,
            env_a=self.environments["A"].env,
            r_s=self.r_s,
            epsilon=self.epsilon,
            t_max=self.t_max,
            rtol=self.rtol,
            atol=self.atol,
        )


def load_config(path) -> ScenarioConfig:
    """Parse a config file; raises ConfigError on malformed input."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict) or "environments" not in raw:
        raise ConfigError("config must be an object with an 'environments' key")

    envs = {}
    for name, spec in raw["environments"].items():
        c = _complex_matrix(spec.get("C"), f"environment {name}")
        h = np.asarray(spec.get("h", [0.0, 0.0, 0.0]), dtype=float)
        if c.shape != (3, 3) or h.shape != (3,):
            raise ConfigError(f"environment {name}: C must be 3x3 and h length 3")
        hmat = sum(hn * s for hn, s in zip(h, PAULI))
        declared = spec.get("steady_state")
        envs[name] = EnvironmentSpec(
            name=name,
            env=environment(hmat, c),
            declared_steady=None if declared is None
            else np.asarray(declared, dtype=float),
        )

    try:
        r_s = np.asarray(raw.get("initial_state", [0.0, 0.0, 0.0]), dtype=float)
        if r_s.shape != (3,):
            raise ConfigError("initial_state must be a length-3 vector")
        cfg = ScenarioConfig(
            environments=envs,
            r_s=r_s,
            epsilon=float(raw.get("epsilon", DEFAULT_EPSILON)),
            t_max=float(raw.get("t_max", DEFAULT_T_MAX)),
            rtol=float(raw.get("rtol", DEFAULT_RTOL)),
            atol=float(raw.get("atol", DEFAULT_ATOL)),
            t_si=None if raw.get("t_SI") is None else float(raw["t_SI"]),
            sweep_grid=tuple(float(t) for t in raw.get("sweep", [])),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed scalar field: {exc}") from None
    return cfg


def verify_physics(cfg: ScenarioConfig) -> dict[str, np.ndarray]:
    """Validate all environments and check declared steady states.

    Returns the computed steady-state Bloch vectors; raises PmesimError
    subclasses on physics-level failure.
    """
    computed = {}
    for name, spec in cfg.environments.items():
        require_valid(spec.env)
        r_star = steady_state_bloch(spec.env)
        computed[name] = r_star
        if spec.declared_steady is not None:
            dev = float(np.max(np.abs(r_star - spec.declared_steady)))
            if dev > STEADY_DECL_TOL:
                raise PmesimError(
                    f"environment {name}: computed steady state {r_star} deviates "
                    f"from declared {spec.declared_steady} by {dev:.3g}"
                )
    return computed

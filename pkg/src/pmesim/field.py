"""Velocity-field sampling over the r1-r2 unit disk."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import build_affine, plane_condition_check, velocity
from .errors import PlaneViolation
from .lindblad import Environment

DEFAULT_RESOLUTION = 41


@dataclass(frozen=True)
class FieldGrid:
    """Velocity samples (v1, v2) on disk points (r1, r2) in the r3 = 0 plane."""

    resolution: int
    points: np.ndarray
    vectors: np.ndarray
    magnitudes: np.ndarray


def field_grid(env: Environment, resolution: int = DEFAULT_RESOLUTION) -> FieldGrid:
    """Uniform grid on [-1, 1]^2 masked to the closed unit disk.

    Requires the plane-confinement conditions, so the field is genuinely
    two-dimensional and v3 = 0 at every sampled point.
    """
    if not plane_condition_check(env):
        raise PlaneViolation("environment does not preserve the r3 = 0 plane")
    gen = build_affine(env)
    axis = np.linspace(-1.0, 1.0, resolution)
    pts = []
    vecs = []
    for r2 in axis:
        for r1 in axis:
            if r1 * r1 + r2 * r2 <= 1.0:
                v = velocity(np.array([r1, r2, 0.0]), gen)
                pts.append((r1, r2))
                vecs.append((v[0], v[1]))
    points = np.array(pts)
    vectors = np.array(vecs)
    return FieldGrid(
        resolution=resolution,
        points=points,
        vectors=vectors,
        magnitudes=np.linalg.norm(vectors, axis=1),
    )

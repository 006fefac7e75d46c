"""Two-level (N = 2) specialization: affine Bloch dynamics.

For a qubit, rho = (I + sum_n r_n sigma_n) / 2 and the Lindblad equation
becomes the affine ODE rdot = 2 Lambda r + b, where Lambda and b are real
functions of the Kossakowski matrix C and the field vector h with
H = sum_n h_n sigma_n.  The trace distance between two qubit states equals
half the Euclidean distance of their Bloch vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BlochNormExceeded,
    DimensionMismatch,
    NonPositiveKossakowski,
    SingularGenerator,
)
from .lindblad import PAULI, Environment, environment, require_valid, steady_state

NORM_TOL = 1e-9


def bloch_from_density(rho: np.ndarray) -> np.ndarray:
    """Bloch vector r_n = Tr(rho sigma_n)."""
    if rho.shape != (2, 2):
        raise DimensionMismatch(f"expected 2x2 density matrix, got {rho.shape}")
    return np.array([np.trace(rho @ s).real for s in PAULI])


def density_from_bloch(r: np.ndarray) -> np.ndarray:
    """rho = (I + sum_n r_n sigma_n) / 2."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) > 1.0 + NORM_TOL:
        raise BlochNormExceeded(f"|r| = {np.linalg.norm(r):.6f} > 1")
    rho = 0.5 * np.eye(2, dtype=complex)
    for rn, s in zip(r, PAULI):
        rho = rho + 0.5 * rn * s
    return rho


def field_vector(env: Environment) -> np.ndarray:
    """Extract h with H = sum_n h_n sigma_n."""
    return np.array([0.5 * np.trace(env.hamiltonian @ s).real for s in PAULI])


@dataclass(frozen=True)
class AffineGenerator:
    """rdot = 2 lam r + b."""

    lam: np.ndarray
    b: np.ndarray


def build_affine(env: Environment) -> AffineGenerator:
    """Affine Bloch generator from C and h.

    Lambda mixes the real parts of the off-diagonal Kossakowski entries with
    the field components; b carries the imaginary parts.  Conventions: C12 is
    the (1,2) entry, C23 the (2,3) entry, and C31 the (3,1) entry of C.
    """
    if env.dim != 2:
        raise DimensionMismatch(f"affine Bloch dynamics needs N = 2, got {env.dim}")
    c = env.kossakowski
    h1, h2, h3 = field_vector(env)
    c11, c22, c33 = c[0, 0].real, c[1, 1].real, c[2, 2].real
    c12, c23, c31 = c[0, 1], c[1, 2], c[2, 0]
    lam = np.array(
        [
            [-c22 - c33, -h3 + c12.real, h2 + c31.real],
            [h3 + c12.real, -c11 - c33, -h1 + c23.real],
            [-h2 + c31.real, h1 + c23.real, -c11 - c22],
        ]
    )
    b = -4.0 * np.array([c23.imag, c31.imag, c12.imag])
    return AffineGenerator(lam=lam, b=b)


def velocity(r: np.ndarray, gen: AffineGenerator) -> np.ndarray:
    """rdot = 2 Lambda r + b."""
    return 2.0 * gen.lam @ np.asarray(r, dtype=float) + gen.b


def trace_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """Half the Euclidean distance between Bloch vectors."""
    return 0.5 * float(np.linalg.norm(np.asarray(r1) - np.asarray(r2)))


def stationary_bloch(gen: AffineGenerator) -> np.ndarray:
    """Fixed point r* = -Lambda^-1 b / 2 of the affine flow."""
    if np.linalg.cond(gen.lam) > 1e12:
        raise SingularGenerator("Lambda is singular; no unique fixed point")
    return -0.5 * np.linalg.solve(gen.lam, gen.b)


def plane_condition_check(env: Environment, tol: float = 1e-9) -> bool:
    """True iff the dynamics preserves the r3 = 0 plane.

    Requires Im C12 = 0, -h2 + Re C31 = 0, and h1 + Re C23 = 0; then the r3
    component decouples and r3(0) = 0 stays zero.
    """
    if env.dim != 2:
        raise DimensionMismatch(f"plane condition needs N = 2, got {env.dim}")
    c = env.kossakowski
    h1, h2, _ = field_vector(env)
    return (
        abs(c[0, 1].imag) < tol
        and abs(-h2 + c[2, 0].real) < tol
        and abs(h1 + c[1, 2].real) < tol
    )


def environment_from_target(c_real: np.ndarray, h: np.ndarray,
                            r_star: np.ndarray) -> Environment:
    """Qubit environment with prescribed stationary state.

    c_real holds the diagonal and the real parts of the off-diagonal
    Kossakowski entries; the imaginary parts are solved for from
    b = -2 Lambda r*, i.e. Im(C23, C31, C12) = -b / 4.  Raises
    NonPositiveKossakowski if the required imaginary parts break positivity.
    """
    c_real = np.asarray(c_real, dtype=float)
    h = np.asarray(h, dtype=float)
    r_star = np.asarray(r_star, dtype=float)
    base = environment(
        sum(hn * s for hn, s in zip(h, PAULI)), c_real.astype(complex)
    )
    gen = build_affine(base)
    if np.linalg.cond(gen.lam) > 1e12:
        raise SingularGenerator("Lambda is singular; cannot place a fixed point")
    b = -2.0 * gen.lam @ r_star
    im23, im31, im12 = -b / 4.0
    c = np.array(
        [
            [c_real[0, 0], c_real[0, 1] + 1j * im12, c_real[2, 0] - 1j * im31],
            [c_real[0, 1] - 1j * im12, c_real[1, 1], c_real[1, 2] + 1j * im23],
            [c_real[2, 0] + 1j * im31, c_real[1, 2] - 1j * im23, c_real[2, 2]],
        ]
    )
    env = environment(base.hamiltonian, c)
    require_valid(env)
    return env


def steady_state_bloch(env: Environment) -> np.ndarray:
    """Bloch vector of the Liouvillian steady state (N = 2)."""
    return bloch_from_density(steady_state(env))

"""Shared test helpers: shipped config paths and random generators."""

from importlib.resources import files

import numpy as np

from pmesim.lindblad import PAULI, environment

FIXTURE_NAMES = ["fig1", "fig2a", "fig2b", "fig2c", "figA1"]


def fixture_path(name: str) -> str:
    return str(files("pmesim") / "fixtures" / f"{name}.config")


def random_environment(rng, h3_scale: float = 2.0, dim: int = 2):
    """Random valid environment: C = A^dag A is Hermitian PSD by construction."""
    n2m1 = dim * dim - 1
    a = rng.normal(size=(n2m1, n2m1)) + 1j * rng.normal(size=(n2m1, n2m1))
    c = a.conj().T @ a / n2m1
    if dim == 2:
        h = rng.normal(size=3)
        h[2] *= h3_scale
        hmat = sum(hn * s for hn, s in zip(h, PAULI))
    else:
        b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        hmat = 0.5 * (b + b.conj().T)
        hmat -= np.trace(hmat) / dim * np.eye(dim)
    return environment(hmat, c)


def random_bloch(rng, radius: float = 1.0):
    r = rng.normal(size=3)
    return r / np.linalg.norm(r) * rng.uniform(0.0, radius)


def random_density(rng, dim: int = 2):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)

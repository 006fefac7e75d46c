"""General-N Lindblad generators in first standard and diagonal form.

The first standard form is parametrized by a Hamiltonian H and a Hermitian
positive semi-definite Kossakowski matrix C acting on a fixed traceless
operator basis {F_m} (the Pauli matrices for N = 2, generalized Gell-Mann
matrices otherwise).  The diagonal form carries non-negative rates and jump
operators obtained by diagonalizing C.  Vectorization is row-wise: an N x N
matrix B maps to the length-N^2 column vector obtained by stacking its rows,
so that vec(A B C) = (A kron C^T) vec(B).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateSteadyState,
    DimensionMismatch,
    InvalidDensityMatrix,
    NonPositiveKossakowski,
)

TOL_PSD = 1e-9
TOL_HERM = 1e-9
NULL_TOL = 1e-9

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def operator_basis(dim: int) -> tuple[np.ndarray, ...]:
    """Traceless Hermitian basis {F_m} with Tr(F_a F_b) = 2 delta_ab.

    For dim = 2 this is exactly (sigma_1, sigma_2, sigma_3).  For larger
    dimensions it is the generalized Gell-Mann basis, ordered as: for each
    index pair j < k in lexicographic order, the symmetric then the
    antisymmetric matrix, followed by the diagonal matrices.
    """
    if dim < 2:
        raise DimensionMismatch(f"need dim >= 2, got {dim}")
    if dim == 2:
        return PAULI
    ops = []
    for j in range(dim):
        for k in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((dim, dim), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            ops.append(sym)
            ops.append(anti)
    for l in range(1, dim):
        diag = np.zeros((dim, dim), dtype=complex)
        diag[:l, :l] = np.eye(l)
        diag[l, l] = -l
        ops.append(np.sqrt(2.0 / (l * (l + 1))) * diag)
    return tuple(ops)


@dataclass(frozen=True)
class Environment:
    """One bath/quench setting: Hamiltonian plus Kossakowski matrix.

    Immutable after construction; all operations below are pure functions.
    """

    dim: int
    hamiltonian: np.ndarray
    kossakowski: np.ndarray
    basis: tuple[np.ndarray, ...] = field(repr=False, default=())

    def __post_init__(self):
        n2m1 = self.dim * self.dim - 1
        if self.hamiltonian.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"Hamiltonian shape {self.hamiltonian.shape} for dim {self.dim}"
            )
        if self.kossakowski.shape != (n2m1, n2m1):
            raise DimensionMismatch(
                f"Kossakowski shape {self.kossakowski.shape} for dim {self.dim}"
            )
        if not self.basis:
            object.__setattr__(self, "basis", operator_basis(self.dim))
        self.hamiltonian.setflags(write=False)
        self.kossakowski.setflags(write=False)


def environment(hamiltonian, kossakowski) -> Environment:
    """Build an Environment from plain arrays, inferring the dimension."""
    h = np.asarray(hamiltonian, dtype=complex)
    c = np.asarray(kossakowski, dtype=complex)
    return Environment(dim=h.shape[0], hamiltonian=h, kossakowski=c)


@dataclass(frozen=True)
class ValidationReport:
    herm_dev_h: float
    herm_dev_c: float
    min_eig_c: float
    accepted: bool
    problems: tuple[str, ...]


def validate_environment(env: Environment, tol: float = TOL_HERM) -> ValidationReport:
    """Check Hermiticity of H and C and positive semi-definiteness of C."""
    herm_h = float(np.max(np.abs(env.hamiltonian - env.hamiltonian.conj().T)))
    herm_c = float(np.max(np.abs(env.kossakowski - env.kossakowski.conj().T)))
    c_herm = 0.5 * (env.kossakowski + env.kossakowski.conj().T)
    min_eig = float(np.min(np.linalg.eigvalsh(c_herm)))
    problems = []
    if herm_h >= tol:
        problems.append(f"Hamiltonian not Hermitian (deviation {herm_h:.3e})")
    if herm_c >= tol:
        problems.append(f"Kossakowski not Hermitian (deviation {herm_c:.3e})")
    if min_eig < -TOL_PSD:
        problems.append(f"Kossakowski not PSD (min eigenvalue {min_eig:.3e})")
    return ValidationReport(
        herm_dev_h=herm_h,
        herm_dev_c=herm_c,
        min_eig_c=min_eig,
        accepted=not problems,
        problems=tuple(problems),
    )


def require_valid(env: Environment) -> None:
    report = validate_environment(env)
    if not report.accepted:
        if any("PSD" in p for p in report.problems):
            raise NonPositiveKossakowski("; ".join(report.problems))
        raise DimensionMismatch("; ".join(report.problems))


def check_density_matrix(rho: np.ndarray, trace_tol: float = 1e-10,
                         herm_tol: float = 1e-10, psd_tol: float = 1e-9) -> None:
    """Raise InvalidDensityMatrix unless rho is a valid state."""
    if abs(np.trace(rho) - 1.0) > trace_tol:
        raise InvalidDensityMatrix(f"trace {np.trace(rho)} != 1")
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        raise InvalidDensityMatrix("not Hermitian")
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if min_eig < -psd_tol:
        raise InvalidDensityMatrix(f"negative eigenvalue {min_eig:.3e}")


@dataclass(frozen=True)
class DiagonalForm:
    """Rates gamma_j >= 0 and jump operators L_j of the diagonal form."""

    rates: np.ndarray
    jumps: tuple[np.ndarray, ...]


def diagonalize_kossakowski(env: Environment, tol_psd: float = TOL_PSD) -> DiagonalForm:
    """Diagonal form of the dissipator: rates are eigenvalues of C.

    Eigenvalues in [-tol_psd, 0) are clamped to zero; anything lower raises
    NonPositiveKossakowski.  The jump operators are linear combinations of the
    basis operators with the eigenvector components as coefficients, chosen so
    that the rebuilt dissipator reproduces the first standard form exactly.
    """
    c_herm = 0.5 * (env.kossakowski + env.kossakowski.conj().T)
    eigvals, eigvecs = np.linalg.eigh(c_herm)
    if np.min(eigvals) < -tol_psd:
        raise NonPositiveKossakowski(f"min eigenvalue {np.min(eigvals):.3e}")
    rates = np.clip(eigvals, 0.0, None)
    jumps = tuple(
        sum(eigvecs[i, j] * env.basis[i] for i in range(len(env.basis)))
        for j in range(len(env.basis))
    )
    return DiagonalForm(rates=rates, jumps=jumps)


def dissipator_first_form(rho: np.ndarray, env: Environment) -> np.ndarray:
    """Dissipative part of drho/dt in first standard form."""
    c = env.kossakowski
    fs = env.basis
    out = np.zeros_like(rho)
    for m in range(len(fs)):
        for n in range(len(fs)):
            if c[m, n] == 0:
                continue
            fm, fn = fs[m], fs[n]
            fnd_fm = fn.conj().T @ fm
            out = out + c[m, n] * (
                fm @ rho @ fn.conj().T - 0.5 * (fnd_fm @ rho + rho @ fnd_fm)
            )
    return out


def dissipator_diagonal(rho: np.ndarray, form: DiagonalForm) -> np.ndarray:
    """Dissipative part of drho/dt rebuilt from rates and jump operators."""
    out = np.zeros_like(rho)
    for gamma, lj in zip(form.rates, form.jumps):
        if gamma == 0:
            continue
        ld_l = lj.conj().T @ lj
        out = out + gamma * (lj @ rho @ lj.conj().T - 0.5 * (ld_l @ rho + rho @ ld_l))
    return out


def rhs_first_form(rho: np.ndarray, env: Environment) -> np.ndarray:
    """drho/dt = -i[H, rho] + dissipator, first standard form."""
    h = env.hamiltonian
    return -1j * (h @ rho - rho @ h) + dissipator_first_form(rho, env)


def build_liouvillian(env: Environment) -> np.ndarray:
    """N^2 x N^2 matrix L with L vec(rho) = vec(rhs_first_form(rho, env)).

    Uses the row-stacking convention, under which vec(A B C) = (A kron C^T) vec(B).
    """
    n = env.dim
    eye = np.eye(n, dtype=complex)
    h = env.hamiltonian
    liouv = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    c = env.kossakowski
    fs = env.basis
    for m in range(len(fs)):
        for nn in range(len(fs)):
            if c[m, nn] == 0:
                continue
            fm, fn = fs[m], fs[nn]
            fnd_fm = fn.conj().T @ fm
            liouv = liouv + c[m, nn] * (
                np.kron(fm, fn.conj())
                - 0.5 * np.kron(fnd_fm, eye)
                - 0.5 * np.kron(eye, fnd_fm.T)
            )
    return liouv


def vectorize(mat: np.ndarray) -> np.ndarray:
    """Row-stacking vectorization."""
    return mat.reshape(-1)


def devectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    return vec.reshape(dim, dim)


def steady_state(env: Environment, null_tol: float = NULL_TOL) -> np.ndarray:
    """Unique fixed point rho* with L vec(rho*) = 0.

    Extracted from the near-null eigenvector of the Liouvillian; raises
    DegenerateSteadyState when the null space is not one-dimensional within
    null_tol.
    """
    liouv = build_liouvillian(env)
    eigvals, eigvecs = scipy.linalg.eig(liouv)
    null_idx = np.flatnonzero(np.abs(eigvals) < null_tol)
    if len(null_idx) != 1:
        raise DegenerateSteadyState(
            f"{len(null_idx)} Liouvillian eigenvalues within {null_tol} of zero"
        )
    rho = devectorize(eigvecs[:, null_idx[0]], env.dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    check_density_matrix(rho)
    return rho

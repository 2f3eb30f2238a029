"""Quantum states: Bloch vectors, density matrices, experimental state families.

A qubit density matrix is parametrized as rho = (1 + r.sigma)/2 with r the
Bloch vector. Two one-parameter families of pure states are provided: a
latitude circle at rz = 1/sqrt(3) swept by the azimuth phi, and a meridian
with rx = ry swept by the polar angle theta. Random pure (Haar) and random
mixed (Hilbert-Schmidt) generators are deterministic per seed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidStateError
from .rng import stream

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIG_FLOOR = -1e-10
BLOCH_NORM_TOL = 1e-12

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Validated density matrix (Hermitian, unit trace, positive semidefinite)."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.ascontiguousarray(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITICITY_TOL:
            raise InvalidStateError(f"density matrix not Hermitian: residual {herm:.3e}")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace must be 1, got {tr}")
        min_eig = float(np.linalg.eigvalsh(rho)[0])
        if min_eig < PSD_EIG_FLOOR:
            raise InvalidStateError(f"density matrix not positive semidefinite: min eig {min_eig:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.rho, self.rho).real)


class Family(enum.Enum):
    """Tags for the two experimental sweep families."""

    R1_LATITUDE = "r1"
    R2_MERIDIAN = "r2"


@dataclass(frozen=True, eq=False)
class StateFamilyPoint:
    family: Family
    parameter: float
    bloch: np.ndarray

    def state(self) -> QuantumState:
        return density_from_bloch(self.bloch)


def from_statevector(psi: np.ndarray) -> QuantumState:
    """Density matrix |psi><psi| of a normalized state vector."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise InvalidStateError("zero state vector")
    psi = psi / norm
    return QuantumState(np.outer(psi, psi.conj()))


def density_from_bloch(r) -> QuantumState:
    """Qubit density matrix (1 + r.sigma)/2 for a Bloch vector inside the ball."""
    r = np.asarray(r, dtype=float).ravel()
    if r.shape != (3,):
        raise InvalidStateError(f"Bloch vector needs 3 components, got {r.shape}")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + BLOCH_NORM_TOL:
        raise InvalidStateError(f"Bloch vector norm {norm} exceeds 1")
    rho = 0.5 * (np.eye(2, dtype=complex) + r[0] * _PAULI_X + r[1] * _PAULI_Y + r[2] * _PAULI_Z)
    return QuantumState(rho)


def bloch_from_density(state: QuantumState) -> np.ndarray:
    """Bloch vector r_i = tr(rho sigma_i); inverse of density_from_bloch."""
    if state.dim != 2:
        raise DimensionMismatchError("Bloch view is defined for dimension 2 only")
    rho = state.rho
    rx = 2.0 * rho[0, 1].real
    ry = -2.0 * rho[0, 1].imag
    rz = (rho[0, 0] - rho[1, 1]).real
    return np.array([rx, ry, rz])


def family_r1(phi: float) -> StateFamilyPoint:
    """Latitude family: (sqrt(2/3) cos phi, sqrt(2/3) sin phi, 1/sqrt(3))."""
    a = np.sqrt(2.0 / 3.0)
    bloch = np.array([a * np.cos(phi), a * np.sin(phi), 1.0 / np.sqrt(3.0)])
    return StateFamilyPoint(Family.R1_LATITUDE, float(phi), bloch)


def family_r2(theta: float) -> StateFamilyPoint:
    """Meridian family: (sin theta / sqrt 2, sin theta / sqrt 2, cos theta)."""
    b = np.sin(theta) / np.sqrt(2.0)
    bloch = np.array([b, b, np.cos(theta)])
    return StateFamilyPoint(Family.R2_MERIDIAN, float(theta), bloch)


def family_point(family: Family, parameter: float) -> StateFamilyPoint:
    if family is Family.R1_LATITUDE:
        return family_r1(parameter)
    if family is Family.R2_MERIDIAN:
        return family_r2(parameter)
    raise ValueError(f"unknown family {family!r}")


def random_pure(dim: int, seed: int) -> QuantumState:
    """Haar-random pure state: normalized vector of standard complex normals."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    rng = stream(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return from_statevector(v)


def random_mixed(dim: int, seed: int) -> QuantumState:
    """Hilbert-Schmidt random mixed state rho = G G^dag / tr(G G^dag)."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    rng = stream(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return QuantumState(m / np.trace(m).real)


def random_pure_bloch(n: int, seed: int) -> np.ndarray:
    """(n, 3) Bloch vectors of Haar-random qubit pure states, one RNG stream."""
    rng = stream(seed)
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    cross = np.conj(z[:, 0]) * z[:, 1]
    return np.column_stack(
        [2.0 * cross.real, 2.0 * cross.imag, np.abs(z[:, 0]) ** 2 - np.abs(z[:, 1]) ** 2]
    )


def random_mixed_bloch(n: int, seed: int) -> np.ndarray:
    """(n, 3) Bloch vectors of Hilbert-Schmidt random qubit mixed states."""
    rng = stream(seed)
    g = rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))
    m = g @ np.conj(np.swapaxes(g, 1, 2))
    t = np.trace(m, axis1=1, axis2=2).real
    rx = 2.0 * m[:, 0, 1].real / t
    ry = -2.0 * m[:, 0, 1].imag / t
    rz = (m[:, 0, 0] - m[:, 1, 1]).real / t
    return np.column_stack([rx, ry, rz])


def random_pure_vectors(dim: int, n: int, seed: int) -> np.ndarray:
    """(n, dim) Haar-random normalized state vectors from one RNG stream."""
    rng = stream(seed)
    z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def state_to_json_dict(state: QuantumState) -> dict:
    """Serialize to {dim, entries} with row-major [re, im] pairs."""
    flat = state.rho.ravel()
    return {
        "dim": state.dim,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def state_from_json_dict(obj: dict) -> QuantumState:
    """Inverse of state_to_json_dict."""
    dim = int(obj["dim"])
    entries = obj["entries"]
    if len(entries) != dim * dim:
        raise InvalidStateError(f"expected {dim * dim} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries])
    return QuantumState(flat.reshape(dim, dim))

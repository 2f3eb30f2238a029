"""Expectations, variances, outcome distributions, and Shannon entropies.

Two independent routes exist for qubit moments: the spectral route here
(matrix traces and eigendecompositions) and the closed-form Bloch route in
``kernels``. Tests hold them to each other at 1e-12.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, TripleSpinError
from .states import QuantumState

HERMITICITY_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-12
#: Eigenvalues closer than this are treated as one degenerate outcome.
EIGENVALUE_MERGE_TOL = 1e-9
VARIANCE_FLOOR = -1e-12


class EntropyBase(enum.Enum):
    NATURAL = "nats"
    BITS = "bits"


@dataclass(frozen=True)
class OutcomeDistribution:
    """Projective-measurement outcomes: (eigenvalue, probability) pairs.

    Eigenvalues are sorted descending and degenerate ones are merged with
    their probabilities summed.
    """

    entries: tuple[tuple[float, float], ...]

    def eigenvalues(self) -> np.ndarray:
        return np.array([e for e, _ in self.entries])

    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.entries])


def _check_pair(state: QuantumState, op: np.ndarray) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DimensionMismatchError(f"observable must be a square matrix, got {op.shape}")
    if op.shape[0] != state.dim:
        raise DimensionMismatchError(f"state dim {state.dim} vs observable dim {op.shape[0]}")
    herm = np.max(np.abs(op - op.conj().T))
    if herm > HERMITICITY_TOL:
        raise NotHermitianError(f"observable not Hermitian: residual {herm:.3e}")
    return op


def expectation(state: QuantumState, op: np.ndarray) -> float:
    """tr(rho O) for a Hermitian observable O."""
    op = _check_pair(state, op)
    val = np.einsum("ij,ji->", state.rho, op)
    if abs(val.imag) > IMAG_RESIDUE_TOL:
        raise TripleSpinError(f"expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def variance(state: QuantumState, op: np.ndarray) -> float:
    """<O^2> - <O>^2, with tiny negative radicands clamped to zero.

    Evaluated in the centered form tr(rho (O - <O>)^2), which is free of the
    catastrophic cancellation the raw moment difference suffers near
    eigenstates; near-saturating searches rely on that accuracy.
    """
    op = _check_pair(state, op)
    e1 = np.einsum("ij,ji->", state.rho, op).real
    centered = op - e1 * np.eye(op.shape[0])
    rad = float(np.einsum("ij,jk,ki->", state.rho, centered, centered).real)
    if rad < VARIANCE_FLOOR:
        raise TripleSpinError(f"negative variance {rad:.3e} signals corrupted inputs")
    return max(rad, 0.0)


def std_dev(state: QuantumState, op: np.ndarray) -> float:
    """Standard deviation sqrt(<O^2> - <O>^2)."""
    return float(np.sqrt(variance(state, op)))


def outcome_distribution(
    state: QuantumState, op: np.ndarray, merge_tol: float = EIGENVALUE_MERGE_TOL
) -> OutcomeDistribution:
    """Spectral decomposition of O with probabilities p_k = tr(rho P_k)."""
    op = _check_pair(state, op)
    eigvals, eigvecs = np.linalg.eigh(op)
    # eigh returns ascending order; work in descending order
    eigvals = eigvals[::-1]
    eigvecs = eigvecs[:, ::-1]
    probs = np.einsum("ij,jk,ki->i", eigvecs.conj().T, state.rho, eigvecs).real

    entries: list[tuple[float, float]] = []
    k = 0
    n = len(eigvals)
    while k < n:
        j = k + 1
        while j < n and abs(eigvals[j] - eigvals[j - 1]) <= merge_tol:
            j += 1
        group = slice(k, j)
        entries.append((float(np.mean(eigvals[group])), float(np.sum(probs[group]))))
        k = j

    total = sum(p for _, p in entries)
    if abs(total - 1.0) > 1e-10:
        raise TripleSpinError(f"outcome probabilities sum to {total}, not 1")
    if any(p < -1e-12 for _, p in entries):
        raise TripleSpinError("negative outcome probability beyond tolerance")
    return OutcomeDistribution(tuple(entries))


def shannon_entropy(
    state: QuantumState, op: np.ndarray, base: EntropyBase = EntropyBase.NATURAL
) -> float:
    """Shannon entropy of the measurement outcome distribution of O."""
    dist = outcome_distribution(state, op)
    h = 0.0
    for _, p in dist.entries:
        if p > 0.0:
            h -= p * np.log(p)
    if base is EntropyBase.BITS:
        h /= np.log(2.0)
    return float(h)


def batch_expectation(psis: np.ndarray, op: np.ndarray) -> np.ndarray:
    """<psi|O|psi> for a (n, dim) batch of normalized state vectors."""
    return np.einsum("ni,ij,nj->n", psis.conj(), op, psis).real


def batch_variance(psis: np.ndarray, op: np.ndarray) -> np.ndarray:
    """Variances of O over a (n, dim) batch of state vectors.

    Computed as ||(O - <O>)psi||^2, nonnegative by construction and accurate
    near eigenstates.
    """
    op = np.asarray(op)
    e1 = batch_expectation(psis, op)
    w = psis @ op.T - e1[:, None] * psis
    return np.sum(np.abs(w) ** 2, axis=1)

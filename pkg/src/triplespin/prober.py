"""Derivative-free search for minimum-gap and saturating states.

Pure states in dimension d are parametrized by 2d-1 unconstrained reals
(first amplitude taken real nonnegative, explicit renormalization at every
evaluation), so a simplex search never leaves the state manifold. For the
qubit, an optional mixed-state mode searches the closed Bloch ball instead.
Gaps involve absolute values and square roots with kinks at saturation, so
local refinement uses the Nelder-Mead simplex rather than gradients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import SpinRestrictionError
from .relations import RelationId, applicable_to, evaluate
from .rng import stream
from .spin_ops import Spin, build_spin_operators
from .states import QuantumState, density_from_bloch, from_statevector, random_pure_vectors

#: A scan minimum below -this is reported as a conjecture counterexample candidate.
COUNTEREXAMPLE_TOL = 1e-8

_XATOL = 1e-8


@dataclass(frozen=True)
class ProbeConfig:
    restarts: int = 64
    max_iters: int = 2000
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be >= 1")


@dataclass(frozen=True, eq=False)
class ProbeResult:
    relation: RelationId
    spin: Spin
    min_gap: float
    argmin_state: QuantumState
    converged: bool
    evaluations: int
    best_restart: int

    def to_dict(self) -> dict:
        from .states import state_to_json_dict

        return {
            "relation": self.relation.value,
            "twice_s": self.spin.twice_s,
            "min_gap": self.min_gap,
            "argmin_state": state_to_json_dict(self.argmin_state),
            "converged": self.converged,
            "evaluations": self.evaluations,
            "best_restart": self.best_restart,
        }


def _state_from_params(x: np.ndarray, dim: int) -> QuantumState:
    psi = np.empty(dim, dtype=complex)
    psi[0] = abs(x[0])
    psi[1:] = x[1::2] + 1j * x[2::2]
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        psi[0] = 1.0
        norm = 1.0
    return from_statevector(psi / norm)


def _params_from_vector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    if abs(psi[0]) > 0:
        psi = psi * np.exp(-1j * np.angle(psi[0]))
    x = np.empty(2 * len(psi) - 1)
    x[0] = psi[0].real
    x[1::2] = psi[1:].real
    x[2::2] = psi[1:].imag
    return x


def _bloch_from_params(x: np.ndarray) -> np.ndarray:
    r = np.asarray(x, dtype=float)
    norm = np.linalg.norm(r)
    return r / norm if norm > 1.0 else r


def _random_start(dim: int, seed: int, restart: int, mixed: bool) -> np.ndarray:
    rng = stream(seed, restart)
    if mixed:
        # uniform over the ball by rejection-free radial scaling
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        return v * rng.random() ** (1.0 / 3.0)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return _params_from_vector(z / np.linalg.norm(z))


def _refine(objective, x0: np.ndarray, cfg: ProbeConfig):
    return minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": cfg.max_iters,
            "xatol": _XATOL,
            "fatol": cfg.tol,
        },
    )


def min_gap(
    relation: RelationId,
    spin: Spin | int,
    cfg: ProbeConfig = ProbeConfig(),
    mixed: bool = False,
    threads: int = 1,
) -> ProbeResult:
    """Minimize the gap of one relation over states of the given spin.

    Runs cfg.restarts independent Nelder-Mead searches from Haar-random pure
    starts (or Bloch-ball points when mixed=True, qubit only) and keeps the
    best result, ties broken by lowest restart index. Restarts may run on a
    thread pool; each has its own RNG stream, so the result is identical for
    any schedule and deterministic for a fixed config.
    """
    spin = spin if isinstance(spin, Spin) else Spin(spin)
    if not applicable_to(relation, spin):
        raise SpinRestrictionError(f"{relation.value} is not applicable at twice_s = {spin.twice_s}")
    if mixed and spin.twice_s != 1:
        raise ValueError("mixed-state probing uses the Bloch ball and needs spin 1/2")
    dim = spin.dim

    if mixed:
        to_state = lambda x: density_from_bloch(_bloch_from_params(x))
    else:
        to_state = lambda x: _state_from_params(x, dim)

    def objective(x):
        return evaluate(relation, to_state(x), spin).gap

    def run_restart(r: int):
        res = _refine(objective, _random_start(dim, cfg.seed, r, mixed), cfg)
        return (float(res.fun), r, res.x.copy(), bool(res.success), int(res.nfev))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run_restart, range(cfg.restarts)))
    else:
        outcomes = [run_restart(r) for r in range(cfg.restarts)]

    evaluations = sum(o[4] for o in outcomes)
    best = min(outcomes, key=lambda o: (o[0], o[1]))
    _, best_restart, best_x, success, _ = best
    argmin = to_state(best_x)
    final_gap = evaluate(relation, argmin, spin).gap
    return ProbeResult(
        relation=relation,
        spin=spin,
        min_gap=final_gap,
        argmin_state=argmin,
        converged=success,
        evaluations=evaluations,
        best_restart=best_restart,
    )


def min_variance_sum(spin: Spin | int, cfg: ProbeConfig = ProbeConfig()) -> tuple[float, ProbeResult]:
    """Minimize Var(Sx) + Var(Sy) + Var(Sz) over pure states.

    Returns (minimum variance sum, probe result); the probe result is
    expressed as the gap of the variance-sum bound, min_gap = minimum - s.
    """
    result = min_gap(RelationId.R7_SUM_GENERAL_S, spin, cfg)
    return result.min_gap + result.spin.s, result


def scan_conjecture(
    spin: Spin | int,
    samples: int,
    cfg: ProbeConfig = ProbeConfig(),
) -> ProbeResult:
    """Scan the all-spin triple-product conjecture on random pure states.

    Evaluates the conjectured bound on `samples` Haar-random states, then
    refines from the 10 smallest-gap samples with Nelder-Mead. A minimum
    below -COUNTEREXAMPLE_TOL marks a counterexample candidate; callers
    report it rather than fail.
    """
    spin = spin if isinstance(spin, Spin) else Spin(spin)
    if spin.twice_s < 2:
        raise ValueError("the spin-1/2 case is the proved product bound; scan needs twice_s >= 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    dim = spin.dim
    ops = build_spin_operators(spin)
    relation = RelationId.R11_CONJECTURE_TRIPLE_PRODUCT

    psis = random_pure_vectors(dim, samples, cfg.seed)
    gaps = conjecture_gaps_batch(psis, ops)
    order = np.argsort(gaps)

    def objective(x):
        return evaluate(relation, _state_from_params(x, dim), spin).gap

    best_gap = float(gaps[order[0]])
    best_state = from_statevector(psis[order[0]])
    converged = True
    evaluations = samples
    for rank in range(min(10, samples)):
        x0 = _params_from_vector(psis[order[rank]])
        res = _refine(objective, x0, cfg)
        evaluations += int(res.nfev)
        if res.fun < best_gap:
            best_gap = float(res.fun)
            best_state = _state_from_params(res.x, dim)
            converged = bool(res.success)

    final_gap = evaluate(relation, best_state, spin).gap
    return ProbeResult(
        relation=relation,
        spin=spin,
        min_gap=final_gap,
        argmin_state=best_state,
        converged=converged,
        evaluations=evaluations,
        best_restart=0,
    )


def is_counterexample(result: ProbeResult) -> bool:
    return result.min_gap < -COUNTEREXAMPLE_TOL


def conjecture_gaps_batch(psis: np.ndarray, ops) -> np.ndarray:
    """Vectorized conjectured-bound gaps for a batch of pure state vectors."""
    from .moments import batch_expectation, batch_variance
    from .relations import TAU

    sx, sy, sz = ops.as_tuple()
    dx = np.sqrt(batch_variance(psis, sx))
    dy = np.sqrt(batch_variance(psis, sy))
    dz = np.sqrt(batch_variance(psis, sz))
    ex = batch_expectation(psis, sx)
    ey = batch_expectation(psis, sy)
    ez = batch_expectation(psis, sz)
    return dx * dy * dz - np.sqrt(np.abs(TAU**3 / 8.0 * ex * ey * ez))


def variance_sum_batch(psis: np.ndarray, ops) -> np.ndarray:
    """Vectorized Var(Sx)+Var(Sy)+Var(Sz) for a batch of pure state vectors."""
    from .moments import batch_variance

    sx, sy, sz = ops.as_tuple()
    return batch_variance(psis, sx) + batch_variance(psis, sy) + batch_variance(psis, sz)

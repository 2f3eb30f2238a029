"""Shot-noise simulation of the prepare-rotate-measure protocol.

The rotation before readout is folded into the measured observable, so each
sweep point reduces to sampling +-1/2 outcomes of one spin component. By
default the full shot count collapses to a single binomial draw per (state,
axis), which is statistically identical to four million individual repeats;
a per-draw mode is kept behind a flag for audits.

Derived quantities follow the sweep-figure conventions:
    pro0 = Dx Dy Dz             pro1 = |tau^3 ex ey ez / 8|^(1/2)
    pro2 = |ex ey ez / 8|^(1/2)
    sum0 = Dx^2 + Dy^2 + Dz^2   sum1 = tau (|ex|+|ey|+|ez|) / 2
    sum2 = (|ex|+|ey|+|ez|) / 2
with ex = <Sx> etc. and D = sqrt(1/4 - e^2). Standard errors propagate to
first order treating the three per-axis estimates as independent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .moments import outcome_distribution
from .relations import TAU
from .rng import stream
from .spin_ops import build_spin_operators
from .states import Family, QuantumState, family_point

#: A sweep point is singular for pro0 error propagation when any standard
#: deviation factor is this close to zero, and for pro1/pro2 when the bound is.
PRO0_SINGULAR_TOL = 1e-6
PRO12_SINGULAR_TOL = 1e-12

DEFAULT_SHOTS = 4_000_000


class Axis(enum.Enum):
    SX = 0
    SY = 1
    SZ = 2


@dataclass(frozen=True)
class ShotConfig:
    shots: int = DEFAULT_SHOTS
    seed: int = 0

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")


@dataclass(frozen=True)
class EstimationResult:
    """Monte Carlo estimate of one spin-component expectation."""

    axis: Axis
    estimate: float
    stderr: float
    shots: int


@dataclass(frozen=True)
class Derived:
    value: float
    stderr: float


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: per-axis estimates plus the derived products and sums."""

    parameter: float
    sx: EstimationResult
    sy: EstimationResult
    sz: EstimationResult
    pro0: Derived
    pro1: Derived
    pro2: Derived
    sum0: Derived
    sum1: Derived
    sum2: Derived
    flags: tuple[str, ...]


_QUBIT_OPS = None


def _qubit_ops():
    global _QUBIT_OPS
    if _QUBIT_OPS is None:
        _QUBIT_OPS = build_spin_operators(1)
    return _QUBIT_OPS


def simulate_expectation(
    state: QuantumState,
    axis: Axis,
    cfg: ShotConfig,
    index: int = 0,
    per_draw: bool = False,
) -> EstimationResult:
    """Sample `shots` outcomes of one spin component and average them.

    Outcomes are +-1/2 with probabilities from the projective outcome
    distribution. The stream is keyed by (seed, index, axis) so sweep points
    can run in any order or in parallel without changing results.
    """
    if state.dim != 2:
        raise DimensionMismatchError("measurement simulation models the qubit experiment only")
    op = _qubit_ops().as_tuple()[axis.value]
    dist = outcome_distribution(state, op)
    p_plus = 0.0
    for eig, prob in dist.entries:
        if eig > 0:
            p_plus = prob
    p_plus = min(max(p_plus, 0.0), 1.0)

    rng = stream(cfg.seed, index, axis.value)
    if per_draw:
        k = int(np.count_nonzero(rng.random(cfg.shots) < p_plus))
    else:
        k = int(rng.binomial(cfg.shots, p_plus))
    estimate = k / cfg.shots - 0.5
    # outcomes are +-1/2, so the sample variance is exactly 1/4 - mean^2
    sample_var = max(0.25 - estimate * estimate, 0.0)
    stderr = math.sqrt(sample_var / cfg.shots)
    return EstimationResult(axis, estimate, stderr, cfg.shots)


def exact_expectation(state: QuantumState, axis: Axis) -> EstimationResult:
    """Analytic counterpart of simulate_expectation (zero standard error)."""
    if state.dim != 2:
        raise DimensionMismatchError("analytic sweep rows model the qubit experiment only")
    op = _qubit_ops().as_tuple()[axis.value]
    val = float(np.einsum("ij,ji->", state.rho, op).real)
    return EstimationResult(axis, val, 0.0, 0)


def estimated_std_dev(est: EstimationResult) -> tuple[float, float]:
    """Standard deviation sqrt(1/4 - e^2) from an estimated expectation e.

    The standard error follows from the first-order derivative |e|/value and
    is NaN at value = 0 where that derivative blows up.
    """
    e = est.estimate
    if abs(e) > 0.5 + 1e-12:
        raise ValueError(f"estimate {e} outside the +-1/2 eigenvalue range")
    rad = max(0.25 - e * e, 0.0)
    value = math.sqrt(rad)
    if value == 0.0:
        return value, math.nan
    return value, abs(e) / value * est.stderr


def propagate_derived(
    parameter: float,
    sx: EstimationResult,
    sy: EstimationResult,
    sz: EstimationResult,
) -> SweepRow:
    """Compute the six derived sweep quantities with delta-method errors.

    Near-singular derivatives are flagged instead of extrapolated: when any
    standard-deviation factor of pro0 is below PRO0_SINGULAR_TOL, or pro1 or
    pro2 is below PRO12_SINGULAR_TOL, the row gets a `singular_*` flag and
    the affected standard error is NaN (0 when all input errors are 0, since
    then nothing propagates).
    """
    ests = (sx, sy, sz)
    if tuple(e.axis for e in ests) != (Axis.SX, Axis.SY, Axis.SZ):
        raise ValueError("expected one estimate per axis in (SX, SY, SZ) order")
    e = np.array([sx.estimate, sy.estimate, sz.estimate])
    sig = np.array([sx.stderr, sy.stderr, sz.stderr])
    exact_inputs = bool(np.all(sig == 0.0))

    d = np.sqrt(np.maximum(0.25 - e * e, 0.0))
    flags: list[str] = []

    pro0_val = float(d[0] * d[1] * d[2])
    pro0_singular = bool(np.any(d < PRO0_SINGULAR_TOL))
    if pro0_singular:
        flags.append("singular_pro0")
        pro0_err = 0.0 if exact_inputs else math.nan
    else:
        # d(pro0)/de_i = -e_i * pro0 / d_i^2
        pro0_err = float(pro0_val * math.sqrt(np.sum((e * sig / d**2) ** 2)))

    eprod = abs(float(e[0] * e[1] * e[2])) / 8.0
    pro1_val = math.sqrt(TAU**3 * eprod)
    pro2_val = math.sqrt(eprod)

    def _prod_bound_err(val: float, tol: float, tag: str) -> float:
        if val < tol:
            flags.append(tag)
            return 0.0 if exact_inputs else math.nan
        # d(val)/de_i = val / (2 e_i)
        return float(val / 2.0 * math.sqrt(np.sum((sig / e) ** 2)))

    pro1_err = _prod_bound_err(pro1_val, PRO12_SINGULAR_TOL, "singular_pro1")
    pro2_err = _prod_bound_err(pro2_val, PRO12_SINGULAR_TOL, "singular_pro2")

    sum0_val = float(np.sum(0.25 - e * e))
    sum0_err = float(math.sqrt(np.sum((2.0 * e * sig) ** 2)))
    abs_sum = float(np.sum(np.abs(e)))
    sig_quad = float(math.sqrt(np.sum(sig**2)))
    sum1_val = TAU / 2.0 * abs_sum
    sum1_err = TAU / 2.0 * sig_quad
    sum2_val = abs_sum / 2.0
    sum2_err = sig_quad / 2.0

    return SweepRow(
        parameter=float(parameter),
        sx=sx,
        sy=sy,
        sz=sz,
        pro0=Derived(pro0_val, pro0_err),
        pro1=Derived(pro1_val, pro1_err),
        pro2=Derived(pro2_val, pro2_err),
        sum0=Derived(sum0_val, sum0_err),
        sum1=Derived(sum1_val, sum1_err),
        sum2=Derived(sum2_val, sum2_err),
        flags=tuple(flags),
    )


def sweep_parameters(family: Family, n_points: int) -> np.ndarray:
    """Evenly spaced sweep grid: [0, 2pi) for the latitude family, [0, pi] for the meridian."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if family is Family.R1_LATITUDE:
        return 2.0 * np.pi * np.arange(n_points) / n_points
    if family is Family.R2_MERIDIAN:
        return np.pi * np.arange(n_points) / (n_points - 1)
    raise ValueError(f"unknown family {family!r}")


def analytic_row(family: Family, parameter: float) -> SweepRow:
    """Exact sweep row (the solid/dashed theory curves) at one parameter."""
    state = family_point(family, parameter).state()
    return propagate_derived(
        parameter,
        exact_expectation(state, Axis.SX),
        exact_expectation(state, Axis.SY),
        exact_expectation(state, Axis.SZ),
    )


def simulated_row(
    family: Family, parameter: float, index: int, cfg: ShotConfig, per_draw: bool = False
) -> SweepRow:
    """Monte Carlo sweep row (the scattered experimental points) at one parameter."""
    state = family_point(family, parameter).state()
    return propagate_derived(
        parameter,
        simulate_expectation(state, Axis.SX, cfg, index, per_draw),
        simulate_expectation(state, Axis.SY, cfg, index, per_draw),
        simulate_expectation(state, Axis.SZ, cfg, index, per_draw),
    )


def run_sweep(
    family: Family,
    n_points: int,
    cfg: ShotConfig,
    analytic_only: bool = False,
    per_draw: bool = False,
    threads: int = 1,
) -> list[SweepRow]:
    """Sweep one state family, either analytically or with shot noise."""
    params = sweep_parameters(family, n_points)

    def one(k: int) -> SweepRow:
        if analytic_only:
            return analytic_row(family, params[k])
        return simulated_row(family, params[k], k, cfg, per_draw)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, range(n_points)))
    return [one(k) for k in range(n_points)]


CSV_HEADER = (
    "param,exp_sx,err_sx,exp_sy,err_sy,exp_sz,err_sz,"
    "pro0,err_pro0,pro1,err_pro1,pro2,sum0,err_sum0,sum1,err_sum1,sum2,flags"
)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def rows_to_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows in the fixed CSV schema (12 significant digits)."""
    lines = [CSV_HEADER]
    for r in rows:
        fields = [
            _fmt(r.parameter),
            _fmt(r.sx.estimate),
            _fmt(r.sx.stderr),
            _fmt(r.sy.estimate),
            _fmt(r.sy.stderr),
            _fmt(r.sz.estimate),
            _fmt(r.sz.stderr),
            _fmt(r.pro0.value),
            _fmt(r.pro0.stderr),
            _fmt(r.pro1.value),
            _fmt(r.pro1.stderr),
            _fmt(r.pro2.value),
            _fmt(r.sum0.value),
            _fmt(r.sum0.stderr),
            _fmt(r.sum1.value),
            _fmt(r.sum1.stderr),
            _fmt(r.sum2.value),
            ";".join(r.flags),
        ]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"

"""Command-line front end: verification, sweeps, simulation, probing, soak.

Subcommands write CSV for sweep data and JSON for structured reports. When
``--emit PATH`` is given the output goes to PATH and a run manifest is
written next to it (PATH.manifest.json) recording the exact argv, seed, and
tool version; re-dispatching the recorded argv reproduces the output file
byte for byte. The default seed can be overridden with the TRIPLESPIN_SEED
environment variable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import TripleSpinError
from .measure_sim import ShotConfig, rows_to_csv, run_sweep
from .prober import ProbeConfig, is_counterexample, min_gap, scan_conjecture
from .relations import (
    SATURATION_TOL,
    RelationId,
    applicable_to,
    catalog,
    evaluate,
    soak_qubit,
)
from .spin_ops import Spin, build_spin_operators, identity_residuals
from .states import (
    Family,
    QuantumState,
    density_from_bloch,
    family_point,
    state_from_json_dict,
    state_to_json_dict,
)
from .triangle import scan as triangle_scan

#: Saturation/violation tolerance for the verify subcommand. Looser than the
#: library default so that Bloch components given to a few decimal places
#: still register as saturating.
VERIFY_CLI_TOL = 1e-6

_ALIASES = {
    "R2X": "R2_PAIR_PRODUCT_X",
    "R2Y": "R2_PAIR_PRODUCT_Y",
    "R2Z": "R2_PAIR_PRODUCT_Z",
    "R3": "R3_TRIPLE_PRODUCT",
    "R4X": "R4_PAIR_SUM_X",
    "R4Y": "R4_PAIR_SUM_Y",
    "R4Z": "R4_PAIR_SUM_Z",
    "R5": "R5_TRIPLE_SUM",
    "R6": "R6_SUM_HALF",
    "R7": "R7_SUM_GENERAL_S",
    "R8": "R8_VARIANCE_OF_SUMS",
    "R9XY": "R9_ENTROPIC_PAIR_XY",
    "R9YZ": "R9_ENTROPIC_PAIR_YZ",
    "R9ZX": "R9_ENTROPIC_PAIR_ZX",
    "R10": "R10_ENTROPIC_TRIPLE",
    "R11": "R11_CONJECTURE_TRIPLE_PRODUCT",
    "PRO2": "NAIVE_PRO2",
    "SUM2": "NAIVE_SUM2",
}
_GROUPS = {
    "R2": ("R2_PAIR_PRODUCT_X", "R2_PAIR_PRODUCT_Y", "R2_PAIR_PRODUCT_Z"),
    "R4": ("R4_PAIR_SUM_X", "R4_PAIR_SUM_Y", "R4_PAIR_SUM_Z"),
    "R9": ("R9_ENTROPIC_PAIR_XY", "R9_ENTROPIC_PAIR_YZ", "R9_ENTROPIC_PAIR_ZX"),
}


class CliError(Exception):
    """Argument-level error; maps to exit code 2."""


def parse_relation(token: str) -> RelationId:
    t = token.strip().upper()
    name = _ALIASES.get(t, t)
    try:
        return RelationId[name]
    except KeyError:
        raise CliError(f"unknown relation {token!r}; see `triplespin verify --list`") from None


def parse_relations(token: str, spin: Spin) -> list[RelationId]:
    t = token.strip().upper()
    if t == "ALL":
        return [e.relation for e in catalog() if applicable_to(e.relation, spin)]
    if t in _GROUPS:
        return [RelationId[n] for n in _GROUPS[t]]
    return [parse_relation(t)]


def _default_seed() -> int:
    return int(os.environ.get("TRIPLESPIN_SEED", "0"))


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _build_state(args, spin: Spin) -> QuantumState:
    given = [x is not None for x in (args.bloch, args.family, args.state_file)]
    if sum(given) != 1:
        raise CliError("give exactly one of --bloch, --family, --state-file")
    if args.bloch is not None:
        if spin.twice_s != 1:
            raise CliError("--bloch describes a qubit; use --spin 1")
        parts = [float(p) for p in args.bloch.split(",")]
        if len(parts) != 3:
            raise CliError("--bloch needs three comma-separated components")
        return density_from_bloch(parts)
    if args.family is not None:
        if spin.twice_s != 1:
            raise CliError("state families describe qubits; use --spin 1")
        family = Family(args.family)
        candidates = [v for v in (args.phi, args.theta, args.param) if v is not None]
        if len(candidates) != 1:
            raise CliError("give the family parameter once (--phi, --theta, or --param)")
        return family_point(family, _angle(candidates[0], args.degrees)).state()
    with open(args.state_file, encoding="utf-8") as fh:
        state = state_from_json_dict(json.load(fh))
    if state.dim != spin.dim:
        raise CliError(f"state file has dim {state.dim}, but --spin {spin.twice_s} needs {spin.dim}")
    return state


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _write_output(text: str, args, command: str, seed) -> None:
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest = {
            "command": command,
            "argv": list(args._argv),
            "config": {
                k: (v.value if hasattr(v, "value") else v)
                for k, v in vars(args).items()
                if not k.startswith("_") and k != "func"
            },
            "seed": seed,
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        with open(args.emit + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_ops(args) -> int:
    ops = build_spin_operators(Spin(args.spin))
    out = {
        "twice_s": ops.spin.twice_s,
        "dim": ops.dim,
        "sx": _matrix_json(ops.sx),
        "sy": _matrix_json(ops.sy),
        "sz": _matrix_json(ops.sz),
        "residuals": identity_residuals(ops),
    }
    _write_output(_json_text(out), args, "ops", None)
    return 0


def _cmd_verify(args) -> int:
    spin = Spin(args.spin)
    relations = parse_relations(args.relation, spin)
    for rel in relations:
        if not applicable_to(rel, spin):
            raise CliError(
                f"{rel.value} is proved for spin-1/2 only and cannot be verified at "
                f"twice_s = {spin.twice_s}"
            )
    state = _build_state(args, spin)
    tol = args.tolerance
    reports = []
    for rel in relations:
        reports.append(evaluate(rel, state, spin, saturation_tol=tol))
    _write_output(_json_text([r.to_dict() for r in reports]), args, "verify", None)
    violated = any(r.gap < -tol for r in reports)
    return 1 if violated else 0


def _cmd_sweep(args) -> int:
    rows = run_sweep(
        Family(args.family),
        args.points,
        ShotConfig(shots=1, seed=0),
        analytic_only=True,
        threads=args.threads,
    )
    _write_output(rows_to_csv(rows), args, "sweep", None)
    return 0


def _cmd_simulate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = ShotConfig(shots=args.shots, seed=seed)
    rows = run_sweep(
        Family(args.family),
        args.points,
        cfg,
        analytic_only=args.analytic,
        per_draw=args.per_draw,
        threads=args.threads,
    )
    _write_output(rows_to_csv(rows), args, "simulate", seed)
    return 0


def _cmd_probe(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spin = Spin(args.spin)
    cfg = ProbeConfig(restarts=args.restarts, max_iters=args.max_iters, tol=args.tol, seed=seed)
    if args.conjecture:
        result = scan_conjecture(spin, args.samples, cfg)
        out = result.to_dict()
        out["counterexample"] = is_counterexample(result)
        if out["counterexample"]:
            artifact = args.emit + ".counterexample.json" if args.emit else (
                f"conjecture_counterexample_twice_s{spin.twice_s}.json"
            )
            with open(artifact, "w", encoding="utf-8") as fh:
                json.dump(out, fh, indent=2)
                fh.write("\n")
            print(f"conjecture counterexample candidate written to {artifact}", file=sys.stderr)
    else:
        if args.relation is None:
            raise CliError("probe needs --relation or --conjecture")
        relation = parse_relation(args.relation)
        if not applicable_to(relation, spin):
            raise CliError(
                f"{relation.value} is not applicable at twice_s = {spin.twice_s} "
                "(relation proved for spin-1/2 only)"
            )
        result = min_gap(relation, spin, cfg, mixed=args.mixed, threads=args.threads)
        out = result.to_dict()
        if relation is RelationId.R7_SUM_GENERAL_S:
            out["variance_sum_min"] = result.min_gap + spin.s
    _write_output(_json_text(out), args, "probe", seed)
    return 0


def _cmd_triangle(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    result = triangle_scan(args.samples, seed, side=args.side)
    _write_output(_json_text(result.to_dict()), args, "triangle", seed)
    return 0


def _cmd_soak(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    summary = soak_qubit(args.pure, args.mixed_n, seed, tolerance=args.tolerance, threads=args.threads)
    lines = [
        f"qubit relation soak: {summary.n_pure} pure + {summary.n_mixed} mixed states, "
        f"seed {seed}, tolerance {summary.tolerance:g}",
        f"{'relation':<32} {'min gap':>14} {'violations':>11}",
    ]
    for rel in summary.min_gap:
        lines.append(f"{rel.value:<32} {summary.min_gap[rel]:>14.3e} {summary.violations[rel]:>11d}")
    lines.append("status: " + ("OK" if summary.ok else "VIOLATIONS FOUND"))
    _write_output("\n".join(lines) + "\n", args, "soak", seed)
    return 0 if summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triplespin",
        description="Verify, simulate, and probe triple spin-component uncertainty relations.",
    )
    parser.add_argument("--version", action="version", version=f"triplespin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--emit", metavar="PATH", help="write output to PATH (default stdout)")

    p_ops = sub.add_parser("ops", help="emit spin operator matrices and identity residuals as JSON")
    p_ops.add_argument("--spin", type=int, required=True, metavar="TWICE_S")
    add_common(p_ops)
    p_ops.set_defaults(func=_cmd_ops)

    p_ver = sub.add_parser("verify", help="evaluate relations on one state, reports as JSON")
    p_ver.add_argument("--relation", required=True, help="relation id, alias (R3, R5, ...), or 'all'")
    p_ver.add_argument("--spin", type=int, default=1, metavar="TWICE_S")
    p_ver.add_argument("--bloch", help="qubit Bloch vector rx,ry,rz")
    p_ver.add_argument("--family", choices=[f.value for f in Family])
    p_ver.add_argument("--phi", type=float, help="latitude family azimuth")
    p_ver.add_argument("--theta", type=float, help="meridian family polar angle")
    p_ver.add_argument("--param", type=float, help="family parameter (generic spelling)")
    p_ver.add_argument("--state-file", help="JSON file with dim and row-major [re,im] entries")
    p_ver.add_argument("--degrees", action="store_true", help="family parameter is in degrees")
    p_ver.add_argument("--tolerance", type=float, default=VERIFY_CLI_TOL)
    add_common(p_ver)
    p_ver.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="analytic sweep curves as CSV")
    p_sweep.add_argument("--family", choices=[f.value for f in Family], required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--analytic", action="store_true", help="accepted for symmetry; sweep is always analytic")
    p_sweep.add_argument("--threads", type=int, default=1)
    add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_sim = sub.add_parser("simulate", help="Monte Carlo sweep with shot noise as CSV")
    p_sim.add_argument("--family", choices=[f.value for f in Family], required=True)
    p_sim.add_argument("--points", type=int, required=True)
    p_sim.add_argument("--shots", type=int, default=4_000_000)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--analytic", action="store_true", help="emit exact values with zero errors")
    p_sim.add_argument("--per-draw", action="store_true", help="sample individual shots instead of one binomial")
    p_sim.add_argument("--threads", type=int, default=1)
    add_common(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_probe = sub.add_parser("probe", help="minimum-gap search / conjecture scan, result as JSON")
    p_probe.add_argument("--relation", help="relation id or alias")
    p_probe.add_argument("--spin", type=int, default=1, metavar="TWICE_S")
    p_probe.add_argument("--mixed", action="store_true", help="search the qubit Bloch ball instead of pure states")
    p_probe.add_argument("--conjecture", action="store_true", help="scan the all-spin triple product conjecture")
    p_probe.add_argument("--samples", type=int, default=100_000)
    p_probe.add_argument("--restarts", type=int, default=64)
    p_probe.add_argument("--max-iters", type=int, default=2000)
    p_probe.add_argument("--tol", type=float, default=1e-10)
    p_probe.add_argument("--seed", type=int, default=None)
    p_probe.add_argument("--threads", type=int, default=1)
    add_common(p_probe)
    p_probe.set_defaults(func=_cmd_probe)

    p_tri = sub.add_parser("triangle", help="sample the triangle analogs, summary as JSON")
    p_tri.add_argument("--samples", type=int, required=True)
    p_tri.add_argument("--seed", type=int, default=None)
    p_tri.add_argument("--side", type=float, default=1.0)
    add_common(p_tri)
    p_tri.set_defaults(func=_cmd_triangle)

    p_soak = sub.add_parser("soak", help="random-state soak of every qubit relation")
    p_soak.add_argument("--pure", type=int, default=100_000, help="number of Haar-random pure states")
    p_soak.add_argument("--mixed-n", type=int, default=100_000, help="number of Hilbert-Schmidt mixed states")
    p_soak.add_argument("--seed", type=int, default=None)
    p_soak.add_argument("--tolerance", type=float, default=1e-10)
    p_soak.add_argument("--threads", type=int, default=1)
    add_common(p_soak)
    p_soak.set_defaults(func=_cmd_soak)

    return parser


def dispatch(argv: list[str]) -> int:
    """Run one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = list(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def replay(manifest_path: str, emit_override: str | None = None) -> int:
    """Re-dispatch the argv recorded in a run manifest.

    With emit_override the output path is swapped so the original file is
    left untouched; the rerun output is byte-identical to the original.
    """
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    argv = list(manifest["argv"])
    if emit_override is not None:
        if "--emit" not in argv:
            raise ValueError("manifest argv has no --emit to override")
        argv[argv.index("--emit") + 1] = emit_override
    return dispatch(argv)


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Command-line interface.

Subcommands: build, transpile, simulate, expressibility, trainability,
sweep, report.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .ansatz import AnsatzFamily, build_ansatz
from .harness import (
    HEATMAP_METRICS,
    export_heatmap,
    load_records_csv,
    result_from_records,
    run_sweep,
    sweep_config_from_dict,
    write_sweep_output,
)
from .ir import depth, gate_counts, load_circuit, save_circuit
from .metrics import (
    ExpressibilityConfig,
    TrainabilityConfig,
    expressibility_kl,
    gradient_variance,
)
from .sim import BACKEND, expectation_z, simulate
from .target import default_target, load_target
from .transpiler import TranspileOptions, save_transpiled, transpile


def _cmd_build(args) -> int:
    family = AnsatzFamily(args.family)
    circuit = build_ansatz(family, args.qubits, args.reps)
    save_circuit(circuit, args.out)
    counts, two_qubit = gate_counts(circuit)
    print(
        f"{family.value}: n={args.qubits} L={args.reps} "
        f"P={circuit.param_count} depth={depth(circuit)} two_qubit={two_qubit} "
        f"-> {args.out}"
    )
    return 0


def _load_target_arg(path: str | None):
    return default_target() if path is None else load_target(path)


def _cmd_transpile(args) -> int:
    circuit = load_circuit(args.circuit)
    target = _load_target_arg(args.target)
    opts = TranspileOptions(opt_level=args.opt_level, seed=args.seed)
    transpiled = transpile(circuit, target, opts)
    out = Path(args.out)
    sidecar = Path(args.sidecar) if args.sidecar else out.with_suffix(".sidecar.json")
    save_transpiled(transpiled, out, sidecar)
    print(
        f"transpiled: qubits {circuit.num_qubits} -> {transpiled.active_qubit_count}, "
        f"depth {depth(circuit)} -> {depth(transpiled.circuit)}, "
        f"P={transpiled.param_count} -> {out} (+ {sidecar})"
    )
    return 0


def _parse_theta(raw: str | None, param_count: int) -> np.ndarray:
    if not raw:
        return np.zeros(param_count)
    values = np.array([float(v) for v in raw.split(",") if v != ""])
    return values


def _cmd_simulate(args) -> int:
    circuit = load_circuit(args.circuit)
    theta = _parse_theta(args.theta, circuit.param_count)
    state = simulate(circuit, theta)
    if args.dump_state:
        for amp in state.amplitudes:
            print(f"{amp.real!r} {amp.imag!r}")
    else:
        print(f"<Z_{args.wire}> = {expectation_z(state, args.wire)!r}")
    return 0


def _cmd_expressibility(args) -> int:
    circuit = load_circuit(args.circuit)
    cfg = ExpressibilityConfig(
        n_pairs=args.pairs,
        bins=args.bins,
        epsilon=args.epsilon,
        seed=args.seed,
        haar_dimension_qubits=args.haar_qubits,
    )
    value = expressibility_kl(circuit, cfg)
    print(f"expressibility_kl = {value!r}")
    print(json.dumps({
        "n_pairs": cfg.n_pairs,
        "bins": cfg.bins,
        "epsilon": cfg.epsilon,
        "seed": cfg.seed,
        "haar_dimension_qubits": cfg.haar_dimension_qubits or circuit.num_qubits,
        "kl_log_base": "e",
        "backend": BACKEND,
        "tool_version": __version__,
    }))
    return 0


def _cmd_trainability(args) -> int:
    circuit = load_circuit(args.circuit)
    cfg = TrainabilityConfig(n_grad=args.samples, seed=args.seed)
    value = gradient_variance(circuit, cfg, wire=args.wire)
    print(f"gradient_variance = {value!r}")
    print(json.dumps({
        "n_grad": cfg.n_grad,
        "seed": cfg.seed,
        "wire": args.wire,
        "backend": BACKEND,
        "tool_version": __version__,
    }))
    return 0


def _cmd_sweep(args) -> int:
    with open(args.config) as f:
        cfg = sweep_config_from_dict(json.load(f))
    result = run_sweep(cfg, workers=args.workers)
    out_dir = args.out_dir or cfg.output_dir
    write_sweep_output(result, out_dir)
    print(f"sweep: {len(result.records)} records -> {out_dir}")
    if result.failures:
        for key, reason in result.failures:
            print(f"FAILED cell {key}: {reason}", file=sys.stderr)
        return 1
    return 0


def _cmd_report(args) -> int:
    records = load_records_csv(Path(args.results) / "records.csv")
    result = result_from_records(records)
    matrix = export_heatmap(result, args.family, args.opt_level, args.metric)
    slice_records = [r for r in records if r.family == args.family]
    n_values = sorted({r.n for r in slice_records})
    l_values = sorted({r.L for r in slice_records})
    lines = ["n\\L," + ",".join(str(L) for L in l_values)]
    for i, n in enumerate(n_values):
        lines.append(str(n) + "," + ",".join(str(v) for v in matrix[i]))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqclab",
        description="Build, transpile, and analyze parameterized quantum circuits.",
    )
    parser.add_argument("--version", action="version", version=f"pqclab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit an ansatz circuit file")
    p.add_argument("--family", required=True, choices=[f.value for f in AnsatzFamily])
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("transpile", help="compile a circuit against a target")
    p.add_argument("--circuit", required=True)
    p.add_argument("--target", default=None, help="coupling-map JSON (default: packaged 65q heavy-hex)")
    p.add_argument("--opt-level", type=int, choices=(0, 1, 2, 3), default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--sidecar", default=None)
    p.set_defaults(func=_cmd_transpile)

    p = sub.add_parser("simulate", help="statevector-simulate a circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--theta", default=None, help="comma-separated parameter values")
    p.add_argument("--wire", type=int, default=0)
    p.add_argument("--dump-state", action="store_true",
                   help="emit amplitudes as (real, imag) pairs in index order")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("expressibility", help="single-circuit KL-vs-Haar metric")
    p.add_argument("--circuit", required=True)
    p.add_argument("--pairs", type=int, default=2000)
    p.add_argument("--bins", type=int, default=75)
    p.add_argument("--epsilon", type=float, default=1e-12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--haar-qubits", type=int, default=None)
    p.set_defaults(func=_cmd_expressibility)

    p = sub.add_parser("trainability", help="single-circuit gradient-variance metric")
    p.add_argument("--circuit", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wire", type=int, default=0)
    p.set_defaults(func=_cmd_trainability)

    p = sub.add_parser("sweep", help="run the full metric grid from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="emit a heatmap matrix as CSV")
    p.add_argument("--results", required=True, help="sweep output directory")
    p.add_argument("--metric", required=True, choices=HEATMAP_METRICS)
    p.add_argument("--family", required=True)
    p.add_argument("--opt-level", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

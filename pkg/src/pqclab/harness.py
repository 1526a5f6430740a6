"""Sweep orchestration: deterministic seeding, aggregation, persistence.

Every random stream in a sweep derives from base_seed through a stable
64-bit hash of the cell coordinates, so a sweep is a pure function of its
config: rerunning produces byte-identical CSV. By default the transpile
seed is fixed per (family, n, L, opt) while sampler seeds vary per run;
the logical and transpiled metrics of one record always share sampler
seeds so their overheads are paired comparisons.
"""
from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .ansatz import AnsatzFamily, build_ansatz
from .ir import depth
from .metrics import (
    CircuitMetrics,
    ExpressibilityConfig,
    TrainabilityConfig,
    expressibility_kl,
    gradient_variance,
    overheads,
)
from .target import Target, default_target, load_target
from .transpiler import TranspileOptions, output_wire_of, transpile

__all__ = [
    "SweepConfig",
    "MetricRecord",
    "SweepResult",
    "derive_seed",
    "run_sweep",
    "export_heatmap",
    "records_csv",
    "write_sweep_output",
    "load_records_csv",
    "sweep_config_from_dict",
]

CSV_HEADER = (
    "family,n,L,opt_level,run,e_kl_logical,e_kl_transpiled,delta_e_kl,"
    "gradvar_logical,gradvar_transpiled,delta_gradvar,"
    "depth_logical,depth_transpiled,qubits_transpiled"
)

HEATMAP_METRICS = ("delta_e_kl", "delta_gradvar", "depth_overhead", "qubit_overhead")


def derive_seed(base_seed: int, *parts) -> int:
    """Stable 64-bit seed from base_seed and the given coordinate parts.

    blake2b over the decimal/string renderings joined by unit separators;
    documented so independent implementations can reproduce the streams.
    """
    h = hashlib.blake2b(digest_size=8)
    for part in (base_seed, *parts):
        h.update(str(part).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big")


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[str, ...] = tuple(f.value for f in AnsatzFamily)
    n_values: tuple[int, ...] = (2, 4, 6, 8, 10)
    l_values: tuple[int, ...] = (2, 4, 6, 8, 10)
    opt_levels: tuple[int, ...] = (0, 1, 2, 3)
    runs: int = 5
    base_seed: int = 0
    n_pairs: int = 2000
    bins: int = 75
    epsilon: float = 1e-12
    n_grad: int = 100
    target_path: str | None = None  # None: packaged 65-qubit heavy-hex device
    wire_mode: str = "tracked"
    output_dir: str = "sweep_out"
    vary_transpile_seed: bool = False

    def __post_init__(self):
        if not (self.families and self.n_values and self.l_values and self.opt_levels):
            raise ValueError("families, n_values, l_values, opt_levels must be nonempty")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        for name in self.families:
            AnsatzFamily(name)
        for lvl in self.opt_levels:
            if lvl not in (0, 1, 2, 3):
                raise ValueError(f"opt level {lvl} out of range")
        if self.wire_mode not in ("tracked", "raw_zero"):
            raise ValueError(f"unknown wire mode {self.wire_mode!r}")

    def load_target(self) -> Target:
        if self.target_path is None:
            return default_target()
        return load_target(self.target_path)

    def to_dict(self) -> dict:
        return {
            "families": list(self.families),
            "n_values": list(self.n_values),
            "l_values": list(self.l_values),
            "opt_levels": list(self.opt_levels),
            "runs": self.runs,
            "base_seed": self.base_seed,
            "expressibility": {
                "n_pairs": self.n_pairs,
                "bins": self.bins,
                "epsilon": self.epsilon,
            },
            "trainability": {"n_grad": self.n_grad},
            "target_path": self.target_path,
            "wire_mode": self.wire_mode,
            "output_dir": self.output_dir,
            "vary_transpile_seed": self.vary_transpile_seed,
        }


def sweep_config_from_dict(data: dict) -> SweepConfig:
    expr = data.get("expressibility", {})
    train = data.get("trainability", {})
    kwargs = dict(
        families=tuple(data.get("families", tuple(f.value for f in AnsatzFamily))),
        n_values=tuple(data.get("n_values", (2, 4, 6, 8, 10))),
        l_values=tuple(data.get("l_values", (2, 4, 6, 8, 10))),
        opt_levels=tuple(data.get("opt_levels", (0, 1, 2, 3))),
        runs=data.get("runs", 5),
        base_seed=data.get("base_seed", 0),
        n_pairs=expr.get("n_pairs", 2000),
        bins=expr.get("bins", 75),
        epsilon=expr.get("epsilon", 1e-12),
        n_grad=train.get("n_grad", 100),
        target_path=data.get("target_path"),
        wire_mode=data.get("wire_mode", "tracked"),
        output_dir=data.get("output_dir", "sweep_out"),
        vary_transpile_seed=data.get("vary_transpile_seed", False),
    )
    return SweepConfig(**kwargs)


_FLOAT_FIELDS = (
    "e_kl_logical", "e_kl_transpiled", "delta_e_kl",
    "gradvar_logical", "gradvar_transpiled", "delta_gradvar",
    "depth_logical", "depth_transpiled", "qubits_transpiled",
)


@dataclass(frozen=True)
class MetricRecord:
    family: str
    n: int
    L: int
    opt_level: int
    run: int
    e_kl_logical: float
    e_kl_transpiled: float
    delta_e_kl: float
    gradvar_logical: float
    gradvar_transpiled: float
    delta_gradvar: float
    depth_logical: int
    depth_transpiled: int
    qubits_transpiled: int

    def csv_row(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.family, self.n, self.L, self.opt_level, self.run,
                self.e_kl_logical, self.e_kl_transpiled, self.delta_e_kl,
                self.gradvar_logical, self.gradvar_transpiled, self.delta_gradvar,
                self.depth_logical, self.depth_transpiled, self.qubits_transpiled,
            )
        )


@dataclass
class SweepResult:
    records: list[MetricRecord]
    cell_means: dict[tuple[str, int, int, int], dict[str, float]]
    failures: list[tuple[tuple, str]]
    metadata: dict = field(default_factory=dict)


def _evaluate_cell(cfg: SweepConfig, target: Target, family: str, n: int, L: int):
    """All records for one (family, n, L) across opt levels and runs."""
    records: list[MetricRecord] = []
    failures: list[tuple[tuple, str]] = []
    circuit = build_ansatz(AnsatzFamily(family), n, L)
    depth_logical = depth(circuit)
    for opt in cfg.opt_levels:
        for run in range(cfg.runs):
            key = (family, n, L, opt, run)
            try:
                tp_parts = [family, n, L, opt, "transpile"]
                if cfg.vary_transpile_seed:
                    tp_parts.append(run)
                tseed = derive_seed(cfg.base_seed, *tp_parts)
                transpiled = transpile(
                    circuit, target, TranspileOptions(opt_level=opt, seed=tseed)
                )
                eseed = derive_seed(cfg.base_seed, family, n, L, opt, run, "expressibility")
                gseed = derive_seed(cfg.base_seed, family, n, L, opt, run, "trainability")
                e_cfg = ExpressibilityConfig(
                    n_pairs=cfg.n_pairs, bins=cfg.bins, epsilon=cfg.epsilon, seed=eseed
                )
                t_cfg = TrainabilityConfig(
                    n_grad=cfg.n_grad, seed=gseed, observable_wire_mode=cfg.wire_mode
                )
                wire = output_wire_of(transpiled, 0) if cfg.wire_mode == "tracked" else 0
                logical = CircuitMetrics(
                    e_kl=expressibility_kl(circuit, e_cfg),
                    gradvar=gradient_variance(circuit, t_cfg, wire=0),
                    expressibility=e_cfg,
                    trainability=t_cfg,
                )
                trans = CircuitMetrics(
                    e_kl=expressibility_kl(transpiled.circuit, e_cfg),
                    gradvar=gradient_variance(transpiled.circuit, t_cfg, wire=wire),
                    expressibility=e_cfg,
                    trainability=t_cfg,
                )
                d_ekl, d_gv = overheads(logical, trans)
                records.append(MetricRecord(
                    family=family, n=n, L=L, opt_level=opt, run=run,
                    e_kl_logical=logical.e_kl, e_kl_transpiled=trans.e_kl,
                    delta_e_kl=d_ekl,
                    gradvar_logical=logical.gradvar, gradvar_transpiled=trans.gradvar,
                    delta_gradvar=d_gv,
                    depth_logical=depth_logical,
                    depth_transpiled=depth(transpiled.circuit),
                    qubits_transpiled=transpiled.active_qubit_count,
                ))
            except Exception as exc:  # noqa: BLE001 - cell failures must not abort the sweep
                failures.append((key, f"{type(exc).__name__}: {exc}"))
    return records, failures


def _cell_worker(args):
    cfg, family, n, L = args
    target = cfg.load_target()
    return _evaluate_cell(cfg, target, family, n, L)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    start = time.monotonic()
    cells = [(f, n, L) for f in cfg.families for n in cfg.n_values for L in cfg.l_values]
    records: list[MetricRecord] = []
    failures: list[tuple[tuple, str]] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for recs, fails in pool.map(
                _cell_worker, [(cfg, f, n, L) for f, n, L in cells]
            ):
                records.extend(recs)
                failures.extend(fails)
    else:
        target = cfg.load_target()
        for family, n, L in cells:
            recs, fails = _evaluate_cell(cfg, target, family, n, L)
            records.extend(recs)
            failures.extend(fails)

    family_order = {f: i for i, f in enumerate(cfg.families)}
    records.sort(key=lambda r: (family_order[r.family], r.n, r.L, r.opt_level, r.run))

    means: dict[tuple[str, int, int, int], dict[str, float]] = {}
    groups: dict[tuple[str, int, int, int], list[MetricRecord]] = {}
    for r in records:
        groups.setdefault((r.family, r.n, r.L, r.opt_level), []).append(r)
    for cell_key, group in groups.items():
        means[cell_key] = {
            name: float(np.mean([getattr(r, name) for r in group]))
            for name in _FLOAT_FIELDS
        }

    metadata = {
        "config": cfg.to_dict(),
        "tool_version": __version__,
        "kl_log_base": "e",
        "wall_clock_seconds": time.monotonic() - start,
        "failures": [{"cell": list(key), "reason": reason} for key, reason in failures],
    }
    return SweepResult(records, means, failures, metadata)


def records_csv(records: list[MetricRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in records)
    return "\n".join(lines) + "\n"


def write_sweep_output(result: SweepResult, output_dir) -> None:
    from pathlib import Path

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "records.csv").write_text(records_csv(result.records))
    mean_lines = [CSV_HEADER.replace(",run,", ",")]
    for (family, n, L, opt), vals in sorted(
        result.cell_means.items(),
        key=lambda kv: (kv[0][0], kv[0][1], kv[0][2], kv[0][3]),
    ):
        row = [family, str(n), str(L), str(opt)]
        row.extend(str(vals[name]) for name in _FLOAT_FIELDS)
        mean_lines.append(",".join(row))
    (out / "means.csv").write_text("\n".join(mean_lines) + "\n")
    (out / "metadata.json").write_text(json.dumps(result.metadata, indent=1) + "\n")


def load_records_csv(path) -> list[MetricRecord]:
    with open(path) as f:
        lines = [ln for ln in f.read().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected records CSV header in {path}")
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        records.append(MetricRecord(
            family=parts[0], n=int(parts[1]), L=int(parts[2]),
            opt_level=int(parts[3]), run=int(parts[4]),
            e_kl_logical=float(parts[5]), e_kl_transpiled=float(parts[6]),
            delta_e_kl=float(parts[7]),
            gradvar_logical=float(parts[8]), gradvar_transpiled=float(parts[9]),
            delta_gradvar=float(parts[10]),
            depth_logical=int(parts[11]), depth_transpiled=int(parts[12]),
            qubits_transpiled=int(parts[13]),
        ))
    return records


def export_heatmap(
    result: SweepResult, family: str, opt_level: int, metric: str
) -> np.ndarray:
    """Per-cell mean matrix, rows by n ascending, columns by L ascending."""
    if metric not in HEATMAP_METRICS:
        raise ValueError(f"metric must be one of {HEATMAP_METRICS}, got {metric!r}")
    keys = [k for k in result.cell_means if k[0] == family and k[3] == opt_level]
    if not keys:
        raise ValueError(f"no sweep slice for family={family!r} opt_level={opt_level}")
    n_values = sorted({k[1] for k in keys})
    l_values = sorted({k[2] for k in keys})
    matrix = np.empty((len(n_values), len(l_values)), dtype=np.float64)
    for i, n in enumerate(n_values):
        for j, L in enumerate(l_values):
            key = (family, n, L, opt_level)
            if key not in result.cell_means:
                raise ValueError(f"missing sweep cell {key}")
            vals = result.cell_means[key]
            if metric == "delta_e_kl":
                matrix[i, j] = vals["delta_e_kl"]
            elif metric == "delta_gradvar":
                matrix[i, j] = vals["delta_gradvar"]
            elif metric == "depth_overhead":
                matrix[i, j] = vals["depth_transpiled"] - vals["depth_logical"]
            else:
                matrix[i, j] = vals["qubits_transpiled"] - n
    return matrix


def result_from_records(records: list[MetricRecord]) -> SweepResult:
    """Rebuild means from a records list (used by the report command)."""
    means: dict[tuple[str, int, int, int], dict[str, float]] = {}
    groups: dict[tuple[str, int, int, int], list[MetricRecord]] = {}
    for r in records:
        groups.setdefault((r.family, r.n, r.L, r.opt_level), []).append(r)
    for key, group in groups.items():
        means[key] = {
            name: float(np.mean([getattr(r, name) for r in group]))
            for name in _FLOAT_FIELDS
        }
    return SweepResult(records, means, [], {})

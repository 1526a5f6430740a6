"""End-to-end hardware-aware compilation with full layout/permutation tracking."""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..ir import Circuit, GateKind
from ..target import Target
from .basis import translate_to_basis
from .layout import Layout, sabre_layout, trivial_layout
from .optimize import compact_qubits, optimize
from .routing import sabre_route

__all__ = [
    "TranspileOptions",
    "TranspiledCircuit",
    "transpile",
    "output_wire_of",
    "sidecar_to_dict",
    "save_transpiled",
]

_TRIALS_BY_LEVEL = {0: 1, 1: 1, 2: 5, 3: 10}


@dataclass(frozen=True)
class TranspileOptions:
    opt_level: int = 1
    seed: int = 0
    routing_trials: int | None = None

    def __post_init__(self):
        if self.opt_level not in (0, 1, 2, 3):
            raise ValueError(f"opt_level must be in 0..3, got {self.opt_level}")
        if self.routing_trials is not None and self.routing_trials < 1:
            raise ValueError("routing_trials must be >= 1")

    @property
    def trials(self) -> int:
        return self.routing_trials or _TRIALS_BY_LEVEL[self.opt_level]


@dataclass(frozen=True)
class TranspiledCircuit:
    """Native-basis physical circuit plus the bookkeeping to interpret it.

    output_permutation is the pre-compaction physical->physical relabeling
    accumulated from routing SWAPs; compaction_map sends pre-compaction
    indices to the final compacted ones.
    """

    circuit: Circuit
    initial_layout: Layout
    output_permutation: tuple[int, ...]
    compaction_map: dict[int, int]
    active_qubit_count: int
    param_count: int


def _two_qubit_weight(circuit: Circuit) -> int:
    # SWAPs expand to 3 CX during basis translation.
    total = 0
    for ins in circuit.instructions:
        if ins.kind is GateKind.SWAP:
            total += 3
        elif ins.kind.num_qubits == 2:
            total += 1
    return total


def transpile(logical: Circuit, target: Target, opts: TranspileOptions) -> TranspiledCircuit:
    if logical.num_qubits > target.num_qubits:
        raise ValueError(
            f"circuit needs {logical.num_qubits} qubits, "
            f"target has only {target.num_qubits}"
        )
    level = opts.opt_level
    best = None
    for trial in range(opts.trials):
        trial_seed = opts.seed ^ trial
        if level == 0:
            layout = trivial_layout(logical, target)
        else:
            layout = sabre_layout(logical, target, trial_seed)
        routed, permutation = sabre_route(logical, target, layout, trial_seed)
        weight = _two_qubit_weight(routed)
        if best is None or weight < best[0]:
            best = (weight, layout, routed, permutation)
    _, layout, routed, permutation = best

    native = translate_to_basis(routed)
    optimized = optimize(native, level)
    compacted, compaction_map = compact_qubits(optimized)
    return TranspiledCircuit(
        circuit=compacted,
        initial_layout=layout,
        output_permutation=permutation,
        compaction_map=compaction_map,
        active_qubit_count=compacted.num_qubits,
        param_count=logical.param_count,
    )


def output_wire_of(transpiled: TranspiledCircuit, logical_wire: int) -> int:
    """Compacted wire carrying logical_wire's state at the end of the circuit."""
    n = len(transpiled.initial_layout.logical_to_physical)
    if not 0 <= logical_wire < n:
        raise ValueError(f"logical wire {logical_wire} out of range for {n} qubits")
    physical = transpiled.initial_layout.physical(logical_wire)
    routed = transpiled.output_permutation[physical]
    if routed not in transpiled.compaction_map:
        raise ValueError(
            f"wire {routed} carrying logical {logical_wire} was compacted away"
        )
    return transpiled.compaction_map[routed]


def sidecar_to_dict(transpiled: TranspiledCircuit) -> dict:
    return {
        "initial_layout": list(transpiled.initial_layout.logical_to_physical),
        "output_permutation": list(transpiled.output_permutation),
        "compaction_map": [[old, new] for old, new in sorted(transpiled.compaction_map.items())],
        "active_qubits": transpiled.active_qubit_count,
    }


def save_transpiled(transpiled: TranspiledCircuit, circuit_path, sidecar_path) -> None:
    from ..ir import save_circuit

    save_circuit(transpiled.circuit, circuit_path)
    with open(sidecar_path, "w") as f:
        json.dump(sidecar_to_dict(transpiled), f, indent=1)
        f.write("\n")

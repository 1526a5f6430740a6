"""Parameterized-circuit intermediate representation.

Gate angles are affine expressions c0 + sum(c_k * theta_k) rather than bare
floats, so that basis translation (which shifts angles by constants) and
peephole optimization (which merges rotations by adding expressions) never
lose track of trainable parameters. Angles are radians; no 2*pi normalization
happens at this level.

Circuits are immutable after construction and safe to share across threads.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "CircuitError",
    "ParamExpr",
    "GateKind",
    "Instruction",
    "Circuit",
    "depth",
    "bind",
    "gate_counts",
    "active_qubits",
    "circuit_to_dict",
    "circuit_from_dict",
    "save_circuit",
    "load_circuit",
]

SERIALIZATION_VERSION = 1


class CircuitError(ValueError):
    """Raised on structural violations: bad wire index, arity mismatch, ..."""


@dataclass(frozen=True)
class ParamExpr:
    """Affine angle expression: constant + sum(coeff * theta[index]).

    Terms are kept sorted by parameter index; indices are unique and
    coefficients nonzero.
    """

    constant: float = 0.0
    terms: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        canon = tuple(sorted((int(i), float(c)) for i, c in self.terms))
        object.__setattr__(self, "constant", float(self.constant))
        object.__setattr__(self, "terms", canon)
        indices = [i for i, _ in canon]
        if len(set(indices)) != len(indices):
            raise CircuitError(f"duplicate parameter index in terms {canon}")
        if any(i < 0 for i in indices):
            raise CircuitError(f"negative parameter index in terms {canon}")
        if any(c == 0.0 for _, c in canon):
            raise CircuitError(f"zero coefficient in terms {canon}")

    @staticmethod
    def parameter(index: int, coeff: float = 1.0) -> ParamExpr:
        return ParamExpr(0.0, ((index, coeff),))

    @staticmethod
    def const(value: float) -> ParamExpr:
        return ParamExpr(float(value), ())

    def shifted(self, delta: float) -> ParamExpr:
        """Same expression with the constant offset shifted by delta."""
        return ParamExpr(self.constant + delta, self.terms)

    def __add__(self, other: ParamExpr) -> ParamExpr:
        acc = dict(self.terms)
        for i, c in other.terms:
            acc[i] = acc.get(i, 0.0) + c
        merged = tuple((i, c) for i, c in sorted(acc.items()) if c != 0.0)
        return ParamExpr(self.constant + other.constant, merged)

    def evaluate(self, theta) -> float:
        return self.constant + sum(c * theta[i] for i, c in self.terms)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms


class GateKind(Enum):
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    SX = "SX"
    X = "X"
    H = "H"
    CX = "CX"
    CZ = "CZ"
    SWAP = "SWAP"

    @property
    def num_qubits(self) -> int:
        return 2 if self in (GateKind.CX, GateKind.CZ, GateKind.SWAP) else 1

    @property
    def num_params(self) -> int:
        return 1 if self in (GateKind.RX, GateKind.RY, GateKind.RZ) else 0


NATIVE_BASIS = frozenset({GateKind.CX, GateKind.RZ, GateKind.SX, GateKind.X})


@dataclass(frozen=True)
class Instruction:
    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[ParamExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"repeated qubit in {self.kind.value}{self.qubits}")
        if len(self.qubits) != self.kind.num_qubits:
            raise CircuitError(
                f"{self.kind.value} expects {self.kind.num_qubits} qubits, got {self.qubits}"
            )
        if len(self.params) != self.kind.num_params:
            raise CircuitError(
                f"{self.kind.value} expects {self.kind.num_params} params, got {len(self.params)}"
            )

    @property
    def param_indices(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for p in self.params:
            out |= p.indices
        return out


def _as_expr(angle: ParamExpr | float) -> ParamExpr:
    return angle if isinstance(angle, ParamExpr) else ParamExpr.const(angle)


def rx(qubit: int, angle: ParamExpr | float) -> Instruction:
    return Instruction(GateKind.RX, (qubit,), (_as_expr(angle),))


def ry(qubit: int, angle: ParamExpr | float) -> Instruction:
    return Instruction(GateKind.RY, (qubit,), (_as_expr(angle),))


def rz(qubit: int, angle: ParamExpr | float) -> Instruction:
    return Instruction(GateKind.RZ, (qubit,), (_as_expr(angle),))


def sx(qubit: int) -> Instruction:
    return Instruction(GateKind.SX, (qubit,))


def x(qubit: int) -> Instruction:
    return Instruction(GateKind.X, (qubit,))


def h(qubit: int) -> Instruction:
    return Instruction(GateKind.H, (qubit,))


def cx(control: int, target: int) -> Instruction:
    return Instruction(GateKind.CX, (control, target))


def cz(a: int, b: int) -> Instruction:
    return Instruction(GateKind.CZ, (a, b))


def swap(a: int, b: int) -> Instruction:
    return Instruction(GateKind.SWAP, (a, b))


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list over num_qubits wires with param_count free angles.

    Every parameter index in [0, param_count) must appear in at least one
    instruction; this is what lets the transpiler guarantee that compilation
    never drops a trainable parameter.
    """

    num_qubits: int
    instructions: tuple[Instruction, ...]
    param_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if self.num_qubits < 0:
            raise CircuitError("negative circuit width")
        if self.param_count < 0:
            raise CircuitError("negative param count")
        used: set[int] = set()
        for ins in self.instructions:
            for q in ins.qubits:
                if not 0 <= q < self.num_qubits:
                    raise CircuitError(
                        f"qubit {q} out of range for width {self.num_qubits}"
                    )
            used |= ins.param_indices
        if used and max(used) >= self.param_count:
            raise CircuitError(
                f"parameter index {max(used)} >= param_count {self.param_count}"
            )
        if used != set(range(self.param_count)):
            missing = sorted(set(range(self.param_count)) - used)
            raise CircuitError(f"dead parameter indices {missing}")


def depth(circuit: Circuit) -> int:
    """Longest chain of instructions sharing qubits; every gate weighs 1."""
    level = [0] * circuit.num_qubits
    best = 0
    for ins in circuit.instructions:
        d = 1 + max(level[q] for q in ins.qubits)
        for q in ins.qubits:
            level[q] = d
        best = max(best, d)
    return best


def bind(circuit: Circuit, theta) -> Circuit:
    """Evaluate every angle expression at theta; structure otherwise identical."""
    if len(theta) != circuit.param_count:
        raise CircuitError(
            f"binding arity mismatch: {len(theta)} values for {circuit.param_count} parameters"
        )
    out = []
    for ins in circuit.instructions:
        if ins.params:
            vals = tuple(ParamExpr.const(p.evaluate(theta)) for p in ins.params)
            out.append(Instruction(ins.kind, ins.qubits, vals))
        else:
            out.append(ins)
    return Circuit(circuit.num_qubits, tuple(out), 0)


def gate_counts(circuit: Circuit) -> tuple[dict[GateKind, int], int]:
    """Multiset counts by kind plus the total two-qubit gate count."""
    counts: dict[GateKind, int] = {}
    two_qubit = 0
    for ins in circuit.instructions:
        counts[ins.kind] = counts.get(ins.kind, 0) + 1
        if ins.kind.num_qubits == 2:
            two_qubit += 1
    return counts, two_qubit


def active_qubits(circuit: Circuit) -> set[int]:
    """Wires touched by at least one instruction."""
    out: set[int] = set()
    for ins in circuit.instructions:
        out.update(ins.qubits)
    return out


# Serialization: versioned JSON, lossless for all fields.

def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "version": SERIALIZATION_VERSION,
        "num_qubits": circuit.num_qubits,
        "param_count": circuit.param_count,
        "instructions": [
            {
                "kind": ins.kind.value,
                "qubits": list(ins.qubits),
                "params": [
                    {"constant": p.constant, "terms": [[i, c] for i, c in p.terms]}
                    for p in ins.params
                ],
            }
            for ins in circuit.instructions
        ],
    }


def circuit_from_dict(data: dict) -> Circuit:
    if data.get("version") != SERIALIZATION_VERSION:
        raise CircuitError(f"unsupported circuit format version {data.get('version')!r}")
    instrs = []
    for entry in data["instructions"]:
        params = tuple(
            ParamExpr(p["constant"], tuple((i, c) for i, c in p["terms"]))
            for p in entry["params"]
        )
        instrs.append(Instruction(GateKind(entry["kind"]), tuple(entry["qubits"]), params))
    return Circuit(data["num_qubits"], tuple(instrs), data["param_count"])


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w") as f:
        json.dump(circuit_to_dict(circuit), f, indent=1)
        f.write("\n")


def load_circuit(path) -> Circuit:
    with open(path) as f:
        return circuit_from_dict(json.load(f))

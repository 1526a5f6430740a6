"""Dense statevector simulation, expectation values, and state fidelity.

Backend selection: the PQCLAB_BACKEND environment variable picks "numba"
(default when importable) or "numpy". Both backends produce the same
amplitudes for the same program; the choice is purely about speed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .program import CompiledProgram, compile_program
from ..ir import Circuit, CircuitError

__all__ = [
    "BACKEND",
    "Statevector",
    "simulate",
    "run_compiled",
    "run_with_angles",
    "compile_program",
    "fidelity",
    "expectation_z",
    "embed_state",
    "apply_wire_permutation",
]

MAX_QUBITS = 20
_NORM_TOL = 1e-10


def _select_backend() -> tuple[str, object]:
    requested = os.environ.get("PQCLAB_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise RuntimeError(
            f"PQCLAB_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested != "numpy":
        try:
            from . import kernels_numba
            return "numba", kernels_numba.run_program
        except ImportError:
            if requested == "numba":
                raise
    from . import kernels_numpy
    return "numpy", kernels_numpy.run_program


BACKEND, _run_program = _select_backend()


@dataclass(frozen=True)
class Statevector:
    """Complex amplitude vector of unit norm; qubit 0 is the LSB of the index."""

    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"amplitude vector of length {self.amplitudes.shape} "
                f"does not match {self.num_qubits} qubits"
            )
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"statevector norm drifted: |psi|^2 = {norm!r}")


def run_with_angles(program: CompiledProgram, angles: np.ndarray) -> np.ndarray:
    """Raw amplitude vector for explicit per-gate angles (parameter-shift path)."""
    return _run_program(
        program.num_qubits, program.kinds, program.qubits0, program.qubits1, angles
    )


def run_compiled(program: CompiledProgram, theta=()) -> np.ndarray:
    """Raw amplitude vector for one parameter binding of a compiled program."""
    return run_with_angles(program, program.angles(theta))


def simulate(circuit: Circuit, theta=()) -> Statevector:
    """Apply every bound instruction to |0...0> in order."""
    if circuit.num_qubits > MAX_QUBITS:
        raise CircuitError(
            f"simulation capped at {MAX_QUBITS} qubits, circuit has {circuit.num_qubits}"
        )
    program = compile_program(circuit)
    return Statevector(run_compiled(program, theta), circuit.num_qubits)


def fidelity(a: Statevector, b: Statevector) -> float:
    """|<a|b>|^2; symmetric and invariant under global phase."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"fidelity of {a.num_qubits}- and {b.num_qubits}-qubit states"
        )
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def expectation_z(state: Statevector, wire: int) -> float:
    """<Z_wire> = sum over basis states of (+1/-1 by wire bit) * |amplitude|^2."""
    if not 0 <= wire < state.num_qubits:
        raise ValueError(f"wire {wire} out of range for {state.num_qubits} qubits")
    probs = np.abs(state.amplitudes) ** 2
    bits = (np.arange(probs.shape[0]) >> wire) & 1
    return float(np.sum(probs * (1 - 2 * bits)))


def embed_state(state: Statevector, num_qubits_out: int, wire_map) -> Statevector:
    """Relocate wires into a num_qubits_out register; unmapped wires are |0>.

    wire_map[i] gives the destination wire of source wire i; destinations must
    be distinct. Used to compare transpiled states against logical ones after
    layout, routing permutation, and compaction.
    """
    dest = [int(wire_map[i]) for i in range(state.num_qubits)]
    if len(set(dest)) != len(dest):
        raise ValueError(f"wire map is not injective: {dest}")
    if dest and (min(dest) < 0 or max(dest) >= num_qubits_out):
        raise ValueError(f"wire map {dest} out of range for width {num_qubits_out}")
    src_idx = np.arange(1 << state.num_qubits)
    out_idx = np.zeros_like(src_idx)
    for i, w in enumerate(dest):
        out_idx |= ((src_idx >> i) & 1) << w
    amps = np.zeros(1 << num_qubits_out, dtype=np.complex128)
    amps[out_idx] = state.amplitudes
    return Statevector(amps, num_qubits_out)


def apply_wire_permutation(state: Statevector, permutation) -> Statevector:
    """Relabel wires: the content of wire w moves to wire permutation[w]."""
    return embed_state(state, state.num_qubits, permutation)

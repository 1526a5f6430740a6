"""Lowering of circuits to flat arrays consumed by the gate kernels.

A compiled program keeps the affine angle structure as a dense coefficient
matrix, so evaluating a new parameter vector is one matvec instead of a
Python walk over instructions. Both kernel backends consume the same layout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ir import Circuit, GateKind

__all__ = ["OP_CODES", "CompiledProgram", "compile_program"]

OP_CODES = {
    GateKind.RX: 0,
    GateKind.RY: 1,
    GateKind.RZ: 2,
    GateKind.SX: 3,
    GateKind.X: 4,
    GateKind.H: 5,
    GateKind.CX: 6,
    GateKind.CZ: 7,
    GateKind.SWAP: 8,
}


@dataclass(frozen=True)
class CompiledProgram:
    num_qubits: int
    param_count: int
    kinds: np.ndarray        # int64[g], OP_CODES values
    qubits0: np.ndarray      # int64[g]
    qubits1: np.ndarray      # int64[g], -1 for single-qubit gates
    base_angles: np.ndarray  # float64[g], constant part of each angle
    coeffs: np.ndarray       # float64[g, P], affine coefficients
    param_rows: np.ndarray   # int64[k], rows whose angle depends on parameters

    def angles(self, theta) -> np.ndarray:
        """Concrete per-gate angles for one parameter vector."""
        theta = np.asarray(theta, dtype=np.float64)
        if theta.shape != (self.param_count,):
            raise ValueError(
                f"expected {self.param_count} parameter values, got shape {theta.shape}"
            )
        if self.param_count == 0 or not self.param_rows.size:
            return self.base_angles.copy()
        return self.base_angles + self.coeffs @ theta


def compile_program(circuit: Circuit) -> CompiledProgram:
    g = len(circuit.instructions)
    kinds = np.empty(g, dtype=np.int64)
    q0 = np.empty(g, dtype=np.int64)
    q1 = np.full(g, -1, dtype=np.int64)
    base = np.zeros(g, dtype=np.float64)
    coeffs = np.zeros((g, circuit.param_count), dtype=np.float64)
    param_rows = []
    for i, ins in enumerate(circuit.instructions):
        kinds[i] = OP_CODES[ins.kind]
        q0[i] = ins.qubits[0]
        if len(ins.qubits) > 1:
            q1[i] = ins.qubits[1]
        if ins.params:
            expr = ins.params[0]
            base[i] = expr.constant
            for idx, c in expr.terms:
                coeffs[i, idx] = c
            if expr.terms:
                param_rows.append(i)
    return CompiledProgram(
        num_qubits=circuit.num_qubits,
        param_count=circuit.param_count,
        kinds=kinds,
        qubits0=q0,
        qubits1=q1,
        base_angles=base,
        coeffs=coeffs,
        param_rows=np.asarray(param_rows, dtype=np.int64),
    )

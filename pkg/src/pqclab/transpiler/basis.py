"""Rewrite of logical gates into the native set {CX, RZ, SX, X}.

Each rule reproduces the source gate's unitary up to global phase (checked
against a dense matrix oracle in the test suite). Angle expressions are only
shifted by constants, so parameter indices and counts are untouched.
"""
from __future__ import annotations

import math

from ..ir import Circuit, CircuitError, GateKind, Instruction, ParamExpr, cx, rz, sx

__all__ = ["translate_to_basis"]

_PI = math.pi
_HALF_PI = math.pi / 2.0


def _h_seq(q: int) -> list[Instruction]:
    # H = RZ(pi/2) . SX . RZ(pi/2) up to global phase; first gate applied first.
    return [rz(q, _HALF_PI), sx(q), rz(q, _HALF_PI)]


def _translate_one(ins: Instruction) -> list[Instruction]:
    kind = ins.kind
    if kind in (GateKind.CX, GateKind.RZ, GateKind.SX, GateKind.X):
        return [ins]
    if kind is GateKind.H:
        return _h_seq(ins.qubits[0])
    if kind is GateKind.RY:
        # RY(e) = RZ(pi) . SX . RZ(e+pi) . SX
        q = ins.qubits[0]
        e = ins.params[0]
        return [sx(q), rz(q, e.shifted(_PI)), sx(q), rz(q, _PI)]
    if kind is GateKind.RX:
        # RX(e) = RZ(pi/2) . SX . RZ(e+pi) . SX . RZ(pi/2)
        q = ins.qubits[0]
        e = ins.params[0]
        return [rz(q, _HALF_PI), sx(q), rz(q, e.shifted(_PI)), sx(q), rz(q, _HALF_PI)]
    if kind is GateKind.CZ:
        a, b = ins.qubits
        return _h_seq(b) + [cx(a, b)] + _h_seq(b)
    if kind is GateKind.SWAP:
        a, b = ins.qubits
        return [cx(a, b), cx(b, a), cx(a, b)]
    raise CircuitError(f"cannot translate gate kind {kind!r}")


def translate_to_basis(circuit: Circuit) -> Circuit:
    out: list[Instruction] = []
    for ins in circuit.instructions:
        out.extend(_translate_one(ins))
    return Circuit(circuit.num_qubits, tuple(out), circuit.param_count)

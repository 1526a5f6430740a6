"""Level-dependent peephole optimization and idle-qubit compaction.

Level 0 is the identity. Level 1 cancels adjacent inverse pairs (CX.CX on
the same ordered pair, X.X, four consecutive SX) and merges adjacent RZ
gates by adding their angle expressions. Level 2 runs level 1 to fixpoint
and adds commutation-aware CX cancellation: a CX pair may be separated by
RZ on its control or by X/SX on its target. Level 3 iterates the level-2
procedure to fixpoint, at most 10 sweeps.

Merging keeps every symbolic term, so the optimizer never drops a trainable
parameter; a merge whose coefficients would cancel an index is skipped.
"""
from __future__ import annotations

from ..ir import Circuit, GateKind, Instruction, rz

__all__ = ["optimize", "compact_qubits"]

MAX_LEVEL3_SWEEPS = 10

_TARGET_COMMUTING = (GateKind.X, GateKind.SX)


def _peephole_pass(instrs: list[Instruction]) -> tuple[list[Instruction], bool]:
    out: list[Instruction | None] = []
    stacks: dict[int, list[int]] = {}
    changed = False

    def _push(ins: Instruction) -> None:
        idx = len(out)
        out.append(ins)
        for q in ins.qubits:
            stacks.setdefault(q, []).append(idx)

    def _top(q: int) -> int | None:
        s = stacks.get(q)
        return s[-1] if s else None

    for ins in instrs:
        if ins.kind is GateKind.CX:
            a, b = ins.qubits
            j = _top(a)
            if j is not None and j == _top(b) and out[j].kind is GateKind.CX \
                    and out[j].qubits == (a, b):
                out[j] = None
                stacks[a].pop()
                stacks[b].pop()
                changed = True
                continue
        elif ins.kind is GateKind.X:
            q = ins.qubits[0]
            j = _top(q)
            if j is not None and out[j].kind is GateKind.X and out[j].qubits == (q,):
                out[j] = None
                stacks[q].pop()
                changed = True
                continue
        elif ins.kind is GateKind.SX:
            q = ins.qubits[0]
            s = stacks.get(q, [])
            if len(s) >= 3 and all(
                out[j].kind is GateKind.SX and out[j].qubits == (q,) for j in s[-3:]
            ):
                for j in s[-3:]:
                    out[j] = None
                del s[-3:]
                changed = True
                continue
        elif ins.kind is GateKind.RZ:
            q = ins.qubits[0]
            j = _top(q)
            if j is not None and out[j].kind is GateKind.RZ and out[j].qubits == (q,):
                merged = out[j].params[0] + ins.params[0]
                if merged.indices == out[j].params[0].indices | ins.params[0].indices:
                    out[j] = None
                    stacks[q].pop()
                    changed = True
                    if merged.is_constant and merged.constant == 0.0:
                        continue
                    _push(rz(q, merged))
                    continue
        _push(ins)

    return [ins for ins in out if ins is not None], changed


def _commuting_cx_pass(instrs: list[Instruction]) -> tuple[list[Instruction], bool]:
    out: list[Instruction | None] = list(instrs)
    changed = False
    for i, first in enumerate(out):
        if first is None or first.kind is not GateKind.CX:
            continue
        a, b = first.qubits
        for j in range(i + 1, len(out)):
            ins = out[j]
            if ins is None:
                continue
            touches_a = a in ins.qubits
            touches_b = b in ins.qubits
            if not touches_a and not touches_b:
                continue
            if ins.kind is GateKind.CX and ins.qubits == (a, b):
                out[i] = None
                out[j] = None
                changed = True
                break
            if touches_a and touches_b:
                break
            if touches_a and not (ins.kind is GateKind.RZ and ins.qubits == (a,)):
                break
            if touches_b and not (
                ins.kind in _TARGET_COMMUTING and ins.qubits == (b,)
            ):
                break
    return [ins for ins in out if ins is not None], changed


def _optimize_level2(instrs: list[Instruction]) -> list[Instruction]:
    while True:
        instrs, changed = _peephole_pass(instrs)
        while changed:
            instrs, changed = _peephole_pass(instrs)
        instrs, changed = _commuting_cx_pass(instrs)
        if not changed:
            return instrs


def optimize(circuit: Circuit, level: int) -> Circuit:
    if level not in (0, 1, 2, 3):
        raise ValueError(f"optimization level must be in 0..3, got {level}")
    if level == 0:
        return circuit
    instrs = list(circuit.instructions)
    if level == 1:
        instrs, _ = _peephole_pass(instrs)
    elif level == 2:
        instrs = _optimize_level2(instrs)
    else:
        for _ in range(MAX_LEVEL3_SWEEPS):
            new = _optimize_level2(instrs)
            if new == instrs:
                break
            instrs = new
    return Circuit(circuit.num_qubits, tuple(instrs), circuit.param_count)


def compact_qubits(circuit: Circuit) -> tuple[Circuit, dict[int, int]]:
    """Drop idle wires and reindex the rest in ascending original order."""
    active = sorted({q for ins in circuit.instructions for q in ins.qubits})
    mapping = {old: new for new, old in enumerate(active)}
    instrs = tuple(
        Instruction(ins.kind, tuple(mapping[q] for q in ins.qubits), ins.params)
        for ins in circuit.instructions
    )
    return Circuit(len(active), instrs, circuit.param_count), mapping

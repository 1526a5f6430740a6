"""Deterministic builders for the six ansatz families.

Each family is a total function (n >= 2, L >= 1) -> Circuit with a
closed-form parameter count. Parameter indices are assigned in program
order starting at 0, so the index set is always exactly {0, ..., P-1}.
"""
from __future__ import annotations

from enum import Enum

from .ir import Circuit, Instruction, ParamExpr, cx, ry, rz

__all__ = ["AnsatzFamily", "build_ansatz", "param_count"]


class AnsatzFamily(Enum):
    EFFICIENT_SU2_FULL = "efficient_su2_full"
    HEA_RING = "hea_ring"
    TTN_TREE = "ttn_tree"
    REAL_AMPLITUDES_LINEAR = "real_amplitudes_linear"
    MPS_BRICK = "mps_brick"
    TWO_LOCAL_RYRZ_LINEAR = "two_local_ryrz_linear"


def _check_domain(n: int, reps: int) -> None:
    if n < 2:
        raise ValueError(f"ansatz needs n >= 2 qubits, got {n}")
    if reps < 1:
        raise ValueError(f"ansatz needs L >= 1 repetitions, got {reps}")


class _Builder:
    """Collects instructions and hands out fresh parameter indices."""

    def __init__(self):
        self.instructions: list[Instruction] = []
        self.next_param = 0

    def fresh(self) -> ParamExpr:
        expr = ParamExpr.parameter(self.next_param)
        self.next_param += 1
        return expr

    def ry_layer(self, n: int) -> None:
        for q in range(n):
            self.instructions.append(ry(q, self.fresh()))

    def rz_layer(self, n: int) -> None:
        for q in range(n):
            self.instructions.append(rz(q, self.fresh()))


def _efficient_su2_full(n: int, reps: int) -> _Builder:
    b = _Builder()
    for _ in range(reps):
        b.ry_layer(n)
        b.rz_layer(n)
        for i in range(n):
            for j in range(i + 1, n):
                b.instructions.append(cx(i, j))
    b.ry_layer(n)
    b.rz_layer(n)
    return b


def _real_amplitudes_linear(n: int, reps: int) -> _Builder:
    b = _Builder()
    for _ in range(reps):
        b.ry_layer(n)
        for i in range(n - 1):
            b.instructions.append(cx(i, i + 1))
    b.ry_layer(n)
    return b


def _two_local_ryrz_linear(n: int, reps: int) -> _Builder:
    b = _Builder()
    for _ in range(reps):
        b.ry_layer(n)
        b.rz_layer(n)
        for i in range(n - 1):
            b.instructions.append(cx(i, i + 1))
    b.ry_layer(n)
    b.rz_layer(n)
    return b


def _hea_ring(n: int, reps: int) -> _Builder:
    # No final rotation layer. The n=2 ring degenerates to a single CX.
    b = _Builder()
    for _ in range(reps):
        b.ry_layer(n)
        b.rz_layer(n)
        if n == 2:
            b.instructions.append(cx(0, 1))
        else:
            for i in range(n):
                b.instructions.append(cx(i, (i + 1) % n))
    return b


def _mps_brick(n: int, reps: int) -> _Builder:
    # Brick layer: blocks on (0,1),(2,3),... then (1,2),(3,4),...;
    # n-1 blocks per repetition.
    b = _Builder()
    for _ in range(reps):
        for start in (0, 1):
            for low in range(start, n - 1, 2):
                high = low + 1
                b.instructions.append(ry(low, b.fresh()))
                b.instructions.append(ry(high, b.fresh()))
                b.instructions.append(cx(low, high))
    return b


def _ttn_tree(n: int, reps: int) -> _Builder:
    # Stage-wise pairwise merges of the surviving-wire list; the low wire of
    # each pair survives, an unpaired trailing wire is promoted unchanged.
    b = _Builder()
    for _ in range(reps):
        survivors = list(range(n))
        while len(survivors) > 1:
            nxt = []
            for k in range(0, len(survivors) - 1, 2):
                low, high = survivors[k], survivors[k + 1]
                b.instructions.append(ry(low, b.fresh()))
                b.instructions.append(ry(high, b.fresh()))
                b.instructions.append(cx(high, low))
                nxt.append(low)
            if len(survivors) % 2 == 1:
                nxt.append(survivors[-1])
            survivors = nxt
    return b


_BUILDERS = {
    AnsatzFamily.EFFICIENT_SU2_FULL: _efficient_su2_full,
    AnsatzFamily.REAL_AMPLITUDES_LINEAR: _real_amplitudes_linear,
    AnsatzFamily.TWO_LOCAL_RYRZ_LINEAR: _two_local_ryrz_linear,
    AnsatzFamily.HEA_RING: _hea_ring,
    AnsatzFamily.MPS_BRICK: _mps_brick,
    AnsatzFamily.TTN_TREE: _ttn_tree,
}


def param_count(family: AnsatzFamily, n: int, reps: int) -> int:
    """Closed-form number of trainable parameters."""
    _check_domain(n, reps)
    if family is AnsatzFamily.EFFICIENT_SU2_FULL:
        return 2 * n * (reps + 1)
    if family is AnsatzFamily.REAL_AMPLITUDES_LINEAR:
        return n * (reps + 1)
    if family is AnsatzFamily.TWO_LOCAL_RYRZ_LINEAR:
        return 2 * n * (reps + 1)
    if family is AnsatzFamily.HEA_RING:
        return 2 * n * reps
    return 2 * (n - 1) * reps  # MPS_BRICK and TTN_TREE


def build_ansatz(family: AnsatzFamily, n: int, reps: int) -> Circuit:
    """Build the canonical circuit for a family; deterministic, no randomness."""
    _check_domain(n, reps)
    b = _BUILDERS[family](n, reps)
    expected = param_count(family, n, reps)
    if b.next_param != expected:
        raise AssertionError(
            f"{family.value}: built {b.next_param} parameters, formula says {expected}"
        )
    return Circuit(n, tuple(b.instructions), b.next_param)

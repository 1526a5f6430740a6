"""Logical-to-physical qubit placement."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ir import Circuit
from ..target import Target

__all__ = ["Layout", "trivial_layout", "sabre_layout"]


@dataclass(frozen=True)
class Layout:
    """Injective map from logical wires to physical wires."""

    logical_to_physical: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "logical_to_physical", tuple(int(p) for p in self.logical_to_physical)
        )
        l2p = self.logical_to_physical
        if len(set(l2p)) != len(l2p) or any(p < 0 for p in l2p):
            raise ValueError(f"layout is not injective: {l2p}")

    @property
    def physical_to_logical(self) -> dict[int, int]:
        return {p: l for l, p in enumerate(self.logical_to_physical)}

    def physical(self, logical: int) -> int:
        return self.logical_to_physical[logical]


def _check_capacity(circuit: Circuit, target: Target) -> None:
    if circuit.num_qubits > target.num_qubits:
        raise ValueError(
            f"circuit needs {circuit.num_qubits} qubits, "
            f"target has only {target.num_qubits}"
        )


def trivial_layout(circuit: Circuit, target: Target) -> Layout:
    """Logical i on physical i."""
    _check_capacity(circuit, target)
    return Layout(tuple(range(circuit.num_qubits)))


def sabre_layout(circuit: Circuit, target: Target, seed: int = 0) -> Layout:
    """Bidirectional SABRE layout: deterministic for a fixed seed.

    Starting from a seeded random injective placement, route the circuit
    forward, then reversed, each pass adopting the previous pass's final
    mapping. The reverse pass's final mapping is the initial layout of the
    concluding forward pass, and is returned; running that forward pass here
    would reproduce exactly what the caller's subsequent sabre_route does.
    """
    from .routing import sabre_route

    _check_capacity(circuit, target)
    rng = np.random.default_rng(seed)
    placement = rng.permutation(target.num_qubits)[: circuit.num_qubits]
    layout = Layout(tuple(int(p) for p in placement))

    reversed_circuit = Circuit(
        circuit.num_qubits, tuple(reversed(circuit.instructions)), circuit.param_count
    )
    for pass_circuit in (circuit, reversed_circuit):
        _, permutation = sabre_route(pass_circuit, target, layout, seed)
        layout = Layout(tuple(permutation[p] for p in layout.logical_to_physical))
    return layout

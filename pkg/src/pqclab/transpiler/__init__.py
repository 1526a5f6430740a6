"""Hardware-aware compilation: basis translation, layout, SABRE routing,
level-dependent optimization, and idle-qubit compaction."""
from .basis import translate_to_basis
from .layout import Layout, sabre_layout, trivial_layout
from .optimize import compact_qubits, optimize
from .pipeline import (
    TranspiledCircuit,
    TranspileOptions,
    output_wire_of,
    save_transpiled,
    sidecar_to_dict,
    transpile,
)
from .routing import sabre_route

__all__ = [
    "Layout",
    "TranspileOptions",
    "TranspiledCircuit",
    "translate_to_basis",
    "trivial_layout",
    "sabre_layout",
    "sabre_route",
    "optimize",
    "compact_qubits",
    "transpile",
    "output_wire_of",
    "sidecar_to_dict",
    "save_transpiled",
]

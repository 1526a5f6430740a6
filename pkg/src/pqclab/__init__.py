"""pqclab: hardware-aware compilation and analysis of parameterized quantum circuits.

Builds layered ansatz circuits, transpiles them against a coupling-map target
(native basis {CX, RZ, SX, X}, SABRE layout/routing, peephole optimization,
idle-qubit compaction), and measures how compilation shifts expressibility
(fidelity-histogram KL divergence vs. Haar) and trainability (parameter-shift
gradient variance).
"""

__version__ = "0.1.0"

from .ansatz import AnsatzFamily, build_ansatz, param_count
from .ir import (
    Circuit,
    CircuitError,
    GateKind,
    Instruction,
    ParamExpr,
    active_qubits,
    bind,
    depth,
    gate_counts,
    load_circuit,
    save_circuit,
)
from .metrics import (
    ExpressibilityConfig,
    TrainabilityConfig,
    expressibility_kl,
    gradient_variance,
    haar_bin_mass,
    kl_divergence,
    overheads,
    parameter_shift_gradient,
)
from .target import CouplingMap, Target, default_target, heavy_hex_map, load_target
from .transpiler import (
    TranspiledCircuit,
    TranspileOptions,
    output_wire_of,
    transpile,
)

__all__ = [
    "__version__",
    "AnsatzFamily",
    "build_ansatz",
    "param_count",
    "Circuit",
    "CircuitError",
    "GateKind",
    "Instruction",
    "ParamExpr",
    "active_qubits",
    "bind",
    "depth",
    "gate_counts",
    "load_circuit",
    "save_circuit",
    "ExpressibilityConfig",
    "TrainabilityConfig",
    "expressibility_kl",
    "gradient_variance",
    "haar_bin_mass",
    "kl_divergence",
    "overheads",
    "parameter_shift_gradient",
    "CouplingMap",
    "Target",
    "default_target",
    "heavy_hex_map",
    "load_target",
    "TranspiledCircuit",
    "TranspileOptions",
    "output_wire_of",
    "transpile",
]

"""Expressibility and trainability estimators plus overhead computation.

Expressibility: draw parameter pairs uniformly from [0, 2pi)^P, histogram the
pairwise state fidelities on [0, 1], and return the KL divergence (natural
log) against the analytic Haar reference

    P_Haar(F) = (d - 1) (1 - F)^(d - 2),   d = 2^(haar dimension qubits),

whose bin mass has the closed form (1-lo)^(d-1) - (1-hi)^(d-1). Lower KL
means closer to Haar, i.e. more expressive.

Trainability: mean per-parameter unbiased sample variance of parameter-shift
gradients of <Z_wire> over uniformly random parameter vectors. Larger is
easier to train; exponential decay with qubit count is the barren plateau.

Per-sample sub-seeds are derived as seed XOR sample index, so results do not
depend on evaluation order or parallel scheduling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ir import Circuit, GateKind
from .sim import compile_program, run_compiled, run_with_angles

__all__ = [
    "ExpressibilityConfig",
    "TrainabilityConfig",
    "CircuitMetrics",
    "haar_bin_mass",
    "kl_divergence",
    "kl_vs_haar",
    "expressibility_kl",
    "parameter_shift_gradient",
    "gradient_variance",
    "overheads",
]

WIRE_MODES = ("tracked", "raw_zero")

_ROTATIONS = (GateKind.RX, GateKind.RY, GateKind.RZ)


@dataclass(frozen=True)
class ExpressibilityConfig:
    n_pairs: int = 2000
    bins: int = 75
    epsilon: float = 1e-12
    seed: int = 0
    haar_dimension_qubits: int | None = None  # default: measured circuit's width

    def __post_init__(self):
        if self.n_pairs < 100:
            raise ValueError(f"n_pairs must be >= 100, got {self.n_pairs}")
        if self.bins < 2:
            raise ValueError(f"bins must be >= 2, got {self.bins}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")

    def sampler_key(self) -> tuple:
        return (self.n_pairs, self.bins, self.epsilon, self.seed)


@dataclass(frozen=True)
class TrainabilityConfig:
    n_grad: int = 100
    seed: int = 0
    observable_wire_mode: str = "tracked"

    def __post_init__(self):
        if self.n_grad < 2:
            raise ValueError(f"n_grad must be >= 2, got {self.n_grad}")
        if self.observable_wire_mode not in WIRE_MODES:
            raise ValueError(
                f"observable_wire_mode must be one of {WIRE_MODES}, "
                f"got {self.observable_wire_mode!r}"
            )

    def sampler_key(self) -> tuple:
        return (self.n_grad, self.seed)


def haar_bin_mass(lo: float, hi: float, d: int) -> float:
    """Integral of the Haar fidelity density over [lo, hi]."""
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got [{lo}, {hi}]")
    if d < 2:
        raise ValueError(f"Hilbert dimension must be >= 2, got {d}")
    return (1.0 - lo) ** (d - 1) - (1.0 - hi) ** (d - 1)


def kl_divergence(p, q, epsilon: float) -> float:
    """Smoothed KL: add epsilon to every cell of both, normalize, sum p*ln(p/q)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"histogram shapes differ: {p.shape} vs {q.shape}")
    if (p < 0).any() or (q < 0).any():
        raise ValueError("histograms must be nonnegative")
    p = p + epsilon
    q = q + epsilon
    p = p / p.sum()
    q = q / q.sum()
    return float(np.sum(p * np.log(p / q)))


def kl_vs_haar(fidelities, bins: int, epsilon: float, d: int) -> float:
    """Histogram fidelity samples on [0, 1] and compare against Haar bin masses."""
    fidelities = np.clip(np.asarray(fidelities, dtype=np.float64), 0.0, 1.0)
    counts, edges = np.histogram(fidelities, bins=bins, range=(0.0, 1.0))
    haar = np.array([haar_bin_mass(edges[i], edges[i + 1], d) for i in range(bins)])
    return kl_divergence(counts, haar, epsilon)


def _uniform_theta(seed: int, index: int, shape) -> np.ndarray:
    rng = np.random.default_rng(seed ^ index)
    return rng.uniform(0.0, 2.0 * np.pi, size=shape)


def expressibility_kl(circuit: Circuit, cfg: ExpressibilityConfig) -> float:
    """Fidelity-histogram KL divergence against Haar; lower is more expressive."""
    if circuit.param_count < 1:
        raise ValueError("expressibility needs at least one trainable parameter")
    program = compile_program(circuit)
    fids = np.empty(cfg.n_pairs, dtype=np.float64)
    for i in range(cfg.n_pairs):
        theta = _uniform_theta(cfg.seed, i, (2, circuit.param_count))
        a = run_compiled(program, theta[0])
        b = run_compiled(program, theta[1])
        fids[i] = abs(np.vdot(a, b)) ** 2
    d_qubits = cfg.haar_dimension_qubits
    if d_qubits is None:
        d_qubits = circuit.num_qubits
    return kl_vs_haar(fids, cfg.bins, cfg.epsilon, 2 ** d_qubits)


def _expectation_z_raw(amplitudes: np.ndarray, wire: int) -> float:
    probs = np.abs(amplitudes) ** 2
    bits = (np.arange(probs.shape[0]) >> wire) & 1
    return float(np.sum(probs * (1 - 2 * bits)))


def _check_gradient_inputs(circuit: Circuit, wire: int) -> None:
    for ins in circuit.instructions:
        if ins.params and ins.kind not in _ROTATIONS:
            raise ValueError(
                f"parameter-shift gradient unsupported for parameterized {ins.kind.value}"
            )
    if not 0 <= wire < circuit.num_qubits:
        raise ValueError(f"wire {wire} out of range for {circuit.num_qubits} qubits")


def _gradient_from_program(program, theta, wire: int) -> np.ndarray:
    angles = program.angles(theta)
    grad = np.zeros(program.param_count, dtype=np.float64)
    for row in program.param_rows:
        original = angles[row]
        angles[row] = original + np.pi / 2
        c_plus = _expectation_z_raw(run_with_angles(program, angles), wire)
        angles[row] = original - np.pi / 2
        c_minus = _expectation_z_raw(run_with_angles(program, angles), wire)
        angles[row] = original
        grad += 0.5 * (c_plus - c_minus) * program.coeffs[row]
    return grad


def parameter_shift_gradient(circuit: Circuit, theta, wire: int) -> np.ndarray:
    """Exact gradient of <Z_wire> via per-gate +-pi/2 shifts and the chain rule.

    Each rotation occurrence contributes its gate-level shift gradient times
    its affine coefficient to every parameter it references.
    """
    _check_gradient_inputs(circuit, wire)
    return _gradient_from_program(compile_program(circuit), theta, wire)


def gradient_variance(circuit: Circuit, cfg: TrainabilityConfig, wire: int) -> float:
    """Mean per-parameter unbiased variance of gradients over random draws."""
    if circuit.param_count < 1:
        raise ValueError("gradient variance needs at least one trainable parameter")
    _check_gradient_inputs(circuit, wire)
    program = compile_program(circuit)
    grads = np.empty((cfg.n_grad, circuit.param_count), dtype=np.float64)
    for s in range(cfg.n_grad):
        theta = _uniform_theta(cfg.seed, s, circuit.param_count)
        grads[s] = _gradient_from_program(program, theta, wire)
    return float(np.mean(np.var(grads, axis=0, ddof=1)))


@dataclass(frozen=True)
class CircuitMetrics:
    """One circuit's metric values together with the configs that produced them."""

    e_kl: float
    gradvar: float
    expressibility: ExpressibilityConfig
    trainability: TrainabilityConfig


def overheads(logical: CircuitMetrics, transpiled: CircuitMetrics) -> tuple[float, float]:
    """Transpiled minus logical for both metrics; requires matched samplers."""
    if logical.expressibility.sampler_key() != transpiled.expressibility.sampler_key():
        raise ValueError("expressibility sampler configs differ between inputs")
    if logical.trainability.sampler_key() != transpiled.trainability.sampler_key():
        raise ValueError("trainability sampler configs differ between inputs")
    return (
        transpiled.e_kl - logical.e_kl,
        transpiled.gradvar - logical.gradvar,
    )

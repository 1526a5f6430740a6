"""Pure-numpy gate kernels, the fallback path when numba is disabled.

Same program layout and same little-endian convention as the JIT kernels;
single-qubit gates act on a (high, bit, low) reshape, two-qubit gates on
index masks.
"""
import math

import numpy as np

_SQRT2_INV = 1.0 / math.sqrt(2.0)


def _apply_2x2(state, q, m00, m01, m10, m11):
    s = state.reshape(-1, 2, 1 << q)
    a = s[:, 0, :].copy()
    b = s[:, 1, :]
    s[:, 0, :] = m00 * a + m01 * b
    s[:, 1, :] = m10 * a + m11 * b


def _apply_rz(state, q, angle):
    ph1 = complex(math.cos(0.5 * angle), math.sin(0.5 * angle))
    s = state.reshape(-1, 2, 1 << q)
    s[:, 0, :] *= ph1.conjugate()
    s[:, 1, :] *= ph1


def _apply_cx(state, c, t):
    idx = np.arange(state.shape[0])
    sel = idx[((idx >> c) & 1 == 1) & ((idx >> t) & 1 == 0)]
    flipped = sel | (1 << t)
    state[sel], state[flipped] = state[flipped], state[sel].copy()


def _apply_cz(state, a, b):
    idx = np.arange(state.shape[0])
    sel = ((idx >> a) & 1 == 1) & ((idx >> b) & 1 == 1)
    state[sel] = -state[sel]


def _apply_swap(state, a, b):
    idx = np.arange(state.shape[0])
    sel = idx[((idx >> a) & 1 == 1) & ((idx >> b) & 1 == 0)]
    other = (sel ^ (1 << a)) | (1 << b)
    state[sel], state[other] = state[other], state[sel].copy()


def run_program(num_qubits, kinds, qubits0, qubits1, angles):
    state = np.zeros(1 << num_qubits, dtype=np.complex128)
    state[0] = 1.0
    for g in range(kinds.shape[0]):
        k = kinds[g]
        q = qubits0[g]
        if k == 0:  # RX
            half = 0.5 * angles[g]
            c, s = math.cos(half), math.sin(half)
            _apply_2x2(state, q, c, -1j * s, -1j * s, c)
        elif k == 1:  # RY
            half = 0.5 * angles[g]
            c, s = math.cos(half), math.sin(half)
            _apply_2x2(state, q, c, -s, s, c)
        elif k == 2:  # RZ
            _apply_rz(state, q, angles[g])
        elif k == 3:  # SX
            _apply_2x2(state, q, 0.5 + 0.5j, 0.5 - 0.5j, 0.5 - 0.5j, 0.5 + 0.5j)
        elif k == 4:  # X
            _apply_2x2(state, q, 0.0, 1.0, 1.0, 0.0)
        elif k == 5:  # H
            _apply_2x2(state, q, _SQRT2_INV, _SQRT2_INV, _SQRT2_INV, -_SQRT2_INV)
        elif k == 6:  # CX
            _apply_cx(state, q, qubits1[g])
        elif k == 7:  # CZ
            _apply_cz(state, q, qubits1[g])
        else:  # SWAP
            _apply_swap(state, q, qubits1[g])
    return state

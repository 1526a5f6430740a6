"""JIT gate kernels: stride iteration over amplitude pairs, one call per circuit.

Qubit 0 is the least-significant bit of the amplitude index. The whole
program runs inside a single njit function so per-gate Python overhead
disappears from the Monte-Carlo hot loops.
"""
import math

import numpy as np
from numba import njit

_SQRT2_INV = 1.0 / math.sqrt(2.0)


@njit(cache=True, inline="always")
def _apply_2x2(state, q, m00, m01, m10, m11):
    mask = 1 << q
    low = mask - 1
    for i in range(state.shape[0] >> 1):
        i0 = ((i >> q) << (q + 1)) | (i & low)
        i1 = i0 | mask
        a = state[i0]
        b = state[i1]
        state[i0] = m00 * a + m01 * b
        state[i1] = m10 * a + m11 * b


@njit(cache=True, inline="always")
def _apply_rz(state, q, angle):
    ph1 = complex(math.cos(0.5 * angle), math.sin(0.5 * angle))
    ph0 = ph1.conjugate()
    mask = 1 << q
    low = mask - 1
    for i in range(state.shape[0] >> 1):
        i0 = ((i >> q) << (q + 1)) | (i & low)
        state[i0] *= ph0
        state[i0 | mask] *= ph1



@njit(cache=True, inline="always")
def _apply_cx(state, c, t):
    cm = 1 << c
    tm = 1 << t
    for i in range(state.shape[0]):
        if (i & cm) != 0 and (i & tm) == 0:
            j = i | tm
            tmp = state[i]
            state[i] = state[j]
            state[j] = tmp


@njit(cache=True, inline="always")
def _apply_cz(state, a, b):
    am = 1 << a
    bm = 1 << b
    for i in range(state.shape[0]):
        if (i & am) != 0 and (i & bm) != 0:
            state[i] = -state[i]


@njit(cache=True, inline="always")
def _apply_swap(state, a, b):
    am = 1 << a
    bm = 1 << b
    for i in range(state.shape[0]):
        if (i & am) != 0 and (i & bm) == 0:
            j = (i ^ am) | bm
            tmp = state[i]
            state[i] = state[j]
            state[j] = tmp


@njit(cache=True)
def run_program(num_qubits, kinds, qubits0, qubits1, angles):
    state = np.zeros(1 << num_qubits, dtype=np.complex128)
    state[0] = 1.0 + 0.0j
    for g in range(kinds.shape[0]):
        k = kinds[g]
        q = qubits0[g]
        if k == 0:  # RX
            half = 0.5 * angles[g]
            c = math.cos(half)
            s = math.sin(half)
            _apply_2x2(state, q, complex(c, 0.0), complex(0.0, -s),
                       complex(0.0, -s), complex(c, 0.0))
        elif k == 1:  # RY
            half = 0.5 * angles[g]
            c = math.cos(half)
            s = math.sin(half)
            _apply_2x2(state, q, complex(c, 0.0), complex(-s, 0.0),
                       complex(s, 0.0), complex(c, 0.0))
        elif k == 2:  # RZ
            _apply_rz(state, q, angles[g])
        elif k == 3:  # SX
            _apply_2x2(state, q, complex(0.5, 0.5), complex(0.5, -0.5),
                       complex(0.5, -0.5), complex(0.5, 0.5))
        elif k == 4:  # X
            _apply_2x2(state, q, complex(0.0, 0.0), complex(1.0, 0.0),
                       complex(1.0, 0.0), complex(0.0, 0.0))
        elif k == 5:  # H
            s2 = _SQRT2_INV
            _apply_2x2(state, q, complex(s2, 0.0), complex(s2, 0.0),
                       complex(s2, 0.0), complex(-s2, 0.0))
        elif k == 6:  # CX
            _apply_cx(state, q, qubits1[g])
        elif k == 7:  # CZ
            _apply_cz(state, q, qubits1[g])
        else:  # SWAP
            _apply_swap(state, q, qubits1[g])
    return state

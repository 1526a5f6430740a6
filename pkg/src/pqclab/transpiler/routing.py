"""SWAP routing with the SABRE lookahead heuristic.

Executable gates (mapped endpoints adjacent on the coupling map) are emitted
as they become ready; when the front layer is blocked, the SWAP minimizing

    max(decay[p0], decay[p1]) * (front_avg_distance + w * extended_avg_distance)

is applied. Ties break on the smallest (physical-u, physical-v) pair, which
makes routing fully deterministic for a fixed layout.
"""
from __future__ import annotations

from ..ir import Circuit, Instruction, swap
from ..target import Target
from .layout import Layout

__all__ = ["sabre_route", "EXTENDED_SET_SIZE", "EXTENDED_SET_WEIGHT",
           "DECAY_STEP", "DECAY_RESET_INTERVAL"]

EXTENDED_SET_SIZE = 20
EXTENDED_SET_WEIGHT = 0.5
DECAY_STEP = 0.001
DECAY_RESET_INTERVAL = 5


def sabre_route(
    circuit: Circuit,
    target: Target,
    layout: Layout,
    seed: int = 0,
    extended_set_size: int = EXTENDED_SET_SIZE,
    extended_set_weight: float = EXTENDED_SET_WEIGHT,
    decay_step: float = DECAY_STEP,
    decay_reset_interval: int = DECAY_RESET_INTERVAL,
) -> tuple[Circuit, tuple[int, ...]]:
    """Route circuit onto target starting from layout.

    Returns (routed circuit over all physical wires, output permutation).
    The permutation maps each pre-routing physical wire to the wire its
    content occupies after all inserted SWAPs. The seed argument is part of
    the routing interface but unused: tie-breaking is lexicographic.
    """
    del seed
    n = circuit.num_qubits
    m = target.num_qubits
    if n > m:
        raise ValueError(f"circuit needs {n} qubits, target has {m}")
    coupling = target.coupling
    dist = coupling.distances
    neighbors = coupling.neighbors
    gates = circuit.instructions

    l2p = list(layout.logical_to_physical)
    p2l = [-1] * m
    for lq, pq in enumerate(l2p):
        p2l[pq] = lq

    # Content tracking for the output permutation: holder[p] = wire whose
    # initial content currently sits at physical p.
    holder = list(range(m))
    position = list(range(m))

    # Dependency structure: per-wire gate queues; a gate is ready when it is
    # at the head of every wire it touches.
    wire_gates: list[list[int]] = [[] for _ in range(n)]
    slot_on_wire: list[dict[int, int]] = [dict() for _ in range(n)]
    for g, ins in enumerate(gates):
        for q in ins.qubits:
            slot_on_wire[q][g] = len(wire_gates[q])
            wire_gates[q].append(g)
    ptr = [0] * n

    def _is_ready(g: int) -> bool:
        return all(
            ptr[q] < len(wire_gates[q]) and wire_gates[q][ptr[q]] == g
            for q in gates[g].qubits
        )

    def _heads() -> set[int]:
        out = set()
        for q in range(n):
            if ptr[q] < len(wire_gates[q]):
                g = wire_gates[q][ptr[q]]
                if _is_ready(g):
                    out.add(g)
        return out

    out: list[Instruction] = []
    decay = [1.0] * m
    swaps_since_reset = 0
    executed = 0
    total = len(gates)
    ready = _heads()

    def _emit(g: int) -> None:
        nonlocal executed
        ins = gates[g]
        phys = tuple(l2p[q] for q in ins.qubits)
        out.append(Instruction(ins.kind, phys, ins.params))
        for q in ins.qubits:
            ptr[q] += 1
        executed += 1

    def _apply_swap(pa: int, pb: int) -> None:
        nonlocal swaps_since_reset
        out.append(swap(min(pa, pb), max(pa, pb)))
        la, lb = p2l[pa], p2l[pb]
        p2l[pa], p2l[pb] = lb, la
        if la >= 0:
            l2p[la] = pb
        if lb >= 0:
            l2p[lb] = pa
        wa, wb = holder[pa], holder[pb]
        holder[pa], holder[pb] = wb, wa
        position[wa], position[wb] = pb, pa
        decay[pa] += decay_step
        decay[pb] += decay_step
        swaps_since_reset += 1
        if swaps_since_reset >= decay_reset_interval:
            for p in range(m):
                decay[p] = 1.0
            swaps_since_reset = 0

    def _extended_set(front: list[int]) -> list[int]:
        # BFS over dependency successors, collecting two-qubit gates.
        result: list[int] = []
        seen = set(front)
        layer = front
        while layer and len(result) < extended_set_size:
            nxt: list[int] = []
            for g in sorted(layer):
                for q in gates[g].qubits:
                    k = slot_on_wire[q][g] + 1
                    if k < len(wire_gates[q]):
                        s = wire_gates[q][k]
                        if s not in seen:
                            seen.add(s)
                            nxt.append(s)
            for s in sorted(set(nxt)):
                if gates[s].kind.num_qubits == 2 and len(result) < extended_set_size:
                    result.append(s)
            layer = nxt
        return result

    def _score(pa: int, pb: int, front: list[int], extended: list[int]) -> float:
        def moved(p: int) -> int:
            if p == pa:
                return pb
            if p == pb:
                return pa
            return p

        f = 0.0
        for g in front:
            qa, qb = gates[g].qubits
            f += dist[moved(l2p[qa])][moved(l2p[qb])]
        f /= len(front)
        e = 0.0
        if extended:
            for g in extended:
                qa, qb = gates[g].qubits
                e += dist[moved(l2p[qa])][moved(l2p[qb])]
            e = extended_set_weight * e / len(extended)
        return max(decay[pa], decay[pb]) * (f + e)

    stuck_swaps = 0
    while executed < total:
        progress = True
        while progress:
            progress = False
            for g in sorted(ready):
                ins = gates[g]
                if ins.kind.num_qubits == 1 or coupling.has_edge(
                    l2p[ins.qubits[0]], l2p[ins.qubits[1]]
                ):
                    _emit(g)
                    ready.discard(g)
                    progress = True
            if progress:
                ready = _heads()
                stuck_swaps = 0
        if executed >= total:
            break

        front = sorted(ready)
        if stuck_swaps > 10 * m:
            # Safety valve: drag one blocked gate together along a shortest
            # path so routing always terminates.
            qa, qb = gates[front[0]].qubits
            pa, pb = l2p[qa], l2p[qb]
            while dist[pa][pb] > 1:
                step = min(v for v in neighbors[pa] if dist[v][pb] < dist[pa][pb])
                _apply_swap(pa, step)
                pa = l2p[qa]
            stuck_swaps = 0
            continue

        extended = _extended_set(front)
        candidates = set()
        for g in front:
            for q in gates[g].qubits:
                p = l2p[q]
                for nb in neighbors[p]:
                    candidates.add((min(p, nb), max(p, nb)))
        best = None
        best_score = float("inf")
        for pa, pb in sorted(candidates):
            s = _score(pa, pb, front, extended)
            if s < best_score:
                best_score = s
                best = (pa, pb)
        _apply_swap(*best)
        stuck_swaps += 1

    routed = Circuit(m, tuple(out), circuit.param_count)
    return routed, tuple(position)

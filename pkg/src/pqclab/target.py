"""Physical-device model: coupling maps, native basis, shortest-path distances.

Coupling is undirected and CX is allowed in both directions on any edge.
The repository ships a default 65-qubit heavy-hex asset generated by
heavy_hex_map(5).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from importlib import resources

import numpy as np

from .ir import NATIVE_BASIS, GateKind

__all__ = [
    "TargetError",
    "CouplingMap",
    "Target",
    "heavy_hex_map",
    "distance_matrix",
    "load_target",
    "save_target",
    "default_target",
]

DEFAULT_TARGET_ASSET = "heavy_hex_65.json"


class TargetError(ValueError):
    """Raised for malformed coupling maps or unloadable target files."""


def _canonical_edges(edges) -> tuple[tuple[int, int], ...]:
    canon = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise TargetError(f"self-loop on qubit {u}")
        canon.add((min(u, v), max(u, v)))
    return tuple(sorted(canon))


@dataclass(frozen=True)
class CouplingMap:
    num_qubits: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _canonical_edges(self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.num_qubits and 0 <= v < self.num_qubits):
                raise TargetError(
                    f"edge ({u},{v}) out of range for {self.num_qubits} qubits"
                )
        if self.num_qubits < 1:
            raise TargetError("coupling map needs at least one qubit")
        if self._bfs_reach(0) != self.num_qubits:
            raise TargetError("coupling map is disconnected")

    def _bfs_reach(self, start: int) -> int:
        seen = {start}
        frontier = [start]
        adj = self.neighbors
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return len(seen)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.num_qubits)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def distances(self) -> np.ndarray:
        return distance_matrix(self)


def distance_matrix(coupling: CouplingMap) -> np.ndarray:
    """All-pairs shortest-path hop counts via BFS; symmetric, zero diagonal."""
    m = coupling.num_qubits
    dist = np.full((m, m), -1, dtype=np.int32)
    adj = coupling.neighbors
    for src in range(m):
        dist[src, src] = 0
        frontier = [src]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if dist[src, v] < 0:
                        dist[src, v] = d
                        nxt.append(v)
            frontier = nxt
    if (dist < 0).any():
        raise TargetError("coupling map is disconnected")
    return dist


def heavy_hex_map(distance: int) -> CouplingMap:
    """Heavy-hexagon lattice for an odd code distance >= 3.

    Rows of data qubits are linked through bridge qubits placed at alternating
    column offsets, giving the usual 12-cycle cells with vertex degree <= 3.
    Size is (5*d^2 + 2*d - 5) / 2: 23 for d=3, 65 for d=5, 127 for d=7.
    """
    d = int(distance)
    if d < 3 or d % 2 == 0:
        raise TargetError(f"heavy-hex distance must be odd and >= 3, got {distance}")

    # Qubit rows at row index r hold columns [0, 2d) for r=0, [1, 2d] for
    # r=d-1, and [0, 2d] otherwise. Bridge rows sit between qubit rows.
    row_cols: list[list[int]] = []
    for r in range(d):
        if r == 0:
            row_cols.append(list(range(0, 2 * d)))
        elif r == d - 1:
            row_cols.append(list(range(1, 2 * d + 1)))
        else:
            row_cols.append(list(range(0, 2 * d + 1)))

    index: dict[tuple[str, int, int], int] = {}
    counter = 0
    for r in range(d):
        for c in row_cols[r]:
            index[("q", r, c)] = counter
            counter += 1
        if r < d - 1:
            offset = 0 if r % 2 == 0 else 2
            for c in range(offset, 2 * d + 1, 4):
                index[("b", r, c)] = counter
                counter += 1

    edges = []
    for r in range(d):
        cols = row_cols[r]
        for a, b in zip(cols, cols[1:]):
            edges.append((index[("q", r, a)], index[("q", r, b)]))
        if r < d - 1:
            offset = 0 if r % 2 == 0 else 2
            for c in range(offset, 2 * d + 1, 4):
                bridge = index[("b", r, c)]
                edges.append((index[("q", r, c)], bridge))
                edges.append((bridge, index[("q", r + 1, c)]))
    return CouplingMap(counter, tuple(edges))


@dataclass(frozen=True)
class Target:
    name: str
    coupling: CouplingMap
    basis: frozenset[GateKind] = NATIVE_BASIS

    def __post_init__(self):
        if self.basis != NATIVE_BASIS:
            raise TargetError("target basis is fixed to {CX, RZ, SX, X}")

    @property
    def num_qubits(self) -> int:
        return self.coupling.num_qubits


def target_to_dict(target: Target) -> dict:
    return {
        "name": target.name,
        "num_qubits": target.coupling.num_qubits,
        "edges": [[u, v] for u, v in target.coupling.edges],
    }


def save_target(target: Target, path) -> None:
    with open(path, "w") as f:
        json.dump(target_to_dict(target), f, indent=1)
        f.write("\n")


def load_target(path) -> Target:
    """Load and validate a coupling-map file; errors carry the offending location."""
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise TargetError(f"cannot load target {path}: {exc}") from exc
    try:
        name = data["name"]
        num_qubits = int(data["num_qubits"])
        edges = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise TargetError(f"malformed target file {path}: {exc!r}") from exc
    try:
        coupling = CouplingMap(num_qubits, tuple((u, v) for u, v in edges))
    except TargetError as exc:
        raise TargetError(f"invalid coupling map in {path}: {exc}") from exc
    return Target(str(name), coupling)


def default_target() -> Target:
    """The packaged 65-qubit heavy-hex device used for replication sweeps."""
    ref = resources.files("pqclab").joinpath("assets", DEFAULT_TARGET_ASSET)
    with resources.as_file(ref) as path:
        return load_target(path)

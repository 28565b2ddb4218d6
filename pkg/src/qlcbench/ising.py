"""Diagonal Ising encodings of graph problems and exact brute-force ground truth.

A problem Hamiltonian is stored as 2-local ZZ couplings, Z fields, and a
scalar constant:

    H = sum_{i<j} J_ij Z_i Z_j + sum_i h_i Z_i + c0

Bit convention: bit i of a computational basis index gives qubit i's state,
and the Z_i eigenvalue is z_i = 1 - 2*bit_i. A set bit (z = -1) means the
vertex is selected (clique / cover membership), i.e. x_i = (1 - z_i) / 2.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, complement

# Diagonals are materialized as 2^n float64 vectors; 22 qubits = 32 MiB.
MAX_QUBITS = 22


class ProblemKind(enum.Enum):
    MAXCUT = "maxcut"
    WEIGHTED_MAXCUT = "weighted_maxcut"
    MAXCLIQUE = "maxclique"
    MINCOVER = "mincover"


@dataclass(frozen=True)
class IsingModel:
    """2-local diagonal Hamiltonian: couplings J_ij (i<j), fields h_i, constant c0."""

    n_qubits: int
    couplings: dict[tuple[int, int], float]
    fields: dict[int, float]
    constant: float = 0.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        for (i, j) in self.couplings:
            if not (0 <= i < j < self.n_qubits):
                raise ValueError(f"coupling ({i},{j}) violates 0 <= i < j < {self.n_qubits}")
        for i in self.fields:
            if not (0 <= i < self.n_qubits):
                raise ValueError(f"field index {i} out of range")

    def to_json(self) -> str:
        """JSON form for harness persistence (couplings as [i, j, J] triples)."""
        return json.dumps(
            {
                "n_qubits": self.n_qubits,
                "couplings": [[i, j, J] for (i, j), J in sorted(self.couplings.items())],
                "fields": [[i, h] for i, h in sorted(self.fields.items())],
                "constant": self.constant,
            }
        )

    @staticmethod
    def from_json(text: str) -> "IsingModel":
        d = json.loads(text)
        return IsingModel(
            n_qubits=d["n_qubits"],
            couplings={(int(i), int(j)): float(J) for i, j, J in d["couplings"]},
            fields={int(i): float(h) for i, h in d["fields"]},
            constant=float(d["constant"]),
        )


@dataclass(frozen=True)
class GroundInfo:
    """Exact minimum of the diagonal and the basis states attaining it."""

    e_min: float
    optimal_states: np.ndarray  # sorted basis indices, int64
    degeneracy: int


def encode_problem(kind: ProblemKind, g: Graph) -> IsingModel:
    """Encode a graph problem as an IsingModel whose ground states are the optima.

    MAXCUT / WEIGHTED_MAXCUT:  (1/2) sum_E (w_ij Z_i Z_j - I)
    MAXCLIQUE:  3 sum_{E(complement)} (Z_i Z_j - Z_i - Z_j) + sum_V Z_i
    MINCOVER:   3 sum_E (Z_i Z_j + Z_i + Z_j) - sum_V Z_i
    """
    n = g.n_vertices
    couplings: dict[tuple[int, int], float] = {}
    fields: dict[int, float] = {}

    def add_j(i, j, val):
        couplings[(i, j)] = couplings.get((i, j), 0.0) + val

    def add_h(i, val):
        fields[i] = fields.get(i, 0.0) + val

    if kind in (ProblemKind.MAXCUT, ProblemKind.WEIGHTED_MAXCUT):
        for u, v, w in g.edges:
            add_j(u, v, w / 2.0)
        return IsingModel(n, couplings, fields, constant=-g.n_edges / 2.0)
    if kind is ProblemKind.MAXCLIQUE:
        for u, v, _ in complement(g).edges:
            add_j(u, v, 3.0)
            add_h(u, -3.0)
            add_h(v, -3.0)
        for i in range(n):
            add_h(i, 1.0)
        return IsingModel(n, couplings, fields, constant=0.0)
    if kind is ProblemKind.MINCOVER:
        for u, v, _ in g.edges:
            add_j(u, v, 3.0)
            add_h(u, 3.0)
            add_h(v, 3.0)
        for i in range(n):
            add_h(i, -1.0)
        return IsingModel(n, couplings, fields, constant=0.0)
    raise ValueError(f"unknown problem kind: {kind!r}")


def diagonal_energies(m: IsingModel) -> np.ndarray:
    """Exact diagonal of the Hamiltonian over all 2^n basis states.

    Entry b is sum J_ij z_i z_j + sum h_i z_i + c0 with z_i = 1 - 2*bit_i(b).
    """
    n = m.n_qubits
    if n > MAX_QUBITS:
        raise ValueError(f"n_qubits={n} exceeds cap of {MAX_QUBITS}")
    idx = np.arange(1 << n, dtype=np.int64)
    z = [1 - 2 * ((idx >> i) & 1) for i in range(n)]
    e = np.full(1 << n, m.constant, dtype=np.float64)
    for (i, j), J in m.couplings.items():
        e += J * (z[i] * z[j])
    for i, h in m.fields.items():
        e += h * z[i]
    return e


def energy_of_bitstring(m: IsingModel, b: int) -> float:
    """Diagonal entry at basis index b, without materializing the full vector."""
    if not (0 <= b < (1 << m.n_qubits)):
        raise ValueError(f"basis index {b} out of range for {m.n_qubits} qubits")
    z = [1 - 2 * ((b >> i) & 1) for i in range(m.n_qubits)]
    e = m.constant
    for (i, j), J in m.couplings.items():
        e += J * z[i] * z[j]
    for i, h in m.fields.items():
        e += h * z[i]
    return float(e)


# Ties at the minimum are exact for unweighted problems; the tolerance only
# guards float accumulation on weighted instances.
DEGENERACY_ATOL = 1e-9


def ground_info(m: IsingModel) -> GroundInfo:
    """Exact minimum over the diagonal and all basis states within tolerance of it."""
    e = diagonal_energies(m)
    e_min = float(e.min())
    optimal = np.flatnonzero(e <= e_min + DEGENERACY_ATOL).astype(np.int64)
    return GroundInfo(e_min=e_min, optimal_states=optimal, degeneracy=int(optimal.size))

"""Independent dense/brute-force oracles used across the test suite.

Everything here is built from first principles (Kronecker products, scipy's
matrix exponential, exhaustive enumeration) and never calls the matrix-free
kernels it is used to check.
"""
from __future__ import annotations

import itertools

import numpy as np
import scipy.linalg

X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def op_on(op2: np.ndarray, i: int, n: int) -> np.ndarray:
    """Dense n-qubit operator applying op2 on qubit i (bit i of the index)."""
    m = np.eye(1, dtype=complex)
    for q in range(n - 1, -1, -1):
        m = np.kron(m, op2 if q == i else I2)
    return m


def dense_hp(model) -> np.ndarray:
    """Dense problem Hamiltonian from an IsingModel's terms."""
    n = model.n_qubits
    h = model.constant * np.eye(1 << n, dtype=complex)
    for (i, j), J in model.couplings.items():
        h += J * (op_on(Z, i, n) @ op_on(Z, j, n))
    for i, f in model.fields.items():
        h += f * op_on(Z, i, n)
    return h


def dense_hd(n: int) -> np.ndarray:
    return sum(op_on(X, i, n) for i in range(n))


def expm(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*t*h) via scipy."""
    return scipy.linalg.expm(-1j * t * h)


def dense_a(psi: np.ndarray, hp: np.ndarray, hd: np.ndarray) -> float:
    return float(np.vdot(psi, 1j * (hd @ hp - hp @ hd) @ psi).real)


def dense_b(psi: np.ndarray, hp: np.ndarray, hd: np.ndarray) -> float:
    op = hd @ hd @ hp - 2.0 * (hd @ hp @ hd) + hp @ hd @ hd
    return float(np.vdot(psi, op @ psi).real)


def random_state(n: int, rng) -> np.ndarray:
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


def random_model(n: int, rng, density: float = 0.7):
    from qlcbench import IsingModel

    couplings = {}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            couplings[(i, j)] = float(rng.uniform(-2, 2))
    fields = {i: float(rng.uniform(-2, 2)) for i in range(n) if rng.random() < density}
    return IsingModel(n, couplings, fields, constant=float(rng.uniform(-1, 1)))


def cut_weight(g, b: int) -> float:
    """Total weight of edges cut by the bit assignment b."""
    return sum(w for u, v, w in g.edges if ((b >> u) & 1) != ((b >> v) & 1))


def bits_set(b: int, n: int) -> set[int]:
    return {i for i in range(n) if (b >> i) & 1}


def max_clique_indicators(g) -> set[int]:
    """Basis indices whose set bits form a maximum clique of g (brute force)."""
    n = g.n_vertices
    pairs = set(g.edge_pairs())
    def is_clique(s):
        return all((i, j) in pairs for i, j in itertools.combinations(sorted(s), 2))
    best = max(len(s) for b in range(1 << n) for s in [bits_set(b, n)] if is_clique(s))
    return {b for b in range(1 << n) if is_clique(bits_set(b, n)) and len(bits_set(b, n)) == best}


def min_cover_indicators(g) -> set[int]:
    """Basis indices whose set bits form a minimum vertex cover of g (brute force)."""
    n = g.n_vertices
    pairs = g.edge_pairs()
    def is_cover(s):
        return all(u in s or v in s for u, v in pairs)
    best = min(len(bits_set(b, n)) for b in range(1 << n) if is_cover(bits_set(b, n)))
    return {b for b in range(1 << n) if is_cover(bits_set(b, n)) and len(bits_set(b, n)) == best}

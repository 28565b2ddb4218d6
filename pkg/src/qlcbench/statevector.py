"""Matrix-free statevector evolution and exact expectation values.

States are plain 1-D complex128 arrays of length 2^n. No 2^n x 2^n operator
is ever formed: the problem unitary is a diagonal phase pass, the transverse
field driver factorizes into n single-qubit pair mixes, and the driver
Hamiltonian's action is n shifted additions.

Qubit ordering matches :mod:`qlcbench.ising`: bit i of the amplitude index is
qubit i (qubit 0 = least significant bit).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ising import MAX_QUBITS


def n_qubits_of(psi: np.ndarray) -> int:
    """Qubit count of a statevector; its length must be a power of two."""
    n = int(psi.shape[0]).bit_length() - 1
    if psi.ndim != 1 or (1 << n) != psi.shape[0]:
        raise ValueError(f"statevector length {psi.shape} is not a power of two")
    return n


def uniform_state(n: int) -> np.ndarray:
    """The uniform superposition |+>^n: every amplitude 2^(-n/2)."""
    if not (1 <= n <= MAX_QUBITS):
        raise ValueError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    return np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)


def apply_problem_phase(psi: np.ndarray, energies: np.ndarray, dt: float) -> np.ndarray:
    """Apply exp(-i*dt*H_p) for diagonal H_p, in place; returns psi."""
    if psi.shape != energies.shape:
        raise ValueError(f"dimension mismatch: state {psi.shape} vs diagonal {energies.shape}")
    psi *= np.exp(-1j * dt * energies)
    return psi


def phase_factors(energies: np.ndarray, dt: float) -> np.ndarray:
    """Per-basis-state phases exp(-i*dt*E_b), precomputable once per run."""
    return np.exp(-1j * dt * energies)


def apply_phases(psi: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Multiply by precomputed diagonal phases, in place; returns psi."""
    psi *= phases
    return psi


def apply_driver(psi: np.ndarray, theta: float) -> np.ndarray:
    """Apply exp(-i*theta*sum_i X_i) = prod_i (cos t * I - i sin t * X_i), in place.

    For each qubit the amplitude pair (a0, a1) differing in that bit maps to
    (c*a0 - i*s*a1, c*a1 - i*s*a0). Returns psi.
    """
    n = n_qubits_of(psi)
    c = math.cos(theta)
    s = math.sin(theta)
    if s == 0.0 and c == 1.0:
        return psi
    for i in range(n):
        view = psi.reshape(-1, 2, 1 << i)
        a0 = view[:, 0, :].copy()
        view[:, 0, :] *= c
        view[:, 0, :] += -1j * s * view[:, 1, :]
        view[:, 1, :] *= c
        view[:, 1, :] += -1j * s * a0
    return psi


def apply_hd(psi: np.ndarray) -> np.ndarray:
    """Action of the driver Hamiltonian sum_i X_i: out[b] = sum_i psi[b ^ (1<<i)].

    Returns a new (generally unnormalized) vector.
    """
    n = n_qubits_of(psi)
    out = np.zeros_like(psi)
    for i in range(n):
        v = psi.reshape(-1, 2, 1 << i)
        o = out.reshape(-1, 2, 1 << i)
        o[:, 0, :] += v[:, 1, :]
        o[:, 1, :] += v[:, 0, :]
    return out


def norm(psi: np.ndarray) -> float:
    return float(np.linalg.norm(psi))


def expval_hp(psi: np.ndarray, energies: np.ndarray) -> float:
    """<psi| H_p |psi> for diagonal H_p: sum_b E_b |psi_b|^2."""
    if psi.shape != energies.shape:
        raise ValueError(f"dimension mismatch: state {psi.shape} vs diagonal {energies.shape}")
    return float(np.dot(energies, psi.real**2 + psi.imag**2))


def expval_a(psi: np.ndarray, energies: np.ndarray) -> float:
    """<psi| i[H_d, H_p] |psi> = -2 Im <H_d psi | H_p psi>, matrix-free."""
    if psi.shape != energies.shape:
        raise ValueError(f"dimension mismatch: state {psi.shape} vs diagonal {energies.shape}")
    u = apply_hd(psi)
    return float(-2.0 * np.imag(np.vdot(u, energies * psi)))


def expval_b(psi: np.ndarray, energies: np.ndarray) -> float:
    """<psi| [H_d, [H_d, H_p]] |psi>, matrix-free.

    Expands to <H_d^2 H_p> - 2 <H_d H_p H_d> + <H_p H_d^2>
             = 2 Re <H_d^2 psi | H_p psi> - 2 <H_d psi| H_p |H_d psi>.
    """
    if psi.shape != energies.shape:
        raise ValueError(f"dimension mismatch: state {psi.shape} vs diagonal {energies.shape}")
    u = apply_hd(psi)
    u2 = apply_hd(u)
    cross = 2.0 * np.real(np.vdot(u2, energies * psi))
    middle = 2.0 * float(np.dot(energies, u.real**2 + u.imag**2))
    return float(cross - middle)


def success_probability(psi: np.ndarray, gi) -> float:
    """Total probability mass on the optimal basis states of a GroundInfo."""
    states = np.asarray(gi.optimal_states, dtype=np.int64)
    if states.size and int(states.max()) >= psi.shape[0]:
        raise ValueError("optimal state index out of range for this statevector")
    amps = psi[states]
    return float(np.sum(amps.real**2 + amps.imag**2))


@dataclass(frozen=True)
class LayerObservables:
    """The measurement trio on one state: A = <i[H_d,H_p]>, B = <[H_d,[H_d,H_p]]>, E_p."""

    a_val: float
    b_val: float
    e_p: float


def measure_layer(psi: np.ndarray, energies: np.ndarray) -> LayerObservables:
    """Evaluate A, B and E_p on one state, sharing the H_d applications."""
    if psi.shape != energies.shape:
        raise ValueError(f"dimension mismatch: state {psi.shape} vs diagonal {energies.shape}")
    w = energies * psi
    u = apply_hd(psi)
    u2 = apply_hd(u)
    a_val = -2.0 * float(np.imag(np.vdot(u, w)))
    b_val = 2.0 * float(np.real(np.vdot(u2, w))) - 2.0 * float(np.dot(energies, u.real**2 + u.imag**2))
    e_p = float(np.dot(energies, psi.real**2 + psi.imag**2))
    return LayerObservables(a_val=a_val, b_val=b_val, e_p=e_p)

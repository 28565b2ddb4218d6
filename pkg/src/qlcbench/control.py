"""Feedback control loops that choose the driver amplitude layer by layer.

Two methods are implemented:

* ``falqon``: pure feedback. Each layer applies the problem phase, measures
  A = <i[H_d, H_p]> on the resulting state, and applies the driver with
  beta = -A. One observable estimation per layer.

* ``gdqlc``: per-layer gradient descent. Each layer runs ``l_iters`` updates
  beta <- beta*(1 + eta*dt*B) - eta*A, re-preparing the candidate state from
  the cached post-phase state each iteration, then keeps the candidate whose
  energy-descent rate A(beta)*beta is most negative. The candidate set always
  contains beta = 0 (rate exactly 0), so the chosen rate is never positive.
  Each of the l_iters + 1 candidate evaluations counts one estimation event.

Both loops re-prepare within the layer and measure the feedback observable at
the current candidate amplitude, so ``gdqlc`` with one iteration and unit
learning rate reproduces ``falqon`` exactly, trace for trace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ising import GroundInfo, IsingModel, diagonal_energies
from .statevector import (
    apply_driver,
    apply_phases,
    measure_layer,
    phase_factors,
    success_probability,
    uniform_state,
)

METHODS = ("falqon", "gdqlc")
LR_SCHEDULES = ("sqrt_log", "constant")


@dataclass(frozen=True)
class GdConfig:
    """Gradient-descent settings: iterations per layer and learning-rate rule.

    ``sqrt_log`` decays as lr_const / (sqrt(l) * ln(k+1)); ``constant`` uses
    lr_const for every (k, l), which with l_iters=1 and lr_const=1 reduces the
    method to falqon.
    """

    l_iters: int
    lr_const: float
    lr_schedule: str = "sqrt_log"

    def __post_init__(self):
        if self.l_iters < 1:
            raise ValueError(f"l_iters must be >= 1, got {self.l_iters}")
        if self.lr_const <= 0:
            raise ValueError(f"lr_const must be > 0, got {self.lr_const}")
        if self.lr_schedule not in LR_SCHEDULES:
            raise ValueError(f"lr_schedule must be one of {LR_SCHEDULES}")

    def eta(self, k: int, l: int) -> float:
        if self.lr_schedule == "constant":
            if k < 1 or l < 1:
                raise ValueError("layer and iteration indices start at 1")
            return self.lr_const
        return learning_rate(k, l, self.lr_const)


@dataclass(frozen=True)
class ControlConfig:
    dt: float
    k_max: int
    method: str
    gd: GdConfig | None = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if (self.gd is not None) != (self.method == "gdqlc"):
            raise ValueError("gd settings are required for gdqlc and disallowed otherwise")


@dataclass
class RunRecord:
    """Per-layer traces of one control run plus the measurement-cost counter."""

    method: str
    dt: float
    k_max: int
    e_min: float
    beta: np.ndarray
    a_val: np.ndarray
    b_val: np.ndarray
    e_p: np.ndarray
    r_a: np.ndarray
    p_succ: np.ndarray
    expectation_evals: int
    l_iters: int | None = None
    lr_const: float | None = None

    @property
    def layers(self) -> int:
        return len(self.beta)


@dataclass(frozen=True)
class LayerDiag:
    """All candidates of one gdqlc layer with their measured observables."""

    betas: np.ndarray
    a_vals: np.ndarray
    b_vals: np.ndarray
    e_dots: np.ndarray  # A(beta)*beta per candidate
    chosen: int
    evals: int


def learning_rate(k: int, l: int, c: float) -> float:
    """Decaying learning rate c / (sqrt(l) * ln(k+1)).

    The shift to ln(k+1) keeps the rate finite at the first layer while
    preserving the asymptotic decay in k.
    """
    if k < 1 or l < 1:
        raise ValueError(f"layer and iteration indices start at 1, got k={k}, l={l}")
    if c <= 0:
        raise ValueError(f"learning-rate constant must be > 0, got {c}")
    return c / (math.sqrt(l) * math.log(k + 1))


def gd_update(beta: float, a_val: float, b_val: float, eta: float, dt: float) -> float:
    """One gradient step on the descent rate: beta*(1 + eta*dt*b) - eta*a."""
    return beta * (1.0 + eta * dt * b_val) - eta * a_val


def falqon_run(m: IsingModel, gi: GroundInfo, cfg: ControlConfig) -> RunRecord:
    """Run the pure feedback loop for cfg.k_max layers from the uniform state.

    Layer k: apply the problem phase, measure A (and B, recorded as a
    diagnostic only) on the pre-driver state, set beta_k = -A, apply the
    driver. The cost counter increments once per layer for the A estimation.
    """
    if cfg.method != "falqon":
        raise ValueError(f"falqon_run requires method='falqon', got {cfg.method!r}")
    _check_e_min(gi)
    energies = diagonal_energies(m)
    phases = phase_factors(energies, cfg.dt)
    psi = uniform_state(m.n_qubits)
    K = cfg.k_max
    beta = np.zeros(K)
    a_val = np.zeros(K)
    b_val = np.zeros(K)
    e_p = np.zeros(K)
    p_succ = np.zeros(K)
    for k in range(K):
        apply_phases(psi, phases)
        obs = measure_layer(psi, energies)
        beta[k] = -obs.a_val
        a_val[k] = obs.a_val
        b_val[k] = obs.b_val
        apply_driver(psi, cfg.dt * beta[k])
        e_p[k] = _e_p(psi, energies)
        p_succ[k] = success_probability(psi, gi)
    return RunRecord(
        method="falqon",
        dt=cfg.dt,
        k_max=K,
        e_min=gi.e_min,
        beta=beta,
        a_val=a_val,
        b_val=b_val,
        e_p=e_p,
        r_a=e_p / gi.e_min,
        p_succ=p_succ,
        expectation_evals=K,
    )


def gdqlc_layer(
    psi_prev: np.ndarray, k: int, energies: np.ndarray, cfg: ControlConfig
) -> tuple[float, np.ndarray, LayerDiag]:
    """Run one layer's gradient refinement; psi_prev is not modified.

    Returns the chosen amplitude, the post-layer state, and the per-candidate
    diagnostics.
    """
    phases = phase_factors(energies, cfg.dt)
    return _gdqlc_layer(psi_prev, k, energies, phases, cfg)


def _gdqlc_layer(psi_prev, k, energies, phases, cfg):
    gd = cfg.gd
    L = gd.l_iters
    # U_p does not depend on beta: cache the post-phase state and re-apply
    # only the driver per candidate.
    phi = apply_phases(psi_prev.copy(), phases)
    betas = np.zeros(L + 1)
    a_vals = np.zeros(L + 1)
    b_vals = np.zeros(L + 1)
    e_ps = np.zeros(L + 1)
    beta = 0.0
    for l in range(L + 1):
        psi = apply_driver(phi.copy(), cfg.dt * beta)
        obs = measure_layer(psi, energies)
        betas[l] = beta
        a_vals[l] = obs.a_val
        b_vals[l] = obs.b_val
        e_ps[l] = obs.e_p
        if l < L:
            beta = gd_update(beta, obs.a_val, obs.b_val, gd.eta(k, l + 1), cfg.dt)
    e_dots = a_vals * betas
    chosen = int(np.argmin(e_dots))  # ties go to the earliest candidate (beta=0 first)
    psi_next = apply_driver(phi, cfg.dt * float(betas[chosen]))
    diag = LayerDiag(
        betas=betas, a_vals=a_vals, b_vals=b_vals, e_dots=e_dots, chosen=chosen, evals=L + 1
    )
    return float(betas[chosen]), psi_next, diag


def gdqlc_run(m: IsingModel, gi: GroundInfo, cfg: ControlConfig) -> RunRecord:
    """Run the gradient-refined feedback loop for cfg.k_max layers."""
    if cfg.method != "gdqlc":
        raise ValueError(f"gdqlc_run requires method='gdqlc', got {cfg.method!r}")
    _check_e_min(gi)
    energies = diagonal_energies(m)
    phases = phase_factors(energies, cfg.dt)
    psi = uniform_state(m.n_qubits)
    K = cfg.k_max
    beta = np.zeros(K)
    a_val = np.zeros(K)
    b_val = np.zeros(K)
    e_p = np.zeros(K)
    p_succ = np.zeros(K)
    evals = 0
    for k in range(1, K + 1):
        beta_star, psi, diag = _gdqlc_layer(psi, k, energies, phases, cfg)
        evals += diag.evals
        i = k - 1
        beta[i] = beta_star
        a_val[i] = diag.a_vals[diag.chosen]
        b_val[i] = diag.b_vals[diag.chosen]
        e_p[i] = _e_p(psi, energies)
        p_succ[i] = success_probability(psi, gi)
    return RunRecord(
        method="gdqlc",
        dt=cfg.dt,
        k_max=K,
        e_min=gi.e_min,
        beta=beta,
        a_val=a_val,
        b_val=b_val,
        e_p=e_p,
        r_a=e_p / gi.e_min,
        p_succ=p_succ,
        expectation_evals=evals,
        l_iters=cfg.gd.l_iters,
        lr_const=cfg.gd.lr_const,
    )


def run_control(m: IsingModel, gi: GroundInfo, cfg: ControlConfig) -> RunRecord:
    """Dispatch to the configured method."""
    return falqon_run(m, gi, cfg) if cfg.method == "falqon" else gdqlc_run(m, gi, cfg)


def _e_p(psi, energies) -> float:
    return float(np.dot(energies, psi.real**2 + psi.imag**2))


def _check_e_min(gi: GroundInfo) -> None:
    if gi.e_min == 0:
        raise ValueError("approximation ratio undefined: ground energy is zero")

"""Built-in invariant and oracle checks behind the ``verify`` CLI subcommand.

Every check re-derives its expected values through an independent route
(dense operators via Kronecker products and eigendecomposition, brute-force
combinatorial search, finite differences) and compares against the matrix-free
implementation. Runs in a few seconds at n <= 8.
"""
from __future__ import annotations

import itertools

import numpy as np

from .control import ControlConfig, GdConfig, falqon_run, gdqlc_layer, gdqlc_run
from .graphs import Graph, assign_uniform_weights, complement, gen_barabasi_albert, gen_erdos_renyi, gen_random_regular, read_edge_list, write_edge_list
from .ising import IsingModel, ProblemKind, diagonal_energies, encode_problem, energy_of_bitstring, ground_info
from .statevector import apply_driver, apply_problem_phase, expval_a, expval_b, expval_hp, uniform_state

CheckResult = tuple[str, bool, str]

_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Z = np.diag([1.0, -1.0]).astype(complex)


def _op_on(op2: np.ndarray, i: int, n: int) -> np.ndarray:
    """Dense operator acting with op2 on qubit i (bit i of the index)."""
    m = np.eye(1, dtype=complex)
    for q in range(n - 1, -1, -1):
        m = np.kron(m, op2 if q == i else np.eye(2, dtype=complex))
    return m


def _dense_hp(m: IsingModel) -> np.ndarray:
    n = m.n_qubits
    h = m.constant * np.eye(1 << n, dtype=complex)
    for (i, j), J in m.couplings.items():
        h += J * (_op_on(_Z, i, n) @ _op_on(_Z, j, n))
    for i, f in m.fields.items():
        h += f * _op_on(_Z, i, n)
    return h


def _dense_hd(n: int) -> np.ndarray:
    return sum(_op_on(_X, i, n) for i in range(n))


def _expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i*t*h) for Hermitian h via eigendecomposition (numpy only)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def _random_model(n: int, rng) -> IsingModel:
    couplings = {}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.7:
            couplings[(i, j)] = float(rng.uniform(-2, 2))
    fields = {i: float(rng.uniform(-2, 2)) for i in range(n) if rng.random() < 0.7}
    return IsingModel(n, couplings, fields, constant=float(rng.uniform(-1, 1)))


def _random_state(n: int, rng) -> np.ndarray:
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


def _check_dense_oracles(rng) -> CheckResult:
    worst_ab, worst_unitary = 0.0, 0.0
    for rep in range(30):
        n = int(rng.integers(2, 5))
        m = _random_model(n, rng)
        e = diagonal_energies(m)
        psi = _random_state(n, rng)
        hp, hd = _dense_hp(m), _dense_hd(n)
        a_dense = float(np.vdot(psi, 1j * (hd @ hp - hp @ hd) @ psi).real)
        b_dense = float(np.vdot(psi, (hd @ hd @ hp - 2 * hd @ hp @ hd + hp @ hd @ hd) @ psi).real)
        worst_ab = max(worst_ab, abs(expval_a(psi, e) - a_dense), abs(expval_b(psi, e) - b_dense))
        dt, theta = float(rng.uniform(0.01, 0.5)), float(rng.uniform(-1, 1))
        up = _expm_hermitian(hp, dt)
        ud = _expm_hermitian(hd, theta)
        worst_unitary = max(
            worst_unitary,
            float(np.max(np.abs(apply_problem_phase(psi.copy(), e, dt) - up @ psi))),
            float(np.max(np.abs(apply_driver(psi.copy(), theta) - ud @ psi))),
        )
    ok = worst_ab < 1e-10 and worst_unitary < 1e-12
    return ("dense-oracle equivalence (A, B, unitaries)", ok, f"|AB err|={worst_ab:.2e} |U err|={worst_unitary:.2e}")


def _check_gradient_identities(rng) -> CheckResult:
    h = 1e-5
    worst = 0.0
    for rep in range(30):
        n = int(rng.integers(2, 7))
        m = _random_model(n, rng)
        e = diagonal_energies(m)
        psi = _random_state(n, rng)
        dt = float(rng.uniform(0.005, 0.1))
        beta = float(rng.uniform(-2, 2))

        def at(b):
            s = apply_driver(psi.copy(), dt * b)
            return expval_hp(s, e), expval_a(s, e)

        ep_p, a_p = at(beta + h)
        ep_m, a_m = at(beta - h)
        s0 = apply_driver(psi.copy(), dt * beta)
        a0, b0 = expval_a(s0, e), expval_b(s0, e)
        de = (ep_p - ep_m) / (2 * h)
        da = (a_p - a_m) / (2 * h)
        worst = max(
            worst,
            abs(de - dt * a0) / max(abs(dt * a0), 1e-8),
            abs(da + dt * b0) / max(abs(dt * b0), 1e-8),
        )
    return ("finite-difference gradient identities", worst < 1e-5, f"worst rel err={worst:.2e}")


def _check_graphs(rng) -> CheckResult:
    msgs = []
    k4 = gen_random_regular(4, 3, seed=11)
    if k4.edge_pairs() != [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        msgs.append("4-vertex 3-regular is not K4")
    for seed in range(5):
        g = gen_random_regular(10, 3, seed=seed)
        if any(d != 3 for d in g.degrees()):
            msgs.append(f"degree violation at seed {seed}")
        if gen_random_regular(10, 3, seed=seed).edges != g.edges:
            msgs.append("regular generator not deterministic")
        ba = gen_barabasi_albert(12, 3, seed=seed)
        if ba.n_edges != 6 + 3 * (12 - 4):
            msgs.append("BA edge count off")
        er = gen_erdos_renyi(9, 0.4, seed=seed)
        if complement(complement(er)).edges != er.edges:
            msgs.append("complement not involutive")
        w = assign_uniform_weights(er, 0.0, 2.0, seed=seed)
        if read_edge_list(write_edge_list(w)) != w:
            msgs.append("edge-list round trip failed")
    return ("graph generators and serialization", not msgs, "; ".join(msgs) or "ok")


def _cut_weight(g: Graph, b: int) -> float:
    return sum(w for u, v, w in g.edges if ((b >> u) & 1) != ((b >> v) & 1))


def _check_encodings(rng) -> CheckResult:
    msgs = []
    for seed in range(4):
        g = assign_uniform_weights(gen_erdos_renyi(7, 0.5, seed=seed), 0.0, 2.0, seed=seed + 50)
        m = encode_problem(ProblemKind.WEIGHTED_MAXCUT, g)
        e = diagonal_energies(m)
        # the -I term is unweighted, so energy = -cut + (sum w - |E|)/2
        offset = (sum(w for _, _, w in g.edges) - g.n_edges) / 2.0
        for b in range(1 << 7):
            if abs(e[b] + _cut_weight(g, b) - offset) > 1e-9:
                msgs.append(f"maxcut energy != offset - cut at seed {seed} b={b}")
                break
            if abs(e[b] - energy_of_bitstring(m, b)) > 0:
                msgs.append("diagonal vs pointwise mismatch")
                break
        gu = gen_erdos_renyi(7, 0.5, seed=seed + 100)
        sets = lambda b: {i for i in range(7) if (b >> i) & 1}
        pairs = set(gu.edge_pairs())
        # brute-force optima
        is_clique = lambda s: all((min(i, j), max(i, j)) in pairs for i in s for j in s if i < j)
        best_clique = max((len(s) for b in range(1 << 7) for s in [sets(b)] if is_clique(s)), default=0)
        gi = ground_info(encode_problem(ProblemKind.MAXCLIQUE, gu))
        if not all(is_clique(sets(b)) and len(sets(b)) == best_clique for b in gi.optimal_states):
            msgs.append(f"maxclique argmin is not a maximum clique (seed {seed})")
        is_cover = lambda s: all(u in s or v in s for u, v in pairs)
        best_cover = min(len(sets(b)) for b in range(1 << 7) if is_cover(sets(b)))
        gi = ground_info(encode_problem(ProblemKind.MINCOVER, gu))
        if not all(is_cover(sets(b)) and len(sets(b)) == best_cover for b in gi.optimal_states):
            msgs.append(f"mincover argmin is not a minimum cover (seed {seed})")
    return ("problem encodings vs brute force", not msgs, "; ".join(msgs) or "ok")


def _check_control(rng) -> CheckResult:
    msgs = []
    g = gen_random_regular(8, 3, seed=3)
    m = encode_problem(ProblemKind.MAXCUT, g)
    gi = ground_info(m)
    rec = falqon_run(m, gi, ControlConfig(dt=0.01, k_max=150, method="falqon"))
    if not np.all(np.diff(rec.e_p) <= 1e-9):
        msgs.append("falqon energy trace not monotone at dt=0.01")
    if rec.expectation_evals != 150:
        msgs.append("falqon evaluation counter wrong")
    if rec.p_succ.min() < 0 or rec.p_succ.max() > 1:
        msgs.append("success probability outside [0,1]")
    gd = ControlConfig(dt=0.01, k_max=80, method="gdqlc", gd=GdConfig(1, 1.0, lr_schedule="constant"))
    rg = gdqlc_run(m, gi, gd)
    rf = falqon_run(m, gi, ControlConfig(dt=0.01, k_max=80, method="falqon"))
    if np.max(np.abs(rg.beta - rf.beta)) > 1e-12 or np.max(np.abs(rg.e_p - rf.e_p)) > 1e-12:
        msgs.append("gdqlc(L=1, eta=1) does not reduce to falqon")
    if rg.expectation_evals != 80 * 2:
        msgs.append("gdqlc evaluation counter wrong")
    cfg7 = ControlConfig(dt=0.01, k_max=40, method="gdqlc", gd=GdConfig(7, 0.1))
    psi = uniform_state(8)
    e = diagonal_energies(m)
    for k in range(1, 41):
        _, psi, diag = gdqlc_layer(psi, k, e, cfg7)
        if diag.e_dots[diag.chosen] > 0:
            msgs.append(f"selected descent rate positive at layer {k}")
            break
    return ("control loops (monotonicity, reduction, counters)", not msgs, "; ".join(msgs) or "ok")


def run_all(seed: int = 20240809) -> list[CheckResult]:
    """Run every self-check; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    return [
        _check_dense_oracles(rng),
        _check_gradient_identities(rng),
        _check_graphs(rng),
        _check_encodings(rng),
        _check_control(rng),
    ]

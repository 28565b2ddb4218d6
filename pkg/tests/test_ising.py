import numpy as np
import pytest

from qlcbench import (
    Graph,
    IsingModel,
    ProblemKind,
    assign_uniform_weights,
    diagonal_energies,
    encode_problem,
    energy_of_bitstring,
    gen_erdos_renyi,
    gen_random_regular,
    ground_info,
)
from qlcbench.ising import MAX_QUBITS

import oracles

TRIANGLE = Graph(3, ((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))
SINGLE_EDGE = Graph(2, ((0, 1, 1.0),))


def test_encode_maxcut_triangle():
    m = encode_problem(ProblemKind.MAXCUT, TRIANGLE)
    assert m.couplings == {(0, 1): 0.5, (0, 2): 0.5, (1, 2): 0.5}
    assert m.fields == {}
    assert m.constant == -1.5


def test_encode_mincover_single_edge():
    m = encode_problem(ProblemKind.MINCOVER, SINGLE_EDGE)
    assert m.couplings == {(0, 1): 3.0}
    assert m.fields == {0: 2.0, 1: 2.0}
    assert m.constant == 0.0


def test_encode_maxclique_k3():
    # complement of a clique is edgeless: only the vertex-count field term remains
    m = encode_problem(ProblemKind.MAXCLIQUE, TRIANGLE)
    assert m.couplings == {}
    assert m.fields == {0: 1.0, 1: 1.0, 2: 1.0}
    assert m.constant == 0.0


def test_diagonal_triangle_values():
    e = diagonal_energies(encode_problem(ProblemKind.MAXCUT, TRIANGLE))
    assert e[0b000] == 0.0  # zero cut
    assert e[0b001] == -2.0  # cut of size 2
    # enumerate all 8 assignments against the cut oracle
    for b in range(8):
        assert e[b] == pytest.approx(-oracles.cut_weight(TRIANGLE, b), abs=1e-12)


def test_diagonal_mean_is_constant_term():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = oracles.random_model(int(rng.integers(2, 7)), rng)
        assert np.mean(diagonal_energies(m)) == pytest.approx(m.constant, abs=1e-12)


def test_diagonal_matches_dense_oracle():
    rng = np.random.default_rng(6)
    for _ in range(5):
        m = oracles.random_model(4, rng)
        np.testing.assert_allclose(diagonal_energies(m), np.diag(oracles.dense_hp(m)).real, atol=1e-12)


def test_energy_of_bitstring_agrees_exactly():
    rng = np.random.default_rng(7)
    m = oracles.random_model(6, rng)
    e = diagonal_energies(m)
    for b in range(1 << 6):
        assert energy_of_bitstring(m, b) == e[b]
    with pytest.raises(ValueError):
        energy_of_bitstring(m, 1 << 6)


def test_ground_info_triangle():
    gi = ground_info(encode_problem(ProblemKind.MAXCUT, TRIANGLE))
    assert gi.e_min == -2.0
    assert gi.degeneracy == 6
    assert set(gi.optimal_states.tolist()) == {1, 2, 3, 4, 5, 6}


def test_ground_info_single_edge_maxcut():
    gi = ground_info(encode_problem(ProblemKind.MAXCUT, SINGLE_EDGE))
    assert gi.e_min == -1.0
    assert set(gi.optimal_states.tolist()) == {0b01, 0b10}


def test_ground_info_single_edge_mincover():
    # the two single-vertex covers tie; bit set = vertex in the cover
    gi = ground_info(encode_problem(ProblemKind.MINCOVER, SINGLE_EDGE))
    assert set(gi.optimal_states.tolist()) == {0b01, 0b10}
    assert gi.degeneracy == 2


def test_maxcut_energy_is_minus_cut_unit_weights():
    g = gen_random_regular(10, 3, seed=8)
    e = diagonal_energies(encode_problem(ProblemKind.MAXCUT, g))
    for b in range(1 << 10):
        assert e[b] == pytest.approx(-oracles.cut_weight(g, b), abs=1e-9)


def test_weighted_maxcut_energy_offset():
    # the -I term is unweighted, so energy = -cut + (sum w - |E|)/2 exactly
    g = assign_uniform_weights(gen_erdos_renyi(9, 0.5, seed=9), 0.0, 2.0, seed=10)
    e = diagonal_energies(encode_problem(ProblemKind.WEIGHTED_MAXCUT, g))
    offset = (sum(w for _, _, w in g.edges) - g.n_edges) / 2.0
    for b in range(1 << 9):
        assert e[b] == pytest.approx(offset - oracles.cut_weight(g, b), abs=1e-9)


@pytest.mark.parametrize("seed", range(4))
def test_maxclique_ground_states_are_max_cliques(seed):
    g = gen_erdos_renyi(8, 0.5, seed=seed)
    gi = ground_info(encode_problem(ProblemKind.MAXCLIQUE, g))
    assert set(gi.optimal_states.tolist()) == oracles.max_clique_indicators(g)


@pytest.mark.parametrize("seed", range(4))
def test_mincover_ground_states_are_min_covers(seed):
    g = gen_erdos_renyi(8, 0.5, seed=seed + 20)
    gi = ground_info(encode_problem(ProblemKind.MINCOVER, g))
    assert set(gi.optimal_states.tolist()) == oracles.min_cover_indicators(g)


def test_model_validation_and_size_cap():
    with pytest.raises(ValueError):
        IsingModel(2, {(1, 0): 1.0}, {})
    with pytest.raises(ValueError):
        IsingModel(2, {}, {5: 1.0})
    with pytest.raises(ValueError):
        diagonal_energies(IsingModel(MAX_QUBITS + 1, {}, {}))


def test_json_round_trip():
    m = encode_problem(ProblemKind.MINCOVER, TRIANGLE)
    m2 = IsingModel.from_json(m.to_json())
    assert m2 == m

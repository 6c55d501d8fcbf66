# Standard Library Imports
from itertools import combinations

# Third party imports
import numpy as np
import pytest

# Application level imports
from pqc_randomness.circuit import CircuitSpec, compile_circuit, run_circuit
from pqc_randomness.entanglement import (cue_mean, cue_std_q1, ensemble_q_values, ensemble_stats, reduced_purity,
                                         scott_q, subset_purities, validate_subset)
from pqc_randomness.errors import ArgumentError
from pqc_randomness.oracles import HaarSampler, brute_force_reduced_density
from pqc_randomness.sampling import FixedParameterSampler, ParameterSampler, circuit_ensemble
from pqc_randomness.state import StateVector, apply_cnot, apply_hadamard, apply_rotation, zero_state


def ghz(n: int) -> StateVector:
    state = apply_hadamard(zero_state(n), 0)
    for qubit in range(1, n):
        apply_cnot(state, 0, qubit)
    return state

def epr_pairs(n_pairs: int) -> StateVector:
    bell = np.sqrt(0.5) * np.array([1, 0, 0, 1], dtype=complex)
    amplitudes = np.ones(1, dtype=complex)
    for _ in range(n_pairs):
        amplitudes = np.kron(amplitudes, bell)
    return StateVector(amplitudes)

def test_ghz6():
    state = ghz(6)

    assert scott_q(state, 1) == pytest.approx(1.0, abs=1e-12)
    assert scott_q(state, 2) == pytest.approx(2 / 3, abs=1e-12)
    assert scott_q(state, 3) == pytest.approx(4 / 7, abs=1e-12)

def test_epr6():
    state = epr_pairs(3)

    assert scott_q(state, 1) == pytest.approx(1.0, abs=1e-12)
    assert scott_q(state, 2) == pytest.approx(0.8, abs=1e-12)

def test_product_states_have_no_entanglement():
    state = zero_state(5)
    for qubit in range(5):
        apply_rotation(state, "X", qubit, 0.3 * qubit + 0.1)
        apply_rotation(state, "Y", qubit, 1.7 - 0.2 * qubit)

    assert scott_q(state, 1) == pytest.approx(0.0, abs=1e-12)
    assert scott_q(state, 2) == pytest.approx(0.0, abs=1e-12)

def test_order_bounds():
    with pytest.raises(ArgumentError) as e:
        scott_q(ghz(5), 3)
    assert "1 <= m <= 2" in str(e)

    with pytest.raises(ArgumentError):
        scott_q(ghz(4), 0)

def test_subset_validation():
    assert validate_subset(4, [2, 0]) == (0, 2)

    with pytest.raises(ArgumentError) as e:
        validate_subset(4, [1, 1])
    assert "repeats a qubit" in str(e)

    with pytest.raises(ArgumentError) as e:
        validate_subset(4, [0, 4])
    assert "outside [0, 4)" in str(e)

    with pytest.raises(ArgumentError):
        validate_subset(4, [])

def test_subset_purities_are_lexicographic():
    purities = subset_purities(epr_pairs(2), 2)

    assert [p.subset for p in purities] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert [round(p.purity, 12) for p in purities] == [1.0, 0.25, 0.25, 0.25, 0.25, 1.0]

def test_purity_matches_brute_force():
    sampler = HaarSampler(5, seed=2)
    for _ in range(5):
        state = sampler.next_state()
        for subset in [(0,), (3,), (1, 4), (0, 2, 3)]:
            rho = brute_force_reduced_density(state, subset)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
            assert reduced_purity(state, subset) == pytest.approx(np.sum(np.abs(rho) ** 2), abs=1e-12)

def test_local_rotation_pass_leaves_entanglement_unchanged():
    n = 6
    a1 = compile_circuit(CircuitSpec.parse(f"A1:RIN:{n}:1"))
    a2 = compile_circuit(CircuitSpec.parse(f"A2:RIN:{n}:1"))
    rng = np.random.default_rng(17)
    for _ in range(100):
        params = rng.uniform(0, 2 * np.pi, size=a2.n_params)
        before = run_circuit(a1, params[:a1.n_params], n)
        after = run_circuit(a2, params, n)
        for m in (1, 2, 3):
            assert abs(scott_q(before, m) - scott_q(after, m)) < 1e-10

def test_cue_reference_values():
    assert cue_mean(8, 1) == pytest.approx(254 / 257)
    assert cue_mean(4, 2) == pytest.approx(12 / 17)
    assert cue_std_q1(3) == pytest.approx(0.155698, abs=1e-6)

    with pytest.raises(ArgumentError):
        cue_mean(4, 3)

def test_fixed_parameters_give_constant_q():
    spec = CircuitSpec.parse("A1:LIN:4:2")
    stats = ensemble_stats(spec, 1, 10, FixedParameterSampler(value=0.0))

    assert stats.mean == pytest.approx(0.0, abs=1e-12)
    assert stats.std_dev == pytest.approx(0.0, abs=1e-12)
    assert stats.cue_gap == pytest.approx(1.0, abs=1e-12)

def test_ensemble_statistics():
    spec = CircuitSpec.parse("A1:RIN:4:3")
    stats = ensemble_stats(spec, 1, 400, ParameterSampler(seed=3))

    assert stats.n_samples == 400
    assert 0.0 < stats.mean < 1.0
    assert stats.std_dev > 0.0
    assert stats.cue_mean == pytest.approx(14 / 17)
    assert stats.cue_std == pytest.approx(cue_std_q1(4))
    assert stats.std_error == pytest.approx(stats.std_dev / 20)

def test_too_few_samples():
    with pytest.raises(ArgumentError) as e:
        ensemble_stats(CircuitSpec.parse("A1:LIN:4:1"), 1, 1, ParameterSampler())

    assert "at least 2 samples" in str(e)

def test_values_do_not_depend_on_workers():
    ensemble = circuit_ensemble(CircuitSpec.parse("A2:ST:4:2"), ParameterSampler(seed=9))

    inline = ensemble_q_values(ensemble, 2, 1100, workers=1)
    pooled = ensemble_q_values(ensemble, 2, 1100, workers=2)
    assert np.array_equal(inline, pooled)

@pytest.mark.slow
def test_linear_and_all_to_all_coincide():
    for n in (4, 6, 8):
        for l in (1, 3):
            for m in (1, 2):
                shared = ParameterSampler(seed=1, stream_key=f"shared:{n}:{l}")
                linear = ensemble_stats(CircuitSpec.parse(f"A1:LIN:{n}:{l}"), m, 10_000, shared)
                full = ensemble_stats(CircuitSpec.parse(f"A1:ATA:{n}:{l}"), m, 10_000, shared)
                combined = np.hypot(linear.std_error, full.std_error)
                assert abs(linear.mean - full.mean) < 3 * combined, f"n={n} l={l} m={m}"

@pytest.mark.slow
def test_ring_approaches_cue():
    ring = ensemble_stats(CircuitSpec.parse("A1:RIN:8:5"), 1, 10_000, ParameterSampler(seed=4), workers=2)
    star = ensemble_stats(CircuitSpec.parse("A1:ST:8:5"), 1, 10_000, ParameterSampler(seed=4), workers=2)

    assert abs(ring.mean - 254 / 257) < 0.01
    assert abs(star.mean - star.cue_mean) > abs(ring.mean - ring.cue_mean)

def test_bell_pair_next_to_zero():
    state = apply_cnot(apply_hadamard(zero_state(3), 0), 0, 1)

    assert [round(p.purity, 12) for p in subset_purities(state, 1)] == [0.5, 0.5, 1.0]
    assert scott_q(state, 1) == pytest.approx(2 / 3, abs=1e-12)

def test_three_qubit_purities_match_complements():
    sampler = HaarSampler(3, seed=6)
    for _ in range(20):
        state = sampler.next_state()
        singles = subset_purities(state, 1)
        pairs = subset_purities(state, 2)

        # pairs are lexicographic, so pair k is the complement of qubit 2 - k
        for single, pair in zip(singles, reversed(pairs)):
            assert set(single.subset).isdisjoint(pair.subset)
            assert single.purity == pytest.approx(pair.purity, abs=1e-12)
        from_pairs = 2 * (1 - np.mean([pair.purity for pair in pairs]))
        assert scott_q(state, 1) == pytest.approx(from_pairs, abs=1e-12)

def test_purity_matches_brute_force_on_every_subset():
    for n in range(2, 7):
        sampler = HaarSampler(n, seed=n)
        subsets = [subset for size in range(1, n + 1) for subset in combinations(range(n), size)]
        for _ in range(100):
            state = sampler.next_state()
            for subset in subsets:
                rho = brute_force_reduced_density(state, subset)
                assert abs(reduced_purity(state, subset) - np.sum(np.abs(rho) ** 2)) < 1e-10

def test_cue_deviation_shrinks_with_qubits():
    deviations = [cue_std_q1(n) for n in range(3, 13)]

    assert all(a > b for a, b in zip(deviations, deviations[1:]))
    assert cue_std_q1(8) < 0.02
    assert cue_mean(2, 1) == pytest.approx(2 / 5)

def test_three_qubit_graphs_coincide_up_to_relabeling():
    def undirected(topology: str, relabel=(0, 1, 2)):
        edges = compile_circuit(CircuitSpec.parse(f"A1:{topology}:3:1")).cnot_edges()
        return {frozenset((relabel[a], relabel[b])) for a, b in edges}

    assert undirected("RIN") == undirected("ATA")
    assert undirected("LIN", relabel=(1, 0, 2)) == undirected("ST")

@pytest.mark.slow
def test_three_qubit_degenerate_pairs_agree_at_depth():
    for first, second in (("LIN", "ST"), ("RIN", "ATA")):
        a = ensemble_stats(CircuitSpec.parse(f"A1:{first}:3:5"), 1, 10_000, ParameterSampler(seed=2))
        b = ensemble_stats(CircuitSpec.parse(f"A1:{second}:3:5"), 1, 10_000, ParameterSampler(seed=3))
        assert abs(a.mean - b.mean) < 0.02, f"{first}/{second}"
        assert abs(a.std_dev - b.std_dev) < 0.02, f"{first}/{second}"

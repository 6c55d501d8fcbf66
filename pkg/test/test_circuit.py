# Third party imports
import numpy as np
import pytest

# Application level imports
from pqc_randomness.circuit import (Ansatz, CircuitSpec, Topology, compile_circuit, connection_edges, run_circuit,
                                    run_circuit_batch, table_counts)
from pqc_randomness.entanglement import scott_q
from pqc_randomness.errors import ArgumentError
from pqc_randomness.state import GateKind, apply_rotation, zero_state


def cnots_per_layer(topology: Topology, n: int) -> int:
    return {
        Topology.NO_CONNECTIONS: 0,
        Topology.LINEAR: n - 1,
        Topology.RING: n,
        Topology.STAR: n - 1,
        Topology.ALL_TO_ALL: n * (n - 1) // 2,
    }[topology]

def all_specs(qubits=range(2, 9), layers=range(1, 6)):
    for ansatz in Ansatz:
        for topology in Topology:
            for n in qubits:
                if n < topology.min_qubits:
                    continue
                for l in layers:
                    yield CircuitSpec(ansatz, topology, n, l)

def test_gate_counts_match_closed_forms():
    for spec in all_specs():
        n, l = spec.n_qubits, spec.n_layers
        rotations = (2 if spec.ansatz is Ansatz.A1 else 4) * n * l
        cnots = cnots_per_layer(spec.topology, n) * l
        counts = compile_circuit(spec).counts()

        assert counts.cnots == cnots, str(spec)
        assert counts.rotations == rotations, str(spec)
        assert counts.total == cnots + rotations, str(spec)
        assert counts.parameters == rotations, str(spec)
        assert counts == table_counts(spec), str(spec)

def test_every_slot_read_once():
    for spec in all_specs(qubits=range(3, 6), layers=range(1, 3)):
        sequence = compile_circuit(spec)
        slots = [gate.param_slot for gate in sequence if gate.kind.is_rotation]
        assert slots == list(range(sequence.n_params))

def test_a1_ring_3_qubits_one_layer():
    sequence = compile_circuit(CircuitSpec.parse("A1:RIN:3:1"))
    kinds = [gate.kind for gate in sequence]

    assert kinds == [GateKind.RX, GateKind.RY] * 3 + [GateKind.CNOT] * 3
    assert sequence.cnot_edges() == [(0, 1), (1, 2), (2, 0)]
    assert sequence.n_params == 6

def test_a2_all_to_all_4_qubits_two_layers():
    counts = compile_circuit(CircuitSpec.parse("A2:ATA:4:2")).counts()

    assert counts.cnots == 12
    assert counts.rotations == 32
    assert counts.total == 44
    assert counts.parameters == 32

def test_connection_edges():
    assert connection_edges(Topology.NO_CONNECTIONS, 4) == []
    assert connection_edges(Topology.LINEAR, 4) == [(0, 1), (1, 2), (2, 3)]
    assert connection_edges(Topology.RING, 4) == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert connection_edges(Topology.STAR, 4) == [(0, 1), (0, 2), (0, 3)]
    assert connection_edges("ata", 4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

def test_ring_needs_three_qubits():
    with pytest.raises(ArgumentError) as e:
        CircuitSpec(Ansatz.A1, Topology.RING, 2, 1)

    assert "at least 3 qubits" in str(e)

def test_spec_parse_and_str():
    spec = CircuitSpec.parse("a2:lin:5:4")

    assert spec.ansatz is Ansatz.A2
    assert spec.topology is Topology.LINEAR
    assert str(spec) == "A2:LIN:5:4"
    assert CircuitSpec.parse(str(spec)) == spec
    assert CircuitSpec("1", "all_to_all", 3, 1).topology is Topology.ALL_TO_ALL

@pytest.mark.parametrize("text", ["A1:RIN:6", "A3:LIN:4:1", "A1:MESH:4:1", "A1:LIN:four:1", "A1:LIN:4:0"])
def test_spec_parse_errors(text):
    with pytest.raises(ArgumentError):
        CircuitSpec.parse(text)

def test_wrong_parameter_count():
    sequence = compile_circuit(CircuitSpec.parse("A1:LIN:3:1"))

    with pytest.raises(ArgumentError) as e:
        run_circuit(sequence, np.zeros(5), 3)

    assert "expected 6 parameters" in str(e)

def test_zero_parameters_give_zero_state():
    sequence = compile_circuit(CircuitSpec.parse("A2:ATA:4:3"))
    state = run_circuit(sequence, np.zeros(sequence.n_params), 4)

    assert np.allclose(state.amplitudes, zero_state(4).amplitudes)

def test_no_connections_is_product_of_rotations():
    spec = CircuitSpec.parse("A1:NC:3:1")
    params = np.array([0.3, 1.1, 2.0, 0.4, 5.0, 0.9])
    state = run_circuit(compile_circuit(spec), params, 3)

    expected = zero_state(3)
    for qubit in range(3):
        apply_rotation(expected, "X", qubit, params[2 * qubit])
        apply_rotation(expected, "Y", qubit, params[2 * qubit + 1])

    assert np.allclose(state.amplitudes, expected.amplitudes, atol=1e-14)

def test_batch_matches_single_runs():
    spec = CircuitSpec.parse("A2:RIN:4:2")
    sequence = compile_circuit(spec)
    params = np.random.default_rng(5).uniform(0, 2 * np.pi, size=(4, sequence.n_params))
    batch = run_circuit_batch(sequence, params, 4)

    for row in range(4):
        assert np.allclose(batch[row], run_circuit(sequence, params[row], 4).amplitudes, rtol=0, atol=1e-15)

def test_ghz_construction_on_all_to_all():
    spec = CircuitSpec.parse("A1:ATA:4:1")
    sequence = compile_circuit(spec)
    params = np.zeros(sequence.n_params)
    params[0], params[1] = -np.pi / 2, -np.pi / 4

    # 8 rotations, then the CNOTs controlled by qubit 0
    ghz = run_circuit(sequence.truncated(11), params, 4)
    expected = np.zeros(16, dtype=complex)
    expected[0] = expected[15] = 1j * np.sqrt(0.5)
    assert np.allclose(ghz.amplitudes, expected, atol=1e-12)
    assert scott_q(ghz, 1) == pytest.approx(1.0, abs=1e-10)

    final = run_circuit(sequence, params, 4)
    assert scott_q(final, 1) == pytest.approx(0.5, abs=1e-10)

""" circuit module - compiles (ansatz, topology, n, l) into a concrete gate sequence

Two ansatze are built over five connectivity graphs.  One layer of A1 is an RX, RY pair on every qubit
followed by the CNOT block of the topology; A2 appends a second RX, RY pass after the CNOT block.
Parameter slots are numbered in emission order: layer major, qubit ascending, RX before RY.

CNOT orientation: the lower listed vertex controls.  Linear and Ring chain qubit i into i + 1 (the ring
closes with control n - 1, target 0), the Star hub is qubit 0, and All-to-all emits (i, j) for i < j in
lexicographic order.  CNOTs on shared qubits do not commute, so this order is part of the circuit.

Gate counts per layer:

    topology         CNOTs        A1 gates         A2 gates
    No Connections   0            2n               4n
    Linear           n - 1        (n - 1) + 2n     (n - 1) + 4n
    Ring             n            n + 2n           n + 4n
    Star             n - 1        (n - 1) + 2n     (n - 1) + 4n
    All-to-all       n(n - 1)/2   n(n-1)/2 + 2n    n(n-1)/2 + 4n

MODULE CLASSES
--------------
Ansatz, Topology - the circuit family axes
CircuitSpec - ansatz, topology, n, l; text form "A1:RIN:6:3"
GateCounts - CNOT, rotation, total and parameter counts
GateSequence - compiled gates plus parameter count

MODULE FUNCTIONS
----------------
connection_edges(topology, n) -> List[Tuple[int, int]]
compile_circuit(spec) -> GateSequence
table_counts(spec) -> GateCounts
run_circuit(seq, params, n) -> StateVector
run_circuit_batch(seq, params, n) -> np.ndarray
"""

# Standard Library Imports
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Tuple

# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.errors import ArgumentError
from pqc_randomness.state import (Gate, GateKind, StateVector, cnot_batch, hadamard_batch, pauli_x_batch,
                                  rotate_batch, zero_states)

MIN_QUBITS = 2


class Ansatz(str, Enum):
    A1 = "A1"
    A2 = "A2"

    @classmethod
    def parse(cls, text: str) -> "Ansatz":
        if isinstance(text, cls):
            return text
        token = str(text).strip().upper()
        if token in ("1", "2"):
            token = f"A{token}"
        try:
            return cls(token)
        except ValueError:
            msg = f"unknown ansatz {text!r}; expected 1, 2, A1 or A2."
            logger.error(msg)
            raise ArgumentError(msg) from None


class Topology(str, Enum):
    NO_CONNECTIONS = "NC"
    LINEAR = "LIN"
    RING = "RIN"
    STAR = "ST"
    ALL_TO_ALL = "ATA"

    @property
    def min_qubits(self) -> int:
        # n = 2 would give the Ring a duplicate of the Linear edge
        return 3 if self is Topology.RING else MIN_QUBITS

    @classmethod
    def parse(cls, text: str) -> "Topology":
        if isinstance(text, cls):
            return text
        token = str(text).strip().upper().replace("-", "_").replace(" ", "_")
        aliases = {member.name: member for member in cls}
        aliases.update({"ALLTOALL": cls.ALL_TO_ALL, "NOCONNECTIONS": cls.NO_CONNECTIONS})
        if token in aliases:
            return aliases[token]
        try:
            return cls(token)
        except ValueError:
            msg = f"unknown topology {text!r}; expected one of nc, lin, rin, st, ata."
            logger.error(msg)
            raise ArgumentError(msg) from None


@dataclass(frozen=True)
class CircuitSpec():
    """ a circuit family: ansatz, topology, qubit count and layer count

    The canonical text form "A1:RIN:6:3" is used on the command line and in result files.
    """
    ansatz: Ansatz
    topology: Topology
    n_qubits: int
    n_layers: int

    def __post_init__(self):
        object.__setattr__(self, "ansatz", Ansatz.parse(self.ansatz))
        object.__setattr__(self, "topology", Topology.parse(self.topology))
        if not isinstance(self.n_qubits, (int, np.integer)) or self.n_qubits < self.topology.min_qubits:
            msg = f"{self.topology.value} circuits need at least {self.topology.min_qubits} qubits.  Instead, {self.n_qubits} was passed."
            logger.error(msg)
            raise ArgumentError(msg)
        if not isinstance(self.n_layers, (int, np.integer)) or self.n_layers < 1:
            msg = f"a circuit needs at least one layer.  Instead, {self.n_layers} was passed."
            logger.error(msg)
            raise ArgumentError(msg)

    @classmethod
    def parse(cls, text: str) -> "CircuitSpec":
        """ parse 'A1:RIN:6:3' """
        parts = str(text).strip().split(":")
        if len(parts) != 4:
            msg = f"circuit spec {text!r} must look like ansatz:topology:n:l, e.g. A1:RIN:6:3."
            logger.error(msg)
            raise ArgumentError(msg)
        try:
            n_qubits, n_layers = int(parts[2]), int(parts[3])
        except ValueError:
            msg = f"circuit spec {text!r}: qubit and layer counts must be integers."
            logger.error(msg)
            raise ArgumentError(msg) from None
        return cls(Ansatz.parse(parts[0]), Topology.parse(parts[1]), n_qubits, n_layers)

    @property
    def n_params(self) -> int:
        per_qubit = 2 if self.ansatz is Ansatz.A1 else 4
        return per_qubit * self.n_qubits * self.n_layers

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def __str__(self) -> str:
        return f"{self.ansatz.value}:{self.topology.value}:{self.n_qubits}:{self.n_layers}"


@dataclass(frozen=True)
class GateCounts():
    cnots: int
    rotations: int
    total: int
    parameters: int


@dataclass(frozen=True)
class GateSequence():
    """ an immutable compiled circuit

    Fields
    ------
    gates: Tuple[Gate, ...]
    n_params: int
        - length of the parameter vector; every slot in [0, n_params) is read by exactly one rotation
    """
    gates: Tuple[Gate, ...]
    n_params: int

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def counts(self) -> GateCounts:
        cnots = sum(1 for gate in self.gates if gate.kind is GateKind.CNOT)
        rotations = sum(1 for gate in self.gates if gate.kind.is_rotation)
        return GateCounts(cnots, rotations, len(self.gates), self.n_params)

    def cnot_edges(self) -> List[Tuple[int, int]]:
        return [(gate.control, gate.target) for gate in self.gates if gate.kind is GateKind.CNOT]

    def truncated(self, n_gates: int) -> "GateSequence":
        """ the first n_gates gates, keeping the parameter count so full parameter vectors still apply """
        return GateSequence(self.gates[:n_gates], self.n_params)


def connection_edges(topology: Topology, n: int) -> List[Tuple[int, int]]:
    """ Ordered (control, target) pairs of one CNOT block

    Raises
    ------
    ArgumentError
        - n below the topology minimum (3 for Ring, 2 otherwise)
    """
    topology = Topology.parse(topology)
    if n < topology.min_qubits:
        msg = f"{topology.value} connections need at least {topology.min_qubits} qubits.  Instead, {n} was passed."
        logger.error(msg)
        raise ArgumentError(msg)

    if topology is Topology.NO_CONNECTIONS:
        return []
    if topology is Topology.LINEAR:
        return [(i, i + 1) for i in range(n - 1)]
    if topology is Topology.RING:
        return [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    if topology is Topology.STAR:
        return [(0, i) for i in range(1, n)]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _rotation_pass(n: int, first_slot: int) -> List[Gate]:
    gates = []
    slot = first_slot
    for qubit in range(n):
        gates.append(Gate(GateKind.RX, qubit, param_slot=slot))
        gates.append(Gate(GateKind.RY, qubit, param_slot=slot + 1))
        slot += 2
    return gates


@lru_cache(maxsize=256)
def compile_circuit(spec: CircuitSpec) -> GateSequence:
    """ Compile a spec into its gate sequence

    Per layer A1 emits RX, RY on each qubit ascending, then the CNOT block from connection_edges; A2
    then repeats the rotation pass.  Results are cached; GateSequence is immutable.
    """
    n = spec.n_qubits
    edges = connection_edges(spec.topology, n)
    cnot_block = [Gate(GateKind.CNOT, target, control=control) for control, target in edges]

    gates = []
    slot = 0
    for _ in range(spec.n_layers):
        gates.extend(_rotation_pass(n, slot))
        slot += 2 * n
        gates.extend(cnot_block)
        if spec.ansatz is Ansatz.A2:
            gates.extend(_rotation_pass(n, slot))
            slot += 2 * n

    logger.debug(f"compiled {spec}: {len(gates)} gates, {slot} parameters")
    return GateSequence(tuple(gates), slot)


def table_counts(spec: CircuitSpec) -> GateCounts:
    """ closed form CNOT, rotation, total and parameter counts of a spec """
    n, l = spec.n_qubits, spec.n_layers
    per_layer = {
        Topology.NO_CONNECTIONS: 0,
        Topology.LINEAR: n - 1,
        Topology.RING: n,
        Topology.STAR: n - 1,
        Topology.ALL_TO_ALL: n * (n - 1) // 2,
    }[spec.topology]
    rotations_per_layer = 2 * n if spec.ansatz is Ansatz.A1 else 4 * n
    return GateCounts(
        cnots=per_layer * l,
        rotations=rotations_per_layer * l,
        total=(per_layer + rotations_per_layer) * l,
        parameters=rotations_per_layer * l,
    )


def run_circuit_batch(seq: GateSequence, params: np.ndarray, n: int) -> np.ndarray:
    """ Evolve one |0...0> per parameter row through seq

    Parameters
    ----------
    seq: GateSequence
    params: np.ndarray
        - shape (batch, seq.n_params), radians
    n: int
        - qubit count

    Raises
    ------
    ArgumentError
        - params is not (batch, seq.n_params)

    Returns
    -------
    np.ndarray
        - (batch, 2**n) amplitudes
    """
    params = np.asarray(params, dtype=np.float64)
    if params.ndim != 2 or params.shape[1] != seq.n_params:
        msg = f"expected a parameter array of shape (batch, {seq.n_params}).  Instead, shape {params.shape} was passed."
        logger.error(msg)
        raise ArgumentError(msg)

    amplitudes = zero_states(params.shape[0], n)
    for gate in seq.gates:
        if gate.kind.is_rotation:
            rotate_batch(amplitudes, n, gate.axis, gate.target, params[:, gate.param_slot])
        elif gate.kind is GateKind.CNOT:
            cnot_batch(amplitudes, n, gate.control, gate.target)
        elif gate.kind is GateKind.H:
            hadamard_batch(amplitudes, n, gate.target)
        else:
            pauli_x_batch(amplitudes, n, gate.target)
    return amplitudes


def run_circuit(seq: GateSequence, params, n: int) -> StateVector:
    """ |psi(params)> = seq applied to |0...0>; raises ArgumentError when len(params) != seq.n_params """
    params = np.asarray(params, dtype=np.float64)
    if params.ndim != 1 or params.size != seq.n_params:
        msg = f"expected {seq.n_params} parameters.  Instead, {params.size} were passed."
        logger.error(msg)
        raise ArgumentError(msg)
    for gate in seq.gates:
        qubits = (gate.target,) if gate.control is None else (gate.control, gate.target)
        if max(qubits) >= n:
            msg = f"{gate} does not fit on {n} qubits."
            logger.error(msg)
            raise ArgumentError(msg)
    return StateVector(run_circuit_batch(seq, params[None, :], n)[0])

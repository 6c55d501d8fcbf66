""" state module - dense state vectors and the gate kernels that act on them

Amplitudes are double precision complex.  Qubit 0 is the most significant bit of the amplitude index,
so |10> (qubit 0 set) is index 2 on two qubits and qubit 0 is the top wire of a circuit drawing.

Rotations follow the exponent convention without a half angle:
    RX(theta) = exp(-i theta X) = cos(theta) I - i sin(theta) X
    RY(theta) = exp(-i theta Y) = cos(theta) I - i sin(theta) Y
so both have period 2 pi, and RX(theta + pi) = -RX(theta).

Kernels work in place on a (batch, 2**n) amplitude array by reshaping it so the target bit becomes its
own axis; only amplitude pairs that differ in the target bit are mixed.  The single state functions
below are a batch of one over the same kernels, so a state evolved alone and the same state evolved in
a batch carry identical amplitudes.

MODULE CLASSES
--------------
Axis - rotation axis, X or Y
GateKind - RX, RY, CNOT, H, X
Gate - one concrete gate of a circuit
StateVector - 2**n unit norm amplitudes

MODULE FUNCTIONS
----------------
zero_state(n) -> StateVector
basis_state(n, index) -> StateVector
apply_rotation(state, axis, qubit, theta) -> StateVector
apply_cnot(state, control, target) -> StateVector
apply_hadamard(state, qubit) -> StateVector
apply_pauli_x(state, qubit) -> StateVector
fidelity(a, b) -> float
"""

# Standard Library Imports
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.errors import ArgumentError, CapacityError, QubitIndexError

MAX_QUBITS = 16

_SQRT_HALF = np.sqrt(0.5)


class Axis(str, Enum):
    X = "X"
    Y = "Y"


class GateKind(str, Enum):
    RX = "RX"
    RY = "RY"
    CNOT = "CNOT"
    H = "H"
    X = "X"

    @property
    def is_rotation(self) -> bool:
        return self in (GateKind.RX, GateKind.RY)


@dataclass(frozen=True)
class Gate():
    """ one concrete gate

    Fields
    ------
    kind: GateKind
    target: int
        - the qubit acted on (the flipped qubit for CNOT)
    control: Optional[int]
        - CNOT only
    param_slot: Optional[int]
        - index into the parameter vector; present exactly for RX and RY
    """
    kind: GateKind
    target: int
    control: Optional[int] = None
    param_slot: Optional[int] = None

    def __post_init__(self):
        if (self.control is not None) != (self.kind is GateKind.CNOT):
            msg = f"{self.kind.value} gate on qubit {self.target}: a control qubit is required for CNOT and only for CNOT."
            logger.error(msg)
            raise ArgumentError(msg)
        if self.control is not None and self.control == self.target:
            msg = f"CNOT control and target must differ; both are qubit {self.target}."
            logger.error(msg)
            raise ArgumentError(msg)
        if (self.param_slot is not None) != self.kind.is_rotation:
            msg = f"{self.kind.value} gate on qubit {self.target}: a parameter slot is required for RX/RY and only for RX/RY."
            logger.error(msg)
            raise ArgumentError(msg)

    @property
    def axis(self) -> Axis:
        return Axis.X if self.kind is GateKind.RX else Axis.Y

    def __str__(self) -> str:
        if self.kind is GateKind.CNOT:
            return f"CNOT({self.control}->{self.target})"
        if self.kind.is_rotation:
            return f"{self.kind.value}(q{self.target}, theta[{self.param_slot}])"
        return f"{self.kind.value}(q{self.target})"


def _check_capacity(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_QUBITS:
        msg = f"registers of 1 to {MAX_QUBITS} qubits are supported.  Instead, {n} was requested."
        logger.error(msg)
        raise CapacityError(msg)


class StateVector():
    """ 2**n complex amplitudes of unit norm

    INSTANCE VARIABLES
    ------------------
    n_qubits: int
    amplitudes: np.ndarray
        - contiguous complex128 array of length 2**n_qubits; gates update it in place
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes: Union[np.ndarray, list]):
        values = np.array(amplitudes, dtype=np.complex128).ravel()
        n = int(values.size).bit_length() - 1
        if values.size == 0 or (1 << n) != values.size:
            msg = f"a state vector needs 2**n amplitudes.  Instead, {values.size} were passed."
            logger.error(msg)
            raise ArgumentError(msg)
        _check_capacity(n)
        self.n_qubits = n
        self.amplitudes = np.ascontiguousarray(values)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy())

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, norm={self.norm():.15f})"


def zero_state(n: int) -> StateVector:
    """ |0...0> on n qubits; raises CapacityError outside [1, MAX_QUBITS] """
    _check_capacity(n)
    amplitudes = np.zeros(1 << n, dtype=np.complex128)
    amplitudes[0] = 1.0
    return StateVector(amplitudes)


def basis_state(n: int, index: int) -> StateVector:
    """ the computational basis state |index> on n qubits, qubit 0 being the most significant bit """
    _check_capacity(n)
    if not 0 <= index < (1 << n):
        msg = f"basis index {index} does not exist on {n} qubits."
        logger.error(msg)
        raise ArgumentError(msg)
    amplitudes = np.zeros(1 << n, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def zero_states(batch: int, n: int) -> np.ndarray:
    """ a (batch, 2**n) array with every row |0...0> """
    _check_capacity(n)
    amplitudes = np.zeros((batch, 1 << n), dtype=np.complex128)
    amplitudes[:, 0] = 1.0
    return amplitudes


# ----------------------------------------------------------------------------------------------------
# batch kernels: amplitudes has shape (batch, 2**n) and is C contiguous, so every reshape is a view
# ----------------------------------------------------------------------------------------------------

def _pair_view(amplitudes: np.ndarray, n: int, qubit: int) -> np.ndarray:
    return amplitudes.reshape(amplitudes.shape[0], 1 << qubit, 2, 1 << (n - qubit - 1))


def rotate_batch(amplitudes: np.ndarray, n: int, axis: Axis, qubit: int, theta) -> None:
    """ apply RX/RY(theta) on qubit to every row; theta is a scalar or one angle per row """
    view = _pair_view(amplitudes, n, qubit)
    theta = np.asarray(theta, dtype=np.float64)
    c = np.cos(theta)
    s = np.sin(theta)
    if theta.ndim:
        c = c[:, None, None]
        s = s[:, None, None]
    a0 = view[:, :, 0, :].copy()
    a1 = view[:, :, 1, :].copy()
    if axis is Axis.X:
        view[:, :, 0, :] = c * a0 - 1j * s * a1
        view[:, :, 1, :] = c * a1 - 1j * s * a0
    else:
        view[:, :, 0, :] = c * a0 - s * a1
        view[:, :, 1, :] = c * a1 + s * a0


def cnot_batch(amplitudes: np.ndarray, n: int, control: int, target: int) -> None:
    """ flip target in every amplitude whose control bit is 1 """
    tensor = amplitudes.reshape((amplitudes.shape[0],) + (2,) * n)
    index = [slice(None)] * (n + 1)
    index[control + 1] = 1
    controlled = tensor[tuple(index)]
    # the control axis is gone from the view
    axis = target + 1 if target < control else target
    controlled[...] = np.flip(controlled, axis=axis).copy()


def hadamard_batch(amplitudes: np.ndarray, n: int, qubit: int) -> None:
    view = _pair_view(amplitudes, n, qubit)
    a0 = view[:, :, 0, :].copy()
    a1 = view[:, :, 1, :].copy()
    view[:, :, 0, :] = _SQRT_HALF * (a0 + a1)
    view[:, :, 1, :] = _SQRT_HALF * (a0 - a1)


def pauli_x_batch(amplitudes: np.ndarray, n: int, qubit: int) -> None:
    view = _pair_view(amplitudes, n, qubit)
    view[...] = view[:, :, ::-1, :].copy()


# ----------------------------------------------------------------------------------------------------
# single state operations
# ----------------------------------------------------------------------------------------------------

def _check_qubit(state: StateVector, qubit: int, role: str = "qubit") -> None:
    if not isinstance(qubit, (int, np.integer)) or not 0 <= qubit < state.n_qubits:
        msg = f"{role} index {qubit} is out of range for a {state.n_qubits} qubit state."
        logger.error(msg)
        raise QubitIndexError(msg)


def apply_rotation(state: StateVector, axis: Union[Axis, str], qubit: int, theta: float) -> StateVector:
    """ Apply exp(-i theta sigma_axis) to qubit, in place

    Parameters
    ----------
    state: StateVector
        - updated in place and returned
    axis: Axis or 'X' / 'Y'
    qubit: int
    theta: float
        - radians, no half angle

    Raises
    ------
    QubitIndexError
        - qubit outside [0, n_qubits)
    ArgumentError
        - theta is not finite, or axis is not X or Y
    """
    _check_qubit(state, qubit)
    try:
        axis = Axis(axis)
    except ValueError:
        msg = f"rotation axis must be X or Y.  Instead, {axis!r} was passed."
        logger.error(msg)
        raise ArgumentError(msg) from None
    if not np.isfinite(theta):
        msg = f"rotation angle must be finite.  Instead, {theta} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    rotate_batch(state.amplitudes[None, :], state.n_qubits, axis, qubit, float(theta))
    return state


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    """ Apply CNOT(control -> target) in place; raises ArgumentError when control == target """
    _check_qubit(state, control, "control")
    _check_qubit(state, target, "target")
    if control == target:
        msg = f"CNOT control and target must differ; both are qubit {control}."
        logger.error(msg)
        raise ArgumentError(msg)
    cnot_batch(state.amplitudes[None, :], state.n_qubits, control, target)
    return state


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    hadamard_batch(state.amplitudes[None, :], state.n_qubits, qubit)
    return state


def apply_pauli_x(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    pauli_x_batch(state.amplitudes[None, :], state.n_qubits, qubit)
    return state


def fidelity(a: StateVector, b: StateVector) -> float:
    """ |<a|b>|**2, clipped to 1; raises ArgumentError when the qubit counts differ """
    if a.n_qubits != b.n_qubits:
        msg = f"fidelity needs states of equal size.  Instead, {a.n_qubits} and {b.n_qubits} qubits were passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return float(min(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2, 1.0))


def pair_fidelities(amplitudes: np.ndarray) -> np.ndarray:
    """ fidelities of the disjoint consecutive row pairs (0, 1), (2, 3), ... of a (2k, d) array """
    overlaps = np.sum(amplitudes[0::2].conj() * amplitudes[1::2], axis=1)
    return np.minimum(np.abs(overlaps) ** 2, 1.0)

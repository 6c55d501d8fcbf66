""" entanglement module - Scott multipartite entanglement of pure states and its ensemble statistics

For a pure n qubit state and 1 <= m <= n // 2

    Q_m = 2**m / (2**m - 1) * (1 - mean over |S| = m of Tr(rho_S**2))

where rho_S keeps the qubits of S and traces out the rest.  Q_1 is the Meyer-Wallach measure.  Orders
above n // 2 repeat the information of their complements and are rejected.

Reduced states are built by bit indexed accumulation: the amplitudes are reshaped so the qubits of S index
the rows and the environment indexes the columns of M, and rho_S = M M^dagger.  Memory stays O(4**m) per
state.  Subsets are enumerated in lexicographic order.

Ensemble statistics use the population standard deviation sqrt(<Q**2> - <Q>**2).  Reference values for
Haar random states (the CUE):

    <Q_m>_CUE = (2**n - 2**m) / (2**n + 1)
    sigma_CUE(Q_1)**2 = 6 (D - 4) / ((D + 3)(D + 2)(D + 1) n) + 18 D / ((D + 3)(D + 2)(D + 1)**2),  D = 2**n
"""

# Standard Library Imports
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from math import comb, sqrt
from typing import Iterable, List, Optional, Tuple

# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.circuit import CircuitSpec
from pqc_randomness.errors import ArgumentError
from pqc_randomness.parallel import map_chunks
from pqc_randomness.sampling import ParameterSampler, circuit_ensemble
from pqc_randomness.state import StateVector


@dataclass(frozen=True)
class SubsetPurity():
    subset: Tuple[int, ...]
    purity: float


@dataclass(frozen=True)
class EnsembleEntanglementStats():
    """ sample mean and population standard deviation of Q_m over an ensemble, with CUE references

    Fields
    ------
    m: int
    n_qubits: int
    n_samples: int
    mean: float
    std_dev: float
    cue_mean: float
    cue_std: Optional[float]
        - only known in closed form for m = 1
    """
    m: int
    n_qubits: int
    n_samples: int
    mean: float
    std_dev: float
    cue_mean: float
    cue_std: Optional[float] = None

    @property
    def std_error(self) -> float:
        return self.std_dev / sqrt(self.n_samples)

    @property
    def cue_gap(self) -> float:
        """ (<Q_m>_CUE - <Q_m>) / <Q_m>_CUE; zero when the ensemble matches Haar random entanglement """
        return (self.cue_mean - self.mean) / self.cue_mean


def validate_subset(n: int, subset: Iterable[int]) -> Tuple[int, ...]:
    """ sorted tuple of subset; ArgumentError for an empty subset, duplicates or indices outside [0, n) """
    qubits = tuple(int(q) for q in subset)
    if len(qubits) == 0:
        msg = "a subset needs at least one qubit."
        logger.error(msg)
        raise ArgumentError(msg)
    if len(set(qubits)) != len(qubits):
        msg = f"subset {qubits} repeats a qubit."
        logger.error(msg)
        raise ArgumentError(msg)
    if min(qubits) < 0 or max(qubits) >= n:
        msg = f"subset {qubits} has qubits outside [0, {n})."
        logger.error(msg)
        raise ArgumentError(msg)
    return tuple(sorted(qubits))


def check_order(n: int, m: int) -> None:
    if not isinstance(m, (int, np.integer)) or m < 1 or m > n // 2:
        msg = f"Scott order m must satisfy 1 <= m <= {n // 2} on {n} qubits.  Instead, {m} was passed."
        logger.error(msg)
        raise ArgumentError(msg)


def marginal_matrices(amplitudes: np.ndarray, n: int, subset: Tuple[int, ...]) -> np.ndarray:
    """ (batch, 2**m, 2**(n - m)) view of the amplitudes with the subset bits as row index """
    batch = amplitudes.shape[0]
    environment = tuple(q for q in range(n) if q not in subset)
    order = (0,) + tuple(q + 1 for q in subset) + tuple(q + 1 for q in environment)
    tensor = amplitudes.reshape((batch,) + (2,) * n).transpose(order)
    return tensor.reshape(batch, 1 << len(subset), 1 << len(environment))


def purities_batch(amplitudes: np.ndarray, n: int, subset: Tuple[int, ...]) -> np.ndarray:
    """ Tr(rho_S**2) for every row of a (batch, 2**n) array """
    matrices = marginal_matrices(amplitudes, n, subset)
    rho = matrices @ matrices.conj().transpose(0, 2, 1)
    return np.sum(np.abs(rho) ** 2, axis=(1, 2))


def reduced_purity(state: StateVector, subset: Iterable[int]) -> float:
    """ Tr(rho_S**2) of the reduced state on subset """
    qubits = validate_subset(state.n_qubits, subset)
    return float(purities_batch(state.amplitudes[None, :], state.n_qubits, qubits)[0])


def subset_purities(state: StateVector, m: int) -> List[SubsetPurity]:
    """ purities of every size m subset, lexicographic """
    if not 1 <= m <= state.n_qubits:
        msg = f"subset size must be in [1, {state.n_qubits}].  Instead, {m} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    amplitudes = state.amplitudes[None, :]
    return [SubsetPurity(subset, float(purities_batch(amplitudes, state.n_qubits, subset)[0]))
            for subset in combinations(range(state.n_qubits), m)]


def scott_q_batch(amplitudes: np.ndarray, n: int, m: int) -> np.ndarray:
    """ Q_m of every row of a (batch, 2**n) array; the order is not re checked here """
    total = np.zeros(amplitudes.shape[0], dtype=np.float64)
    for subset in combinations(range(n), m):
        total += purities_batch(amplitudes, n, subset)
    scale = (1 << m) / ((1 << m) - 1)
    return np.maximum(scale * (1.0 - total / comb(n, m)), 0.0)


def scott_q(state: StateVector, m: int) -> float:
    """ Scott measure Q_m of a pure state, in [0, 1]; ArgumentError unless 1 <= m <= n // 2 """
    check_order(state.n_qubits, m)
    return float(scott_q_batch(state.amplitudes[None, :], state.n_qubits, m)[0])


def cue_mean(n: int, m: int) -> float:
    """ <Q_m> over Haar random n qubit states """
    check_order(n, m)
    return ((1 << n) - (1 << m)) / ((1 << n) + 1)


def cue_std_q1(n: int) -> float:
    """ standard deviation of Q_1 over Haar random n qubit states """
    if not isinstance(n, (int, np.integer)) or n < 2:
        msg = f"the CUE deviation needs at least 2 qubits.  Instead, {n} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    d = 1 << n
    shared = (d + 3) * (d + 2) * (d + 1)
    variance = 6 * (d - 4) / (shared * n) + 18 * d / (shared * (d + 1))
    return sqrt(variance)


def _chunk_scott_q(ensemble, m: int, start: int, stop: int) -> np.ndarray:
    return scott_q_batch(ensemble.states(start, stop), ensemble.n_qubits, m)


def ensemble_q_values(ensemble, m: int, n_samples: int, workers: int = 1) -> np.ndarray:
    """ Q_m of samples 0 .. n_samples - 1 of any ensemble exposing n_qubits and states(start, stop) """
    check_order(ensemble.n_qubits, m)
    if n_samples < 2:
        msg = f"ensemble statistics need at least 2 samples.  Instead, {n_samples} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return np.concatenate(map_chunks(partial(_chunk_scott_q, ensemble, m), n_samples, workers))


def ensemble_entanglement(ensemble, m: int, n_samples: int, workers: int = 1) -> EnsembleEntanglementStats:
    """ mean and population standard deviation of Q_m over an ensemble """
    values = ensemble_q_values(ensemble, m, n_samples, workers)
    n = ensemble.n_qubits
    stats = EnsembleEntanglementStats(
        m=m,
        n_qubits=n,
        n_samples=n_samples,
        mean=float(np.mean(values)),
        std_dev=float(np.std(values)),
        cue_mean=cue_mean(n, m),
        cue_std=cue_std_q1(n) if m == 1 else None,
    )
    logger.debug(f"Q_{m} over {n_samples} samples: {stats.mean:.6f} +- {stats.std_dev:.6f} (CUE {stats.cue_mean:.6f})")
    return stats


def ensemble_stats(spec: CircuitSpec, m: int, n_samples: int, sampler: ParameterSampler,
                   workers: int = 1) -> EnsembleEntanglementStats:
    """ Q_m statistics of spec's output states over n_samples parameter draws of sampler

    Parameters
    ----------
    spec: CircuitSpec
    m: int
        - Scott order, 1 <= m <= n // 2
    n_samples: int
        - at least 2
    sampler: ParameterSampler
        - bound to spec's stream key unless it already carries one
    workers: int
        - processes; the result does not depend on it

    Raises
    ------
    ArgumentError
        - order out of range or fewer than two samples

    Returns
    -------
    EnsembleEntanglementStats
    """
    return ensemble_entanglement(circuit_ensemble(spec, sampler), m, n_samples, workers)

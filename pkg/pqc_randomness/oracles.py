""" oracles module - independent ground truth for the estimators

HaarSampler draws Haar random pure states by normalizing 2**(n + 1) independent standard Gaussians used as
real and imaginary parts; the result is distributed by the unitarily invariant measure, the same measure a
Haar random unitary induces on |0...0>.  Like ParameterSampler it gives every state index its own stream,
and it exposes n_qubits and states(start, stop), so it can replace a circuit ensemble anywhere.

brute_force_reduced_density builds rho_S the slow way, from the full outer product and an index summed
partial trace, as a check on entanglement.reduced_purity.

MODULE CLASSES
--------------
HaarSampler - Haar random states, one stream per index

MODULE FUNCTIONS
----------------
haar_state(sampler) -> StateVector
brute_force_reduced_density(state, subset) -> np.ndarray
haar_entanglement_stats(n, m, n_samples, seed) -> EnsembleEntanglementStats
haar_fidelity_moments(n, t, n_pairs, seed) -> Tuple[float, float]
"""

# Standard Library Imports
from string import ascii_letters
from typing import Iterable, Tuple

# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.entanglement import EnsembleEntanglementStats, ensemble_entanglement, validate_subset
from pqc_randomness.errors import ArgumentError, CapacityError
from pqc_randomness.expressibility import ensemble_fidelities
from pqc_randomness.sampling import spec_digest
from pqc_randomness.state import MAX_QUBITS, StateVector

BRUTE_FORCE_MAX_QUBITS = 8


class HaarSampler():
    """ Haar random pure states on n qubits

    INSTANCE VARIABLES
    ------------------
    n_qubits: int
    seed: int
    _cursor: int
        - index of the state next_state returns; samplers are per worker and never shared
    """

    def __init__(self, n_qubits: int, seed: int = 0):
        if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= MAX_QUBITS:
            msg = f"Haar states of 1 to {MAX_QUBITS} qubits are supported.  Instead, {n_qubits} was requested."
            logger.error(msg)
            raise CapacityError(msg)
        if not isinstance(seed, (int, np.integer)) or seed < 0:
            msg = f"sampler seeds must be non negative integers.  Instead, {seed!r} was passed."
            logger.error(msg)
            raise ArgumentError(msg)
        self.n_qubits = int(n_qubits)
        self.seed = int(seed)
        self._digest = spec_digest(f"HAAR:{self.n_qubits}")
        self._cursor = 0

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def _amplitudes(self, index: int) -> np.ndarray:
        rng = np.random.default_rng(np.random.SeedSequence([self.seed, self._digest, int(index)]))
        gaussians = rng.standard_normal(2 * self.dim)
        amplitudes = gaussians[:self.dim] + 1j * gaussians[self.dim:]
        return amplitudes / np.linalg.norm(amplitudes)

    def state_at(self, index: int) -> StateVector:
        return StateVector(self._amplitudes(index))

    def next_state(self) -> StateVector:
        state = self.state_at(self._cursor)
        self._cursor += 1
        return state

    def states(self, start: int, stop: int) -> np.ndarray:
        amplitudes = np.empty((stop - start, self.dim), dtype=np.complex128)
        for row, index in enumerate(range(start, stop)):
            amplitudes[row] = self._amplitudes(index)
        return amplitudes


def haar_state(sampler: HaarSampler) -> StateVector:
    """ the next Haar random state of sampler """
    return sampler.next_state()


def brute_force_reduced_density(state: StateVector, subset: Iterable[int]) -> np.ndarray:
    """ rho_S from |psi><psi| by summing the traced qubits' row and column indices together

    Raises
    ------
    CapacityError
        - more than 8 qubits
    ArgumentError
        - an invalid subset
    """
    n = state.n_qubits
    if n > BRUTE_FORCE_MAX_QUBITS:
        msg = f"the brute force oracle supports at most {BRUTE_FORCE_MAX_QUBITS} qubits.  Instead, {n} were passed."
        logger.error(msg)
        raise CapacityError(msg)
    kept = validate_subset(n, subset)

    rows = list(ascii_letters[:n])
    columns = list(ascii_letters[n:2 * n])
    for qubit in range(n):
        if qubit not in kept:
            columns[qubit] = rows[qubit]
    output = "".join(rows[q] for q in kept) + "".join(columns[q] for q in kept)

    density = np.outer(state.amplitudes, state.amplitudes.conj()).reshape((2,) * (2 * n))
    reduced = np.einsum(f"{''.join(rows)}{''.join(columns)}->{output}", density)
    size = 1 << len(kept)
    return reduced.reshape(size, size)


def haar_entanglement_stats(n: int, m: int, n_samples: int, seed: int = 0,
                            workers: int = 1) -> EnsembleEntanglementStats:
    """ Q_m statistics over n_samples Haar random states, to compare with cue_mean and cue_std_q1 """
    return ensemble_entanglement(HaarSampler(n, seed), m, n_samples, workers)


def haar_fidelity_moments(n: int, t: int, n_pairs: int, seed: int = 0, workers: int = 1) -> Tuple[float, float]:
    """ (sample mean of F**t, its standard error) over n_pairs independent Haar pairs """
    powers = ensemble_fidelities(HaarSampler(n, seed), 2 * n_pairs, workers) ** t
    return float(np.mean(powers)), float(np.std(powers, ddof=1) / np.sqrt(powers.size))

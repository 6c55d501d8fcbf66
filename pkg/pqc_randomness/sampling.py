""" sampling module - reproducible parameter streams and circuit state ensembles

Every parameter vector has its own random stream, seeded from (seed, spec digest, sample index) through
numpy's SeedSequence.  A sample therefore gets the same angles whether it is drawn alone, in a batch, or
on another worker.  The spec digest is the first 8 bytes of SHA-256 of the canonical spec string, so two
circuit families sharing a seed still draw independent angles.

MODULE CLASSES
--------------
ParameterSampler - uniform angles on [lo, hi), one stream per sample index
FixedParameterSampler - every angle equal to a constant; the degenerate sampler of the tests
CircuitEnsemble - output states of a circuit family under a sampler
"""

# Standard Library Imports
import hashlib
from dataclasses import dataclass, field, replace


# Third party imports
import numpy as np

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.circuit import CircuitSpec, GateSequence, compile_circuit, run_circuit_batch
from pqc_randomness.errors import ArgumentError

TWO_PI = 2.0 * np.pi


def spec_digest(key: str) -> int:
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "big")


@dataclass(frozen=True)
class ParameterSampler():
    """ uniform angles on [lo, hi) with one random stream per sample index

    Fields
    ------
    seed: int
        - non negative; the harness passes master_seed + repetition
    lo, hi: float
        - the sampling interval, [0, 2 pi) by default.  [-pi, pi) induces the same state ensemble.
    stream_key: str
        - mixed into every stream; the canonical spec string when built with for_spec
    """
    seed: int = 0
    lo: float = 0.0
    hi: float = TWO_PI
    stream_key: str = ""
    _digest: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            msg = f"sampler seeds must be non negative integers.  Instead, {self.seed!r} was passed."
            logger.error(msg)
            raise ArgumentError(msg)
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.hi <= self.lo:
            msg = f"sampling interval [{self.lo}, {self.hi}) must be finite and non empty."
            logger.error(msg)
            raise ArgumentError(msg)
        object.__setattr__(self, "_digest", spec_digest(self.stream_key))

    def for_spec(self, spec: CircuitSpec) -> "ParameterSampler":
        return replace(self, stream_key=str(spec))

    def stream(self, index: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([int(self.seed), self._digest, int(index)]))

    def draw(self, index: int, n_params: int) -> np.ndarray:
        return self.stream(index).uniform(self.lo, self.hi, size=n_params)

    def draw_batch(self, start: int, stop: int, n_params: int) -> np.ndarray:
        params = np.empty((stop - start, n_params), dtype=np.float64)
        for row, index in enumerate(range(start, stop)):
            params[row] = self.draw(index, n_params)
        return params


@dataclass(frozen=True)
class FixedParameterSampler(ParameterSampler):
    """ every angle equals value, for every sample """
    value: float = 0.0

    def draw(self, index: int, n_params: int) -> np.ndarray:
        return np.full(n_params, self.value, dtype=np.float64)


@dataclass(frozen=True)
class CircuitEnsemble():
    """ the output states |psi(theta_i)> of spec, theta_i drawn by sampler for sample index i

    Any object with n_qubits and states(start, stop) can stand in for it; oracles.HaarSampler does.
    """
    spec: CircuitSpec
    sampler: ParameterSampler

    @property
    def n_qubits(self) -> int:
        return self.spec.n_qubits

    @property
    def sequence(self) -> GateSequence:
        return compile_circuit(self.spec)

    def params(self, start: int, stop: int) -> np.ndarray:
        return self.sampler.draw_batch(start, stop, self.sequence.n_params)

    def states(self, start: int, stop: int) -> np.ndarray:
        """ (stop - start, 2**n) amplitudes of samples start .. stop - 1 """
        return run_circuit_batch(self.sequence, self.params(start, stop), self.spec.n_qubits)


def circuit_ensemble(spec: CircuitSpec, sampler: ParameterSampler) -> CircuitEnsemble:
    """ bind sampler to spec's stream key, unless the caller already chose one """
    if not sampler.stream_key:
        sampler = sampler.for_spec(spec)
    return CircuitEnsemble(spec, sampler)

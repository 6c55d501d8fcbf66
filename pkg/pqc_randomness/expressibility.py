""" expressibility module - fidelity ensembles against the Haar fidelity distribution

For Haar random pure states in dimension d the fidelity F = |<psi|phi>|**2 has density
(d - 1)(1 - F)**(d - 2), so the mass of a bin [lo, hi] is (1 - lo)**(d - 1) - (1 - hi)**(d - 1) and the
moments are E[F**t] = t! (d - 1)! / (t + d - 1)!.

Expressibility is the KL divergence, in nats, of the binned circuit fidelities from those exact bin masses.
Bin masses are kept in log form: for d = 256 the top bins are far below the smallest double, but their
logarithms are finite, so every bin with circuit mass contributes a finite term.

The t-design deviation E[F**t] - E_Haar[F**t] is the Hilbert-Schmidt distance of the ensemble's t-th
moment operator from the Haar one; it is zero for a t-design and can dip slightly below zero from
sampling noise.

Fidelities come from disjoint consecutive pairs of output states, so n_states states give n_states / 2
fidelities.
"""

# Standard Library Imports
from dataclasses import dataclass, field, replace
from functools import partial
from math import comb, sqrt
from typing import Optional, Tuple

# Third party imports
import numpy as np
import pandas as pd
from scipy.special import xlogy

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.circuit import CircuitSpec
from pqc_randomness.errors import ArgumentError, DataError
from pqc_randomness.parallel import map_chunks
from pqc_randomness.sampling import ParameterSampler, circuit_ensemble
from pqc_randomness.state import pair_fidelities

DEFAULT_BINS = 75
FIDELITY_TOLERANCE = 1e-9


def _check_dim(d: int) -> None:
    if not isinstance(d, (int, np.integer)) or d < 2:
        msg = f"the Hilbert space dimension must be at least 2.  Instead, {d} was passed."
        logger.error(msg)
        raise ArgumentError(msg)


def _check_bins(n_bins: int) -> None:
    if not isinstance(n_bins, (int, np.integer)) or n_bins < 2:
        msg = f"at least 2 histogram bins are needed.  Instead, {n_bins} was passed."
        logger.error(msg)
        raise ArgumentError(msg)


def haar_fidelity_moment(d: int, t: int) -> float:
    """ E_Haar[F**t] = t! (d - 1)! / (t + d - 1)! = 1 / C(t + d - 1, t) """
    _check_dim(d)
    if not isinstance(t, (int, np.integer)) or t < 1:
        msg = f"moment order t must be a positive integer.  Instead, {t} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return 1 / comb(int(t) + int(d) - 1, int(t))


def haar_log_bin_masses(d: int, n_bins: int) -> np.ndarray:
    """ natural log of the exact Haar fidelity mass of each uniform bin of [0, 1] """
    _check_dim(d)
    _check_bins(n_bins)
    edges = np.linspace(0.0, 1.0, n_bins + 1)
    lo, hi = edges[:-1], edges[1:]
    ratio = (1.0 - hi) / (1.0 - lo)
    return (d - 1) * np.log1p(-lo) + np.log1p(-np.power(ratio, d - 1))


def haar_bin_masses(d: int, n_bins: int) -> np.ndarray:
    return np.exp(haar_log_bin_masses(d, n_bins))


def _validated(fidelities) -> np.ndarray:
    values = np.asarray(fidelities, dtype=np.float64).ravel()
    if values.size == 0:
        msg = "no fidelities were passed."
        logger.error(msg)
        raise DataError(msg)
    bad = ~((values >= 0.0) & (values <= 1.0 + FIDELITY_TOLERANCE))
    if np.any(bad):
        msg = f"{int(np.sum(bad))} fidelities fall outside [0, 1], e.g. {values[bad][0]!r}."
        logger.error(msg)
        raise DataError(msg)
    return np.minimum(values, 1.0)


@dataclass(frozen=True)
class FidelityHistogram():
    """ binned circuit fidelities next to the exact Haar bin masses

    Fields
    ------
    n_bins: int
    dim: int
        - Hilbert space dimension 2**n
    edges: np.ndarray
        - n_bins + 1 uniform edges of [0, 1]
    counts: np.ndarray
        - fidelities per bin; F = 1 falls in the last bin
    empirical_mass, haar_mass, haar_log_mass: np.ndarray
        - both masses sum to 1; haar_mass may underflow to 0 in high dimension, haar_log_mass never does
    """
    n_bins: int
    dim: int
    edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    empirical_mass: np.ndarray = field(repr=False)
    haar_mass: np.ndarray = field(repr=False)
    haar_log_mass: np.ndarray = field(repr=False)

    @classmethod
    def from_fidelities(cls, fidelities, d: int, n_bins: int = DEFAULT_BINS) -> "FidelityHistogram":
        """ bin fidelities; DataError for values outside [0, 1 + 1e-9] """
        _check_dim(d)
        _check_bins(n_bins)
        values = _validated(fidelities)
        counts, edges = np.histogram(values, bins=n_bins, range=(0.0, 1.0))
        log_mass = haar_log_bin_masses(d, n_bins)
        return cls(
            n_bins=n_bins,
            dim=d,
            edges=edges,
            counts=counts,
            empirical_mass=counts / values.size,
            haar_mass=np.exp(log_mass),
            haar_log_mass=log_mass,
        )

    @property
    def n_fidelities(self) -> int:
        return int(np.sum(self.counts))

    def kl_divergence(self) -> float:
        """ sum over bins with p > 0 of p ln(p / q), in nats """
        p = self.empirical_mass
        divergence = float(np.sum(xlogy(p, p)) - np.sum(p * self.haar_log_mass))
        return max(divergence, 0.0)

    def to_frame(self) -> pd.DataFrame:
        """ one row per bin, for plotting the two distributions side by side """
        return pd.DataFrame({
            "bin_lo": self.edges[:-1],
            "bin_hi": self.edges[1:],
            "bin_center": 0.5 * (self.edges[:-1] + self.edges[1:]),
            "count": self.counts,
            "empirical_mass": self.empirical_mass,
            "haar_mass": self.haar_mass,
        })


@dataclass(frozen=True)
class ExpressibilityResult():
    spec: CircuitSpec
    kl_nats: float
    n_states: int
    n_fidelities: int
    seed: int
    histogram: Optional[FidelityHistogram] = field(default=None, repr=False, compare=False)


def kl_expressibility(fidelities, d: int, n_bins: int = DEFAULT_BINS) -> float:
    """ KL divergence (nats) of the binned fidelities from the Haar fidelity distribution in dimension d

    Raises
    ------
    DataError
        - a fidelity outside [0, 1 + 1e-9]
    ArgumentError
        - d < 2 or n_bins < 2
    """
    return FidelityHistogram.from_fidelities(fidelities, d, n_bins).kl_divergence()


def _chunk_fidelities(ensemble, start: int, stop: int) -> np.ndarray:
    return pair_fidelities(ensemble.states(start, stop))


def ensemble_fidelities(ensemble, n_states: int, workers: int = 1) -> np.ndarray:
    """ n_states / 2 fidelities of the pairs (0, 1), (2, 3), ... of any state ensemble """
    if not isinstance(n_states, (int, np.integer)) or n_states < 2 or n_states % 2:
        msg = f"n_states must be an even integer of at least 2.  Instead, {n_states} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return np.concatenate(map_chunks(partial(_chunk_fidelities, ensemble), n_states, workers))


def sample_fidelities(spec: CircuitSpec, n_states: int, sampler: ParameterSampler, workers: int = 1) -> np.ndarray:
    """ Draw n_states parameter vectors, run spec on each and return the n_states / 2 pair fidelities

    The same sampler seed gives bitwise identical fidelities for any worker count.
    """
    return ensemble_fidelities(circuit_ensemble(spec, sampler), n_states, workers)


def expressibility(spec: CircuitSpec, n_states: int, sampler: ParameterSampler, n_bins: int = DEFAULT_BINS,
                   workers: int = 1) -> ExpressibilityResult:
    fidelities = sample_fidelities(spec, n_states, sampler, workers)
    histogram = FidelityHistogram.from_fidelities(fidelities, spec.dim, n_bins)
    kl = histogram.kl_divergence()
    logger.debug(f"expressibility of {spec}: {kl:.6g} nats over {fidelities.size} fidelities")
    return ExpressibilityResult(spec, kl, n_states, int(fidelities.size), int(sampler.seed), histogram)


def tdesign_from_fidelities(fidelities, d: int, t: int) -> Tuple[float, float]:
    """ (E[F**t] - E_Haar[F**t], standard error of the sample mean of F**t) """
    powers = _validated(fidelities) ** t
    deviation = float(np.mean(powers)) - haar_fidelity_moment(d, t)
    std_error = float(np.std(powers, ddof=1)) / sqrt(powers.size) if powers.size > 1 else float("nan")
    return deviation, std_error


def ensemble_tdesign_deviation(ensemble, t: int, n_states: int, workers: int = 1) -> float:
    fidelities = ensemble_fidelities(ensemble, n_states, workers)
    return tdesign_from_fidelities(fidelities, 1 << ensemble.n_qubits, t)[0]


def tdesign_deviation(spec: CircuitSpec, t: int, n_states: int, sampler: ParameterSampler, workers: int = 1) -> float:
    """ E[F**t] over spec's fidelity ensemble minus the Haar moment; near 0 for a t-design """
    return ensemble_tdesign_deviation(circuit_ensemble(spec, sampler), t, n_states, workers)


@dataclass(frozen=True)
class TDesignSummary():
    """ mean and sample standard deviation of independent t-design deviation estimates """
    spec: CircuitSpec
    t: int
    values: Tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def std(self) -> float:
        return float(np.std(self.values, ddof=1)) if len(self.values) > 1 else 0.0


def tdesign_repetitions(spec: CircuitSpec, t: int, n_states: int, sampler: ParameterSampler,
                        repetitions: int = 20, workers: int = 1) -> TDesignSummary:
    """ repeat tdesign_deviation with seeds sampler.seed, sampler.seed + 1, ... """
    values = []
    for repetition in range(repetitions):
        repeated = replace(sampler, seed=sampler.seed + repetition)
        values.append(tdesign_deviation(spec, t, n_states, repeated, workers))
    summary = TDesignSummary(spec, t, tuple(values))
    logger.info(f"t={t} design deviation of {spec}: {summary.mean:.3e} +- {summary.std:.1e} over {repetitions} repetitions")
    return summary

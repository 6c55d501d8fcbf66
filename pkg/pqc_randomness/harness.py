""" harness module - reproducible sweeps over circuit families and result file emission

An ExperimentConfig names circuit families (canonical spec strings), quantities and sampling settings.
run_sweep turns it into one task per (spec, quantity, repetition) and produces one ResultRow per task.
Tasks are self contained: the row's seed is master_seed + repetition, and every parameter vector is drawn
from the stream (seed, spec digest, sample index), so a row can be recomputed alone and results do not
depend on the worker count.

A spec that cannot be built (e.g. a Ring on 2 qubits) or lies outside n in [2, 12], l in [1, 64] becomes a
SweepFailure and the sweep continues.
Spec strings of the form "HAAR:n" run the Haar oracle in place of a circuit.

Result files are CSV or JSON lines with the columns spec, quantity, value, dispersion, n_samples, seed,
wall_ms.  Rows already present in the output file (same spec, quantity and seed) are skipped on re-runs.

MODULE CLASSES
--------------
QuantityKind, Quantity - what a row measures, e.g. "expressibility", "entanglement:1", "tdesign:2"
ExperimentConfig - validated sweep description
ResultRow, SweepFailure, SweepResult - sweep outputs

MODULE FUNCTIONS
----------------
experiment_namespace() -> NameSpace
load_experiment_config(config, overrides, haar) -> Tuple[ExperimentConfig, Dict]
run_sweep(config, skip_keys) -> SweepResult
emit_results(rows, fmt, path, append) -> str
load_results(path, fmt) -> List[ResultRow]
summarize_repetitions(rows) -> pd.DataFrame
"""

# Standard Library Imports
import json
import os
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

# Third party imports
import numpy as np
import pandas as pd

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.circuit import CircuitSpec, Topology
from pqc_randomness.config_object import Config
from pqc_randomness.config_reader import Interval, IntRange
from pqc_randomness.entanglement import ensemble_entanglement
from pqc_randomness.errors import ArgumentError, ConfigError, PQCError, ResultsIOError
from pqc_randomness.expressibility import DEFAULT_BINS, ensemble_fidelities, kl_expressibility, tdesign_from_fidelities
from pqc_randomness.namespace import NameSpace
from pqc_randomness.oracles import HaarSampler
from pqc_randomness.parallel import map_ordered, resolve_workers
from pqc_randomness.sampling import TWO_PI, CircuitEnsemble, ParameterSampler

COLUMNS = ["spec", "quantity", "value", "dispersion", "n_samples", "seed", "wall_ms"]
FORMATS = ("csv", "jsonl")

QUBIT_LIMITS = (2, 12)
LAYER_LIMITS = (1, 64)
TDESIGN_REPETITIONS = 20
HAAR_PREFIX = "HAAR:"


class QuantityKind(str, Enum):
    EXPRESSIBILITY = "expressibility"
    ENTANGLEMENT = "entanglement"
    CUE_GAP = "cue_gap"
    TDESIGN = "tdesign"


@dataclass(frozen=True)
class Quantity():
    """ what a row measures; order is the Scott m for entanglement and cue_gap, t for tdesign """
    kind: QuantityKind
    order: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", QuantityKind(self.kind))
        needs_order = self.kind is not QuantityKind.EXPRESSIBILITY
        if needs_order != (self.order is not None) or (needs_order and self.order < 1):
            msg = f"{self.kind.value} takes {'a positive order' if needs_order else 'no order'}.  Instead, {self.order!r} was passed."
            logger.error(msg)
            raise ArgumentError(msg)

    @classmethod
    def parse(cls, text: str) -> "Quantity":
        """ 'expressibility', 'entanglement:1', 'cue_gap:2', 'tdesign:2' """
        name, _, order = str(text).strip().lower().partition(":")
        try:
            kind = QuantityKind(name)
            order = int(order) if order else None
        except ValueError:
            msg = f"unknown quantity {text!r}; expected expressibility, entanglement:m, cue_gap:m or tdesign:t."
            logger.error(msg)
            raise ArgumentError(msg) from None
        return cls(kind, order)

    def __str__(self) -> str:
        return self.kind.value if self.order is None else f"{self.kind.value}:{self.order}"


def expand_quantities(name: str, order: int, t: int) -> List[Quantity]:
    """ a quantity name from the command line or experiment file into concrete quantities

    'all' is expressibility, entanglement of the given order and the t-design deviation.  A bare
    'entanglement', 'cue_gap' or 'tdesign' takes its order from order or t.
    """
    token = name.strip().lower()
    if token == "all":
        return [Quantity(QuantityKind.EXPRESSIBILITY), Quantity(QuantityKind.ENTANGLEMENT, order),
                Quantity(QuantityKind.TDESIGN, t)]
    if token in (QuantityKind.ENTANGLEMENT.value, QuantityKind.CUE_GAP.value):
        return [Quantity(QuantityKind(token), order)]
    if token == QuantityKind.TDESIGN.value:
        return [Quantity(QuantityKind.TDESIGN, t)]
    return [Quantity.parse(token)]


@dataclass(frozen=True)
class ExperimentConfig():
    """ a validated sweep

    Fields
    ------
    specs: Tuple[str, ...]
        - canonical spec strings ("A1:RIN:6:3") or "HAAR:n"; kept as text so an unbuildable spec fails
          its own rows instead of the whole sweep
    quantities: Tuple[Quantity, ...]
    n_states: int
        - states per estimate; even
    n_bins: int
    repetitions: int
        - 0 means 20 for tdesign and 1 otherwise
    master_seed: int
    param_interval: Tuple[float, float]
        - [lo, hi) radians
    workers: int
    """
    specs: Tuple[str, ...]
    quantities: Tuple[Quantity, ...]
    n_states: int = 10_000
    n_bins: int = DEFAULT_BINS
    repetitions: int = 0
    master_seed: int = 0
    param_interval: Tuple[float, float] = (0.0, TWO_PI)
    workers: int = 1

    def __post_init__(self):
        problems = []
        if len(self.specs) == 0:
            problems.append("specs: the sweep is empty")
        if len(self.quantities) == 0:
            problems.append("quantities: nothing to measure")
        if self.n_states < 2 or self.n_states % 2:
            problems.append(f"n_states: must be even and at least 2, got {self.n_states}")
        if self.n_bins < 2:
            problems.append(f"n_bins: must be at least 2, got {self.n_bins}")
        if self.repetitions < 0:
            problems.append(f"repetitions: must be non negative, got {self.repetitions}")
        if self.master_seed < 0:
            problems.append(f"master_seed: must be non negative, got {self.master_seed}")
        lo, hi = self.param_interval
        if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
            problems.append(f"param_interval: [{lo}, {hi}) is empty or not finite")
        if self.workers < 1:
            problems.append(f"workers: must be positive, got {self.workers}")
        if problems:
            msg = "; ".join(problems)
            logger.error(f"invalid experiment: {msg}")
            raise ConfigError(msg, "experiment")

    def repetitions_for(self, quantity: Quantity) -> int:
        if self.repetitions:
            return self.repetitions
        return TDESIGN_REPETITIONS if quantity.kind is QuantityKind.TDESIGN else 1


@dataclass(frozen=True)
class ResultRow():
    """ one self describing result: re-running spec / quantity with seed and n_samples reproduces value """
    spec: str
    quantity: str
    value: float
    dispersion: Optional[float]
    n_samples: int
    seed: int
    wall_ms: float

    @property
    def key(self) -> Tuple[str, str, int]:
        return (self.spec, self.quantity, self.seed)

    def to_record(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class SweepFailure():
    spec: str
    quantity: str
    seed: int
    error: str


@dataclass
class SweepResult():
    rows: List[ResultRow] = field(default_factory=list)
    failures: List[SweepFailure] = field(default_factory=list)
    skipped: int = 0

    @property
    def exit_code(self) -> int:
        return 2 if self.failures else 0


@dataclass(frozen=True)
class SweepTask():
    spec: str
    quantity: Quantity
    seed: int
    n_states: int
    n_bins: int
    lo: float
    hi: float


# ----------------------------------------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------------------------------------

def experiment_namespace() -> NameSpace:
    """ the fields of the [profile] experiment.* keys """
    namespace = NameSpace("experiment")
    namespace.add_entry("ansatz", list, ["1"])
    namespace.add_entry("topology", list, [topology.value.lower() for topology in Topology])
    namespace.add_entry("specs", list, [])
    namespace.add_entry("qubits", IntRange, IntRange(4, 4))
    namespace.add_entry("layers", IntRange, IntRange(1, 5))
    namespace.add_entry("quantity", str, QuantityKind.EXPRESSIBILITY.value)
    namespace.add_entry("order", int, 1)
    namespace.add_entry("t", int, 2)
    namespace.add_entry("n_states", int, 10_000)
    namespace.add_entry("n_bins", int, DEFAULT_BINS)
    namespace.add_entry("repetitions", int, 0)
    namespace.add_entry("seed", int, 0)
    namespace.add_entry("interval", Interval, Interval(0.0, TWO_PI))
    namespace.add_entry("workers", str, "1")
    namespace.add_entry("out", str, "")
    namespace.add_entry("format", str, "")
    return namespace


def sweep_specs(ansatze: Iterable[str], topologies: Iterable[str], qubits: IntRange, layers: IntRange) -> List[str]:
    """ canonical spec strings of the product ansatz x topology x n x l, in that nesting order

    Raises
    ------
    ConfigError
        - ranges outside n in [2, 12], l in [1, 64], or unknown ansatz / topology names
    """
    if qubits.first < QUBIT_LIMITS[0] or qubits.last > QUBIT_LIMITS[1]:
        msg = f"qubit range {qubits} must lie within {QUBIT_LIMITS[0]}..{QUBIT_LIMITS[1]}"
        logger.error(msg)
        raise ConfigError(msg, "experiment.qubits")
    if layers.first < LAYER_LIMITS[0] or layers.last > LAYER_LIMITS[1]:
        msg = f"layer range {layers} must lie within {LAYER_LIMITS[0]}..{LAYER_LIMITS[1]}"
        logger.error(msg)
        raise ConfigError(msg, "experiment.layers")
    try:
        ansatz_tokens = [CircuitSpec.parse(f"{a}:NC:2:1").ansatz.value for a in ansatze]
        topology_tokens = [Topology.parse(topology).value for topology in topologies]
    except ArgumentError as e:
        raise ConfigError(str(e), "experiment.ansatz/topology") from e
    return [f"{a}:{topology}:{n}:{l}" for a, topology, n, l in product(ansatz_tokens, topology_tokens, qubits, layers)]


def load_experiment_config(config: Config, overrides: Optional[Dict[str, Any]] = None,
                           haar: bool = False) -> Tuple[ExperimentConfig, Dict[str, Any]]:
    """ Read the experiment namespace and apply command line overrides field by field

    Parameters
    ----------
    config: Config
        - the experiment file and profile
    overrides: Dict[str, Any]
        - field name to value; None values leave the file value in place
    haar: bool
        - sweep HAAR:n for n in the qubit range instead of circuit families (the haar-ref command)

    Raises
    ------
    ConfigError
        - unparseable or invalid fields

    Returns
    -------
    Tuple[ExperimentConfig, Dict[str, Any]]
        - the sweep, and the merged field values (out and format are needed by the caller)
    """
    if "experiment" not in config:
        config.add_namespace(experiment_namespace())
    fields = config["experiment"].as_dict()
    for name, value in (overrides or {}).items():
        if value is not None:
            fields[name] = value

    if haar:
        specs = [f"{HAAR_PREFIX}{n}" for n in fields["qubits"]]
    elif fields["specs"]:
        specs = list(fields["specs"])
    else:
        specs = sweep_specs(fields["ansatz"], fields["topology"], fields["qubits"], fields["layers"])
    try:
        quantities = expand_quantities(fields["quantity"], fields["order"], fields["t"])
        workers = resolve_workers(fields["workers"])
    except ArgumentError as e:
        raise ConfigError(str(e), "experiment") from e
    interval = fields["interval"]

    experiment = ExperimentConfig(
        specs=tuple(dict.fromkeys(specs)),
        quantities=tuple(quantities),
        n_states=fields["n_states"],
        n_bins=fields["n_bins"],
        repetitions=fields["repetitions"],
        master_seed=fields["seed"],
        param_interval=(interval.lo, interval.hi),
        workers=workers,
    )
    logger.info(f"experiment: {len(experiment.specs)} specs x {', '.join(str(q) for q in experiment.quantities)}, "
                f"{experiment.n_states} states, seed {experiment.master_seed}, {experiment.workers} workers")
    return experiment, fields


# ----------------------------------------------------------------------------------------------------
# execution
# ----------------------------------------------------------------------------------------------------

def plan_tasks(config: ExperimentConfig) -> List[SweepTask]:
    lo, hi = config.param_interval
    return [SweepTask(spec, quantity, config.master_seed + repetition, config.n_states, config.n_bins, lo, hi)
            for spec in config.specs
            for quantity in config.quantities
            for repetition in range(config.repetitions_for(quantity))]


def _check_limits(text: str, n_qubits: int, n_layers: int = LAYER_LIMITS[0]) -> None:
    """ explicit specs get the same n in [2, 12], l in [1, 64] limits as the range product """
    if not QUBIT_LIMITS[0] <= n_qubits <= QUBIT_LIMITS[1]:
        msg = f"{text}: qubit count {n_qubits} must lie within {QUBIT_LIMITS[0]}..{QUBIT_LIMITS[1]}."
        logger.error(msg)
        raise ArgumentError(msg)
    if not LAYER_LIMITS[0] <= n_layers <= LAYER_LIMITS[1]:
        msg = f"{text}: layer count {n_layers} must lie within {LAYER_LIMITS[0]}..{LAYER_LIMITS[1]}."
        logger.error(msg)
        raise ArgumentError(msg)


def _ensemble(task: SweepTask):
    if task.spec.upper().startswith(HAAR_PREFIX):
        try:
            n = int(task.spec[len(HAAR_PREFIX):])
        except ValueError:
            msg = f"Haar spec {task.spec!r} must look like HAAR:n."
            logger.error(msg)
            raise ArgumentError(msg) from None
        _check_limits(task.spec, n)
        return HaarSampler(n, task.seed)
    spec = CircuitSpec.parse(task.spec)
    _check_limits(task.spec, spec.n_qubits, spec.n_layers)
    return CircuitEnsemble(spec, ParameterSampler(task.seed, task.lo, task.hi, str(spec)))


def run_task(task: SweepTask) -> ResultRow:
    """ compute one row; raises PQCError subclasses for specs or orders that cannot be evaluated """
    started = time.perf_counter()
    ensemble = _ensemble(task)
    d = 1 << ensemble.n_qubits
    kind = task.quantity.kind

    if kind is QuantityKind.EXPRESSIBILITY:
        value = kl_expressibility(ensemble_fidelities(ensemble, task.n_states), d, task.n_bins)
        dispersion = None
    elif kind is QuantityKind.TDESIGN:
        value, dispersion = tdesign_from_fidelities(ensemble_fidelities(ensemble, task.n_states), d, task.quantity.order)
    else:
        stats = ensemble_entanglement(ensemble, task.quantity.order, task.n_states)
        if kind is QuantityKind.ENTANGLEMENT:
            value, dispersion = stats.mean, stats.std_dev
        else:
            value, dispersion = stats.cue_gap, stats.std_dev / stats.cue_mean

    wall_ms = 1000.0 * (time.perf_counter() - started)
    return ResultRow(task.spec, str(task.quantity), float(value), dispersion, task.n_states, task.seed, wall_ms)


def _run_task_reporting(task: SweepTask) -> Union[ResultRow, SweepFailure]:
    try:
        row = run_task(task)
    except PQCError as e:
        return SweepFailure(task.spec, str(task.quantity), task.seed, str(e))
    return row


def run_sweep(config: ExperimentConfig, skip_keys: FrozenSet[Tuple[str, str, int]] = frozenset()) -> SweepResult:
    """ Run every (spec, quantity, repetition) task of config

    Parameters
    ----------
    config: ExperimentConfig
    skip_keys: FrozenSet[Tuple[str, str, int]]
        - (spec, quantity, seed) keys already computed, e.g. read from an existing output file

    Returns
    -------
    SweepResult
        - rows in task order, failures for tasks whose spec or order is invalid, and the skipped count
    """
    planned = plan_tasks(config)
    tasks = [task for task in planned if (task.spec, str(task.quantity), task.seed) not in skip_keys]
    result = SweepResult(skipped=len(planned) - len(tasks))
    if result.skipped:
        logger.info(f"skipping {result.skipped} rows already present in the output")

    # row lines are logged in this process; spawned workers start at the default logger level
    for outcome in map_ordered(_run_task_reporting, [(task,) for task in tasks], config.workers):
        if isinstance(outcome, SweepFailure):
            logger.error(f"{outcome.spec} {outcome.quantity} seed={outcome.seed} failed: {outcome.error}")
            result.failures.append(outcome)
        else:
            logger.info(f"{outcome.spec} {outcome.quantity} seed={outcome.seed}: {outcome.value:.6g} "
                        f"({outcome.wall_ms:.0f} ms)")
            result.rows.append(outcome)
    return result


# ----------------------------------------------------------------------------------------------------
# result files
# ----------------------------------------------------------------------------------------------------

def _format_for(path: str, fmt: Optional[str]) -> str:
    fmt = (fmt or ("jsonl" if path.endswith((".jsonl", ".json")) else "csv")).lower()
    if fmt not in FORMATS:
        msg = f"result format must be one of {FORMATS}.  Instead, {fmt!r} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return fmt


def rows_to_frame(rows: Iterable[ResultRow]) -> pd.DataFrame:
    return pd.DataFrame([row.to_record() for row in rows], columns=COLUMNS)


def write_csv(rows: Iterable[ResultRow], handle, header: bool = True) -> None:
    rows_to_frame(rows).to_csv(handle, index=False, header=header, float_format="%.17g")


def emit_results(rows: List[ResultRow], fmt: Optional[str], path: str, append: bool = False) -> str:
    """ Write rows as CSV (header spec,quantity,value,dispersion,n_samples,seed,wall_ms) or JSON lines

    Floats are written with 17 significant digits in CSV and as shortest round trip reprs in JSON, so
    parsing the file reproduces every value bitwise.  With append, rows are added after existing ones and
    the CSV header is only written to a new file.

    Raises
    ------
    ResultsIOError
        - the file cannot be written
    """
    fmt = _format_for(path, fmt)
    exists = os.path.exists(path) and os.path.getsize(path) > 0
    mode = "a" if append and exists else "w"
    try:
        with open(path, mode, encoding="utf-8", newline="") as handle:
            if fmt == "csv":
                write_csv(rows, handle, header=(mode == "w"))
            else:
                for row in rows:
                    handle.write(json.dumps(row.to_record()) + "\n")
    except OSError as e:
        logger.error(f"could not write results to {path}: {e}")
        raise ResultsIOError(str(e), path) from e
    logger.info(f"wrote {len(rows)} rows to {path}")
    return path


def _row_from_record(record: Dict[str, Any]) -> ResultRow:
    dispersion = record.get("dispersion")
    if dispersion is not None and isinstance(dispersion, float) and np.isnan(dispersion):
        dispersion = None
    return ResultRow(
        spec=str(record["spec"]),
        quantity=str(record["quantity"]),
        value=float(record["value"]),
        dispersion=None if dispersion is None else float(dispersion),
        n_samples=int(record["n_samples"]),
        seed=int(record["seed"]),
        wall_ms=float(record["wall_ms"]),
    )


def load_results(path: str, fmt: Optional[str] = None) -> List[ResultRow]:
    """ parse a file written by emit_results; ResultsIOError when it cannot be read """
    fmt = _format_for(path, fmt)
    try:
        if fmt == "csv":
            frame = pd.read_csv(path, float_precision="round_trip", dtype={"spec": str, "quantity": str})
            records = frame.to_dict(orient="records")
        else:
            with open(path, encoding="utf-8") as handle:
                records = [json.loads(line) for line in handle if line.strip()]
    except (OSError, ValueError, KeyError, pd.errors.ParserError) as e:
        logger.error(f"could not read results from {path}: {e}")
        raise ResultsIOError(str(e), path) from e
    return [_row_from_record(record) for record in records]


def existing_keys(path: str, fmt: Optional[str] = None) -> FrozenSet[Tuple[str, str, int]]:
    """ keys of the rows already in path; empty when the file does not exist yet """
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return frozenset()
    return frozenset(row.key for row in load_results(path, fmt))


def summarize_repetitions(rows: Iterable[ResultRow]) -> pd.DataFrame:
    """ mean, sample standard deviation and count of value per (spec, quantity) """
    frame = rows_to_frame(rows)
    if frame.empty:
        return pd.DataFrame(columns=["spec", "quantity", "mean", "std", "repetitions"])
    summary = frame.groupby(["spec", "quantity"], sort=False)["value"].agg(["mean", "std", "count"]).reset_index()
    return summary.rename(columns={"count": "repetitions"})

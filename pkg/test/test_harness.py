# Standard Library Imports
import json
import logging
import os

# Third party imports
import numpy as np
import pytest

# Application level imports
from pqc_randomness.config_object import Config
from pqc_randomness.config_reader import IntRange
from pqc_randomness.environment import Environment
from pqc_randomness.errors import ArgumentError, ConfigError, ResultsIOError
from pqc_randomness.harness import (COLUMNS, ExperimentConfig, Quantity, QuantityKind, ResultRow, emit_results,
                                    existing_keys, expand_quantities, load_experiment_config, load_results,
                                    run_sweep, summarize_repetitions, sweep_specs)

RESOURCES = "test/resources/experiment_config.ini"


@pytest.fixture(autouse=True)
def reset_env():
    clear_env()
    yield
    clear_env()

def clear_env():
    for key in (Environment._log_level_key, Environment._profile_key, Environment._config_location_key):
        if key in os.environ:
            del os.environ[key]

def profile_config(profile: str) -> Config:
    return Config(Environment(profile=profile, config_location=RESOURCES))

def sample_rows():
    return [
        ResultRow("A1:LIN:4:1", "expressibility", 0.1 + 0.2, None, 10000, 0, 12.5),
        ResultRow("A1:LIN:4:1", "entanglement:1", 1 / 3, np.pi / 10, 10000, 0, 3.25),
        ResultRow("HAAR:4", "tdesign:2", -2.220446049250313e-16, 1e-300, 10000, 19, 0.0),
    ]

def test_quantity_parse():
    assert Quantity.parse("expressibility") == Quantity(QuantityKind.EXPRESSIBILITY)
    assert Quantity.parse("Entanglement:2") == Quantity(QuantityKind.ENTANGLEMENT, 2)
    assert str(Quantity.parse("tdesign:3")) == "tdesign:3"
    assert str(Quantity(QuantityKind.CUE_GAP, 1)) == "cue_gap:1"

    with pytest.raises(ArgumentError):
        Quantity.parse("entanglement")
    with pytest.raises(ArgumentError):
        Quantity.parse("expressibility:2")
    with pytest.raises(ArgumentError) as e:
        Quantity.parse("magic:1")
    assert "unknown quantity" in str(e)

def test_expand_quantities():
    assert [str(q) for q in expand_quantities("all", 2, 3)] == ["expressibility", "entanglement:2", "tdesign:3"]
    assert [str(q) for q in expand_quantities("cue_gap", 1, 2)] == ["cue_gap:1"]
    assert [str(q) for q in expand_quantities("tdesign", 1, 4)] == ["tdesign:4"]
    assert [str(q) for q in expand_quantities("entanglement:3", 1, 2)] == ["entanglement:3"]

def test_experiment_config_validation():
    with pytest.raises(ConfigError) as e:
        ExperimentConfig(("A1:LIN:4:1",), (Quantity(QuantityKind.EXPRESSIBILITY),), n_states=101)
    assert "n_states" in str(e)

    with pytest.raises(ConfigError) as e:
        ExperimentConfig((), (), param_interval=(1.0, 1.0), workers=0)
    for field in ("specs", "quantities", "param_interval", "workers"):
        assert field in str(e)

def test_repetitions():
    quantities = (Quantity(QuantityKind.EXPRESSIBILITY), Quantity(QuantityKind.TDESIGN, 2))
    automatic = ExperimentConfig(("A1:LIN:4:1",), quantities)
    fixed = ExperimentConfig(("A1:LIN:4:1",), quantities, repetitions=5)

    assert [automatic.repetitions_for(q) for q in quantities] == [1, 20]
    assert [fixed.repetitions_for(q) for q in quantities] == [5, 5]

def test_sweep_specs():
    specs = sweep_specs(["1", "A2"], ["lin", "RIN"], IntRange(3, 4), IntRange(1, 2))

    assert len(specs) == 16
    assert specs[:3] == ["A1:LIN:3:1", "A1:LIN:3:2", "A1:LIN:4:1"]
    assert specs[-1] == "A2:RIN:4:2"

    with pytest.raises(ConfigError) as e:
        sweep_specs(["1"], ["lin"], IntRange(2, 13), IntRange(1, 2))
    assert "within 2..12" in str(e)
    with pytest.raises(ConfigError):
        sweep_specs(["1"], ["lin"], IntRange(2, 4), IntRange(1, 65))
    with pytest.raises(ConfigError):
        sweep_specs(["1"], ["mesh"], IntRange(2, 4), IntRange(1, 2))

def test_load_experiment_config_profile():
    experiment, fields = load_experiment_config(profile_config("smoke"))

    assert len(experiment.specs) == 16
    assert experiment.quantities == (Quantity(QuantityKind.EXPRESSIBILITY),)
    assert experiment.n_states == 100
    assert experiment.master_seed == 7
    assert experiment.param_interval == (-np.pi, np.pi)
    assert fields["out"] == ""

def test_load_experiment_config_specs_and_overrides():
    experiment, _ = load_experiment_config(profile_config("families"), {"order": 2, "seed": None, "n_states": 40})

    assert experiment.specs == ("A1:LIN:3:1", "A2:ATA:4:2")
    assert experiment.quantities == (Quantity(QuantityKind.ENTANGLEMENT, 2),)
    assert experiment.n_states == 40
    assert experiment.master_seed == 0

def test_load_experiment_config_haar():
    experiment, _ = load_experiment_config(profile_config("smoke"), {"quantity": "all"}, haar=True)

    assert experiment.specs == ("HAAR:3", "HAAR:4")
    assert [str(q) for q in experiment.quantities] == ["expressibility", "entanglement:1", "tdesign:2"]

def test_load_experiment_config_broken():
    with pytest.raises(ConfigError) as e:
        load_experiment_config(profile_config("broken"))

    assert "experiment.qubits" in str(e)

def test_run_sweep_rows():
    quantities = (Quantity(QuantityKind.EXPRESSIBILITY), Quantity(QuantityKind.ENTANGLEMENT, 1),
                  Quantity(QuantityKind.CUE_GAP, 1), Quantity(QuantityKind.TDESIGN, 2))
    config = ExperimentConfig(("A1:LIN:3:1", "HAAR:3"), quantities, n_states=60, repetitions=2, master_seed=4)
    result = run_sweep(config)

    assert result.exit_code == 0
    assert len(result.rows) == 2 * 4 * 2
    assert [row.seed for row in result.rows[:4]] == [4, 5, 4, 5]
    by_key = {(row.spec, row.quantity, row.seed): row for row in result.rows}

    expressive = by_key[("A1:LIN:3:1", "expressibility", 4)]
    assert expressive.dispersion is None
    assert expressive.value >= 0.0
    assert expressive.n_samples == 60

    entangled = by_key[("HAAR:3", "entanglement:1", 5)]
    gap = by_key[("HAAR:3", "cue_gap:1", 5)]
    cue = 6 / 9
    assert gap.value == pytest.approx((cue - entangled.value) / cue)
    assert gap.dispersion == pytest.approx(entangled.dispersion / cue)

def test_run_sweep_reports_invalid_rows():
    specs = tuple(sweep_specs(["1"], ["rin"], IntRange(2, 3), IntRange(1, 1))) + ("A1:LIN:4:1",)
    config = ExperimentConfig(specs, (Quantity(QuantityKind.ENTANGLEMENT, 3),), n_states=20)
    result = run_sweep(config)

    assert [failure.spec for failure in result.failures] == ["A1:RIN:2:1", "A1:RIN:3:1", "A1:LIN:4:1"]
    assert result.rows == []
    assert result.exit_code == 2

    config = ExperimentConfig(specs, (Quantity(QuantityKind.ENTANGLEMENT, 1),), n_states=20)
    result = run_sweep(config)
    assert [row.spec for row in result.rows] == ["A1:RIN:3:1", "A1:LIN:4:1"]
    assert "at least 3 qubits" in result.failures[0].error

def test_run_sweep_does_not_depend_on_workers():
    quantities = (Quantity(QuantityKind.EXPRESSIBILITY), Quantity(QuantityKind.ENTANGLEMENT, 1))
    specs = ("A1:RIN:3:2", "A2:ST:4:1", "A1:ATA:4:1")
    inline = run_sweep(ExperimentConfig(specs, quantities, n_states=1100, master_seed=3, workers=1))
    pooled = run_sweep(ExperimentConfig(specs, quantities, n_states=1100, master_seed=3, workers=3))

    assert [row.key for row in inline.rows] == [row.key for row in pooled.rows]
    for a, b in zip(inline.rows, pooled.rows):
        assert abs(a.value - b.value) <= 1e-12
        assert a.dispersion == b.dispersion

def test_emit_csv(tmp_path):
    path = str(tmp_path / "rows.csv")
    emit_results(sample_rows(), "csv", path)

    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    assert len(lines) == 4
    assert lines[0] == ",".join(COLUMNS)
    assert load_results(path) == sample_rows()

def test_emit_jsonl(tmp_path):
    path = str(tmp_path / "rows.jsonl")
    emit_results(sample_rows(), None, path)

    with open(path, encoding="utf-8") as f:
        records = [json.loads(line) for line in f]
    assert len(records) == 3
    assert all(list(record) == COLUMNS for record in records)
    assert records[0]["dispersion"] is None
    assert load_results(path) == sample_rows()

def test_emit_append_keeps_one_header(tmp_path):
    path = str(tmp_path / "rows.csv")
    rows = sample_rows()
    emit_results(rows[:1], "csv", path, append=True)
    emit_results(rows[1:], "csv", path, append=True)

    assert load_results(path) == rows

def test_emit_failures(tmp_path):
    with pytest.raises(ResultsIOError) as e:
        emit_results(sample_rows(), "csv", str(tmp_path / "missing" / "rows.csv"))
    assert "rows.csv" in e.value.path

    with pytest.raises(ArgumentError):
        emit_results(sample_rows(), "xml", str(tmp_path / "rows.xml"))

    with pytest.raises(ResultsIOError):
        load_results(str(tmp_path / "absent.csv"))

def test_resume_skips_existing_rows(tmp_path):
    path = str(tmp_path / "rows.csv")
    config = ExperimentConfig(("A1:LIN:3:1", "A1:RIN:3:1"), (Quantity(QuantityKind.EXPRESSIBILITY),), n_states=40)
    assert existing_keys(path) == frozenset()

    first = run_sweep(config)
    emit_results(first.rows[:1], "csv", path, append=True)

    second = run_sweep(config, existing_keys(path))
    assert second.skipped == 1
    assert [row.spec for row in second.rows] == ["A1:RIN:3:1"]
    assert second.rows[0].value == first.rows[1].value

def test_summarize_repetitions():
    rows = [ResultRow("A1:LIN:5:1", "tdesign:2", value, 1e-4, 100, seed, 1.0)
            for seed, value in enumerate([1.0, 2.0, 3.0])]
    rows.append(ResultRow("A1:RIN:5:1", "tdesign:2", 5.0, 1e-4, 100, 0, 1.0))
    summary = summarize_repetitions(rows)

    assert list(summary["spec"]) == ["A1:LIN:5:1", "A1:RIN:5:1"]
    assert list(summary["mean"]) == [2.0, 5.0]
    assert summary["std"].iloc[0] == pytest.approx(1.0)
    assert list(summary["repetitions"]) == [3, 1]
    assert summarize_repetitions([]).empty

def test_run_sweep_limits_explicit_specs():
    specs = ("A1:LIN:13:1", "A1:LIN:3:65", "HAAR:13", "A1:LIN:3:1")
    result = run_sweep(ExperimentConfig(specs, (Quantity(QuantityKind.EXPRESSIBILITY),), n_states=20))

    assert [failure.spec for failure in result.failures] == ["A1:LIN:13:1", "A1:LIN:3:65", "HAAR:13"]
    assert "within 2..12" in result.failures[0].error
    assert "within 1..64" in result.failures[1].error
    assert [row.spec for row in result.rows] == ["A1:LIN:3:1"]
    assert result.exit_code == 2

def test_run_sweep_logs_pooled_rows(caplog):
    caplog.set_level(logging.INFO, logger="pqc_randomness")
    specs = ("A1:LIN:3:1", "A1:RIN:3:1")
    run_sweep(ExperimentConfig(specs, (Quantity(QuantityKind.EXPRESSIBILITY),), n_states=20, workers=2))

    for spec in specs:
        assert any(record.getMessage().startswith(f"{spec} expressibility seed=0:") for record in caplog.records)

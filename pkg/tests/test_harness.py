"""Experiment orchestration: seeding, experiment runners, CSV output."""

import csv
import io
import json
import math

import pytest

from cayleymix import harness
from cayleymix.harness import ExperimentConfig


def test_trial_seed_deterministic_and_distinct():
    s = harness.trial_seed(1, "cutoff", 0)
    assert s == harness.trial_seed(1, "cutoff", 0)
    others = {
        harness.trial_seed(1, "cutoff", 1),
        harness.trial_seed(2, "cutoff", 0),
        harness.trial_seed(1, "typdist", 0),
    }
    assert s not in others and len(others) == 3
    assert 0 <= s < 2**64


def test_config_validation_and_kind():
    with pytest.raises(harness.HarnessError):
        ExperimentConfig(trials=0)
    assert ExperimentConfig(directed=True).kind == "poisson"
    assert ExperimentConfig(directed=False).kind == "srw"


def test_config_workers_env(monkeypatch):
    monkeypatch.setenv(harness.WORKERS_ENV, "3")
    assert ExperimentConfig().workers == 3
    monkeypatch.delenv(harness.WORKERS_ENV)
    assert ExperimentConfig(workers=2).workers == 2


def test_config_json_roundtrip():
    cfg = ExperimentConfig(group="4x9", k=3, p=math.inf, trials=2)
    d = json.loads(cfg.to_json())
    assert d["group"] == "4x9" and d["k"] == 3 and d["p"] == "inf"


def _small_cfg(**kw):
    base = dict(group="1024", k=4, alphas=(-1.0, 0.0, 1.0), betas=(0.25, 0.5),
                trials=3, seed=7, lb_samples=2_000)
    base.update(kw)
    return ExperimentConfig(**base)


def test_run_cutoff_profile():
    rows = harness.run_cutoff_profile(_small_cfg())
    per_trial = [r for r in rows if r["trial"] >= 0]
    summary = [r for r in rows if r["trial"] == -1]
    assert len(summary) == 3  # one per alpha
    for r in per_trial:
        assert 0.0 <= r["value"] <= 1.0
    # tv is non-increasing in alpha within each trial
    for trial in {r["trial"] for r in per_trial}:
        tvs = [r["value"] for r in sorted((r for r in per_trial if r["trial"] == trial),
                                          key=lambda r: r["alpha"])]
        assert all(b <= a + 1e-12 for a, b in zip(tvs, tvs[1:]))
    assert all("hypotheses_ok" in r for r in summary)


def test_run_cutoff_profile_deterministic():
    a = harness.run_cutoff_profile(_small_cfg())
    b = harness.run_cutoff_profile(_small_cfg())
    assert a == b


def test_run_cutoff_profile_workers_equivalent():
    a = harness.run_cutoff_profile(_small_cfg(workers=1))
    b = harness.run_cutoff_profile(_small_cfg(workers=2))
    assert a == b


def test_run_lower_bound_audit():
    rows = harness.run_lower_bound_audit(_small_cfg())
    assert len(rows) == 3 * 3  # trials x alphas
    for r in rows:
        # margin already vetted against -3 stderr inside the runner
        assert r["tv"] >= r["bound"] - 3.0 * r["stderr"]
        assert 0.0 <= r["tv"] <= 1.0


def test_run_typdist_experiment():
    cfg = _small_cfg(group="729", k=3)
    rows = harness.run_typdist_experiment(cfg)
    per_trial = [r for r in rows if r["trial"] >= 0]
    summary = [r for r in rows if r["trial"] == -1]
    assert len(per_trial) == 3 * 2 and len(summary) == 2
    for r in rows:
        assert r["D"] >= 0 and r["ratio"] == pytest.approx(r["D"] / r["Mref"], rel=1e-12)
    for s in summary:
        ds = sorted(r["D"] for r in per_trial if r["beta"] == s["beta"])
        assert ds[0] <= s["D"] <= ds[-1]


def test_run_validation_suite():
    report = harness.run_validation_suite()
    assert len(report) >= 10
    bad = [r for r in report if not r["ok"]]
    assert bad == [], bad


def test_rows_to_csv_format():
    cfg = _small_cfg()
    rows = [{"a": 1, "b": 2.5}, {"a": 3, "c": True}]
    text = harness.rows_to_csv(rows, cfg)
    lines = text.splitlines()
    assert lines[0].startswith("# json-config: ")
    json.loads(lines[0].removeprefix("# json-config: "))  # valid JSON
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    header = next(reader)
    assert header == ["a", "b", "c"]  # union of keys, first-seen order
    body = list(reader)
    assert body[0] == ["1", "2.5", ""]
    assert body[1] == ["3", "", "true"]


def test_rows_to_csv_no_config():
    text = harness.rows_to_csv([{"x": 1}])
    assert text.splitlines()[0] == "x"


def test_write_output_file(tmp_path):
    path = tmp_path / "out.csv"
    harness.write_output("hello\n", str(path))
    assert path.read_text() == "hello\n"

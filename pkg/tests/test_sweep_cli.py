"""Tests for the sweep harness and the command-line interface."""

import json
import subprocess
import sys

import pytest

from gazepie.sweep import (
    CSV_HEADER,
    PRESETS,
    SweepSpec,
    SweepSpecError,
    run_sweep,
    to_csv,
)

FAST_SIM = {"jitter_sigma_px": 0.0, "tracker_sigma_px": 0.0, "expertise": 0.5}


def small_spec(**kw):
    base = dict(
        slice_counts=(6,),
        char_widths_px=(100.0,),
        strategies=("border",),
        phrases=("fox",),
        seeds=(0, 1),
        sim=FAST_SIM,
    )
    base.update(kw)
    return SweepSpec(**base)


def test_sweep_rows_in_spec_order():
    spec = small_spec(slice_counts=(6, 4), strategies=("border", "dwell:400"))
    rows = run_sweep(spec)
    assert [(r.slices, r.strategy) for r in rows] == [
        (6, "border"),
        (6, "dwell:400"),
        (4, "border"),
        (4, "dwell:400"),
    ]
    assert all(r.n == 2 for r in rows)


def test_sweep_csv_deterministic():
    spec = small_spec()
    assert to_csv(run_sweep(spec)) == to_csv(run_sweep(spec))


def test_sweep_parallel_matches_serial():
    spec = small_spec(slice_counts=(6, 5))
    assert to_csv(run_sweep(spec, jobs=2)) == to_csv(run_sweep(spec, jobs=1))


def test_sweep_invalid_cell_reported_not_fatal():
    spec = small_spec(slice_counts=(6,), char_widths_px=(100.0, -5.0))
    rows = run_sweep(spec)
    assert rows[0].error is None
    assert rows[1].error is not None
    assert rows[1].n == 0
    csv = to_csv(rows)
    assert csv.splitlines()[2].endswith(",,,0")


def test_sweep_spec_validation():
    with pytest.raises(SweepSpecError):
        SweepSpec(slice_counts=(), char_widths_px=(100.0,))
    with pytest.raises(SweepSpecError):
        SweepSpec.from_json('{"slice_counts": [6], "bogus": 1}')
    with pytest.raises(SweepSpecError):
        SweepSpec.from_json("not json")


def test_presets_shape():
    assert PRESETS["slices"].slice_counts == (4, 5, 6, 7)
    assert PRESETS["widths"].char_widths_px == (80.0, 100.0, 120.0, 140.0)


# --- CLI ---


def run_cli(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "gazepie", *args],
        capture_output=True,
        text=True,
        **kw,
    )


def test_cli_simulate_writes_trace_and_metrics(tmp_path):
    out = tmp_path / "run.trace"
    r = run_cli(
        "simulate", "--phrase", "hello", "--seed", "1",
        "--jitter", "0", "--tracker-noise", "0",
        "--out", str(out), "--json",
    )
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert payload["transcribed"] == "hello"
    assert payload["uncorrected_error_pct"] == 0.0
    assert out.exists()


def test_cli_replay_round_trip(tmp_path):
    out = tmp_path / "run.trace"
    r1 = run_cli(
        "simulate", "--phrase", "fox", "--seed", "2",
        "--jitter", "0", "--tracker-noise", "0",
        "--out", str(out), "--json",
    )
    r2 = run_cli("replay", str(out), "--json")
    assert r2.returncode == 0, r2.stderr
    sim = json.loads(r1.stdout)
    rep = json.loads(r2.stdout)
    assert rep["transcribed"] == "fox"
    assert rep["wpm"] == pytest.approx(sim["wpm"])


def test_cli_replay_missing_file():
    r = run_cli("replay", "missing.trace")
    assert r.returncode != 0
    assert r.stderr.startswith("error: ")
    assert "not found" in r.stderr


def test_cli_sweep_spec_file(tmp_path):
    spec = {
        "slice_counts": [6],
        "char_widths_px": [100.0],
        "strategies": ["border"],
        "phrases": ["fox"],
        "seeds": [0],
        "sim": FAST_SIM,
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    r = run_cli("sweep", str(path))
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2


def test_cli_sweep_rejects_empty_phrases(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"slice_counts": [6], "char_widths_px": [100], "phrases": []}))
    r = run_cli("sweep", str(path))
    assert r.returncode != 0
    assert r.stderr.startswith("error: ")


def test_cli_layout_json():
    r = run_cli("layout", "--slices", "6", "--json")
    assert r.returncode == 0
    info = json.loads(r.stdout)
    assert info["base_span_deg"] == 60.0
    assert info["slices"][5]["labels"] == ["Z", "SPACE", "CLEAR"]


def test_cli_layout_rejects_bad_config():
    r = run_cli("layout", "--slices", "1")
    assert r.returncode != 0
    assert r.stderr.startswith("error: ")


def test_cli_unknown_strategy():
    r = run_cli("simulate", "--phrase", "a", "--strategy", "warp")
    assert r.returncode != 0
    assert r.stderr.startswith("error: ")

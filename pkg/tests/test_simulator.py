"""Tests for waypoint planning and synthetic gaze traces."""

import math

import pytest

from gazepie import (
    BorderCrossing,
    Dwell,
    PieConfig,
    SimParams,
    SimulationError,
    build_layout,
    compute_metrics,
    plan_waypoints,
    replay,
    simulate_user,
    synthesize,
)
from gazepie.simulator import SACCADE_BASE_MS, _TraceBuilder, Waypoint

import numpy as np

NOISELESS = dict(jitter_sigma_px=0.0, tracker_sigma_px=0.0)


# --- planning ---


def test_plan_single_char_three_waypoints(cfg, layout6):
    plan = plan_waypoints("g", cfg, layout6)
    assert [w.purpose for w in plan] == ["slice", "char", "select"]


def test_plan_same_slice_repeat_skips_slice_waypoint(cfg, layout6):
    plan = plan_waypoints("gg", cfg, layout6)
    assert [w.purpose for w in plan] == ["slice", "char", "select", "char", "select"]


def test_plan_same_slice_different_char(cfg, layout6):
    # f and g share slice 1: second char needs no slice waypoint
    plan = plan_waypoints("fg", cfg, layout6)
    assert [w.purpose for w in plan] == ["slice", "char", "select", "char", "select"]


def test_plan_empty_phrase(cfg, layout6):
    assert plan_waypoints("", cfg, layout6) == []


def test_plan_unknown_char(cfg, layout6):
    with pytest.raises(SimulationError):
        plan_waypoints("g!", cfg, layout6)


def test_plan_dwell_repeat_inserts_reset(cfg, layout6):
    plan = plan_waypoints("gg", cfg, layout6, Dwell(400.0))
    assert [w.purpose for w in plan] == ["slice", "char", "reset", "char"]


def test_params_validation():
    with pytest.raises(SimulationError):
        SimParams(sample_rate_hz=0)
    with pytest.raises(SimulationError):
        SimParams(expertise=0.0)
    with pytest.raises(SimulationError):
        SimParams(p_notice=1.5)
    with pytest.raises(SimulationError):
        SimParams(fixation_ms_range=(600.0, 200.0))


# --- trace structure ---


def test_timestamps_exact_grid(cfg, layout6):
    params = SimParams(seed=5, **NOISELESS)
    trace = synthesize("abc", cfg, layout6, params)
    dt = 1000.0 / params.sample_rate_hz
    for k, s in enumerate(trace.samples):
        assert s.t_ms == k * dt


def test_same_seed_identical_traces(cfg, layout6):
    params = SimParams(seed=11)
    t1 = synthesize("hello", cfg, layout6, params)
    t2 = synthesize("hello", cfg, layout6, params)
    assert t1.samples == t2.samples


def test_different_seed_different_trace(cfg, layout6):
    t1 = synthesize("hello", cfg, layout6, SimParams(seed=1))
    t2 = synthesize("hello", cfg, layout6, SimParams(seed=2))
    assert t1.samples != t2.samples


def test_zero_amplitude_saccade_clamped_to_minimum(cfg):
    params = SimParams(seed=0, **NOISELESS)
    rng = np.random.default_rng(0)
    b = _TraceBuilder(cfg, params, rng)
    here = Waypoint(cfg.center_x_px, cfg.center_y_px, "slice")
    segs = b._segments_for(here, BorderCrossing())
    saccade = [s for s in segs if s[0] == "saccade"][0]
    assert saccade[1] == 30.0  # clamped to the lower bound


def test_long_saccade_clamped_to_maximum(cfg):
    params = SimParams(seed=0, **NOISELESS)
    rng = np.random.default_rng(0)
    b = _TraceBuilder(cfg, params, rng)
    far = Waypoint(cfg.center_x_px + 100000.0, cfg.center_y_px, "char")
    segs = b._segments_for(far, BorderCrossing())
    saccade = [s for s in segs if s[0] == "saccade"][0]
    assert saccade[1] == 120.0


def test_saccade_duration_ramps_with_amplitude(cfg):
    params = SimParams(seed=0, px_per_deg=35.0, **NOISELESS)
    rng = np.random.default_rng(0)
    b = _TraceBuilder(cfg, params, rng)
    wp = Waypoint(cfg.center_x_px + 35.0 * 20.0, cfg.center_y_px, "char")  # 20 deg
    segs = b._segments_for(wp, BorderCrossing())
    saccade = [s for s in segs if s[0] == "saccade"][0]
    assert saccade[1] == pytest.approx(SACCADE_BASE_MS + 2.0 * 20.0)


def test_meta_records_provenance(cfg, layout6):
    params = SimParams(seed=3)
    trace = synthesize("ab", cfg, layout6, params, Dwell(250.0))
    assert trace.meta["phrase"] == "ab"
    assert trace.meta["strategy"] == "dwell:250"
    assert trace.meta["params"]["seed"] == 3
    assert trace.meta["config"]["num_slices"] == 6


# --- closed loop ---


def test_zero_noise_open_loop_exact(cfg, layout6):
    params = SimParams(seed=9, **NOISELESS)
    trace = synthesize("quick fox", cfg, layout6, params)
    result = replay(trace, cfg, layout6)
    assert result.transcribed == "quick fox"


def test_zero_noise_closed_loop_exact(cfg, layout6):
    params = SimParams(seed=9, **NOISELESS)
    trace, result = simulate_user("jazzy wolves", cfg, layout6, params)
    assert result.transcribed == "jazzy wolves"
    assert result.clear_count == 0
    assert compute_metrics(result, "jazzy wolves").uncorrected_error_pct == 0.0


def test_zero_noise_closed_loop_dwell(cfg, layout6):
    params = SimParams(seed=9, **NOISELESS)
    _, result = simulate_user("hello", cfg, layout6, params, Dwell(400.0))
    assert result.transcribed == "hello"
    assert result.clear_count == 0


def test_single_space_phrase(cfg, layout6):
    params = SimParams(seed=4, **NOISELESS)
    _, result = simulate_user(" ", cfg, layout6, params)
    assert result.transcribed == " "
    assert result.total_typed == 1


def test_closed_loop_deterministic(cfg, layout6):
    params = SimParams(seed=21, jitter_sigma_px=15.0, p_notice=0.5)
    t1, r1 = simulate_user("fox", cfg, layout6, params)
    t2, r2 = simulate_user("fox", cfg, layout6, params)
    assert t1.samples == t2.samples
    assert r1 == r2


def test_noise_can_leave_uncorrected_errors(cfg, layout6):
    # with corrections disabled, heavy jitter leaves residual errors
    errors = 0
    for seed in range(12):
        params = SimParams(seed=seed, jitter_sigma_px=30.0, p_notice=0.0)
        _, result = simulate_user("the fox", cfg, layout6, params)
        errors += compute_metrics(result, "the fox").uncorrected_error_pct > 0
    assert errors > 0


def test_corrections_reduce_final_errors(cfg, layout6):
    phrase = "the quick fox"
    raw, corrected = [], []
    for seed in range(10):
        p0 = SimParams(seed=seed, jitter_sigma_px=25.0, p_notice=0.0)
        p1 = SimParams(seed=seed, jitter_sigma_px=25.0, p_notice=1.0)
        _, r0 = simulate_user(phrase, cfg, layout6, p0)
        _, r1 = simulate_user(phrase, cfg, layout6, p1)
        raw.append(compute_metrics(r0, phrase).uncorrected_error_pct)
        corrected.append(compute_metrics(r1, phrase).uncorrected_error_pct)
    assert sum(corrected) <= sum(raw)


def test_retry_cutoff_is_recorded(cfg, layout6):
    # under dwell, a 400 ms commit needs ~24 consecutive in-cell samples;
    # huge jitter makes that unreachable, so every retry budget runs out
    params = SimParams(
        seed=0,
        jitter_sigma_px=300.0,
        tracker_sigma_px=0.0,
        fixation_ms_range=(200.0, 200.0),
    )
    _, result = simulate_user("ab", cfg, layout6, params, Dwell(400.0))
    assert result.retries_exhausted == 2
    assert result.transcribed == ""


def test_unsupported_phrase_rejected(cfg, layout6):
    with pytest.raises(Exception):
        simulate_user("Hi!", cfg, layout6, SimParams(seed=0))


def test_zero_noise_grid_all_presets():
    phrase = "sphinx of black quartz"
    for slices in (4, 5, 6, 7):
        layout = build_layout(slices)
        for width in (80.0, 100.0, 120.0, 140.0):
            cfg = PieConfig(num_slices=slices, char_width_px=width)
            for strategy in (BorderCrossing(), Dwell(400.0)):
                params = SimParams(seed=13, **NOISELESS)
                _, result = simulate_user(phrase, cfg, layout, params, strategy)
                assert result.transcribed == phrase, (slices, width, strategy)

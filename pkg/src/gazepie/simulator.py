"""Synthetic gaze traces for typing a phrase on a given interface.

Movement between targets follows the standard oculomotor envelope: a
latency pause of 100-200 ms before each movement, a ballistic saccade
whose duration ramps linearly with amplitude inside the common 30-120 ms
band, then a fixation of 200-600 ms (scaled by an expertise factor) with
Gaussian jitter around the target.  Independent tracker noise is added to
every emitted sample.  All randomness comes from one seeded generator, so
a (phrase, config, params) triple always produces the same trace.

Waypoints per character: a point inside the target slice (skipped when the
slice already has focus), the center of the character's cell, and - for
border-crossing selection - a point straight out in the selection ring.
Selection waypoints get only a brief hold instead of a search fixation:
the commit fires on entry and the interface is built so the outcome needs
no visual confirmation.  Under the dwell strategy the selection trip is
dropped, the cell fixation is extended by the dwell time, and a repeated
character gets a short trip back into the pie first, because a committed
cell only rearms after the gaze leaves it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Optional, Union

import numpy as np

from .config import PieConfig
from .engine import (
    BorderCrossing,
    Dwell,
    Engine,
    GazeSample,
    Strategy,
)
from .geometry import cell_center, cell_theta, normalize_deg, polar_to_screen, slice_spans
from .layout import ClearLast, Layout, locate
from .metrics import SessionResult

SACCADE_BASE_MS = 20.0
SACCADE_MS_PER_DEG = 2.0
# brief hold after crossing into the selection ring: the commit needs no
# visual confirmation, but the sampler must observe the gaze inside the
# ring before the next movement starts
SELECT_HOLD_MS = 80.0


class SimulationError(ValueError):
    """Raised for phrases or parameters the simulator cannot execute."""


@dataclass(frozen=True)
class SimParams:
    seed: int = 0
    sample_rate_hz: float = 60.0
    px_per_deg: float = 35.0
    jitter_sigma_px: float = 10.0
    tracker_sigma_px: float = 5.0
    fixation_ms_range: tuple[float, float] = (200.0, 600.0)
    latency_ms_range: tuple[float, float] = (100.0, 200.0)
    saccade_ms_range: tuple[float, float] = (30.0, 120.0)
    expertise: float = 1.0  # scales fixation (search) time; 1 = novice
    p_notice: float = 1.0  # chance a wrong commit is noticed and corrected
    max_retries: int = 5

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise SimulationError("sample_rate_hz must be > 0")
        if self.px_per_deg <= 0:
            raise SimulationError("px_per_deg must be > 0")
        for name in ("fixation_ms_range", "latency_ms_range", "saccade_ms_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise SimulationError(f"{name} is empty: ({lo}, {hi})")
        if not 0.0 < self.expertise <= 1.0:
            raise SimulationError("expertise must be in (0, 1]")
        if not 0.0 <= self.p_notice <= 1.0:
            raise SimulationError("p_notice must be in [0, 1]")
        if self.jitter_sigma_px < 0 or self.tracker_sigma_px < 0:
            raise SimulationError("noise sigmas must be >= 0")

    def to_dict(self) -> dict:
        d = asdict(self)
        for name in ("fixation_ms_range", "latency_ms_range", "saccade_ms_range"):
            d[name] = list(d[name])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SimParams":
        d = dict(d)
        for name in ("fixation_ms_range", "latency_ms_range", "saccade_ms_range"):
            if name in d:
                d[name] = tuple(d[name])
        return cls(**d)


@dataclass(frozen=True)
class GazeTrace:
    samples: tuple[GazeSample, ...]
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class Waypoint:
    x_px: float
    y_px: float
    purpose: str  # "slice" | "char" | "select" | "reset"


SLICE_WAYPOINT_RADIUS_FRACTION = 0.6


def _slice_waypoint(cfg: PieConfig, target_slice: int, current_focus: Optional[int]) -> Waypoint:
    """Aim point inside the target slice's currently hittable span."""
    spans = slice_spans(cfg, focused=current_focus)
    _, start, end = spans[target_slice]
    theta = normalize_deg((start + end) / 2.0)
    x, y = polar_to_screen(cfg, SLICE_WAYPOINT_RADIUS_FRACTION * cfg.pie_radius_px, theta)
    return Waypoint(x, y, "slice")


def _selection_waypoint(cfg: PieConfig, theta: float) -> Waypoint:
    r = (
        cfg.pie_radius_px
        + cfg.char_width_px
        + cfg.safe_width_px
        + cfg.selection_width_px / 2.0
    )
    x, y = polar_to_screen(cfg, r, theta)
    return Waypoint(x, y, "select")


def _plan_cell(
    cell: tuple[int, int],
    cfg: PieConfig,
    layout: Layout,
    focus: Optional[int],
    strategy: Strategy,
    latched_cell: Optional[tuple[int, int]],
) -> tuple[list[Waypoint], int]:
    """Waypoints to enter one item from the current focus state."""
    s, i = cell
    wps: list[Waypoint] = []
    if s != focus:
        wps.append(_slice_waypoint(cfg, s, focus))
    elif isinstance(strategy, Dwell) and latched_cell == cell:
        # a committed cell rearms only after the gaze leaves it
        theta = cell_theta(cfg, layout, s, i)
        x, y = polar_to_screen(cfg, SLICE_WAYPOINT_RADIUS_FRACTION * cfg.pie_radius_px, theta)
        wps.append(Waypoint(x, y, "reset"))
    theta = cell_theta(cfg, layout, s, i)
    cx, cy = cell_center(cfg, layout, s, i)
    wps.append(Waypoint(cx, cy, "char"))
    if isinstance(strategy, BorderCrossing):
        wps.append(_selection_waypoint(cfg, theta))
    return wps, s


def plan_waypoints(
    phrase: str,
    cfg: PieConfig,
    layout: Layout,
    strategy: Strategy = BorderCrossing(),
    initial_focus: Optional[int] = None,
) -> list[Waypoint]:
    """Open-loop waypoint plan for typing a phrase without errors.

    Characters in the already-focused slice skip the slice waypoint
    (mark-ahead: the second and third steps suffice until the next
    character lives in a different slice).
    """
    focus = initial_focus
    latched: Optional[tuple[int, int]] = None
    plan: list[Waypoint] = []
    for ch in phrase:
        try:
            cell = locate(layout, ch)
        except Exception as exc:
            raise SimulationError(f"character {ch!r} not present in layout") from exc
        wps, focus = _plan_cell(cell, cfg, layout, focus, strategy, latched)
        plan.extend(wps)
        latched = cell if isinstance(strategy, Dwell) else None
    return plan


class _TraceBuilder:
    """Emits evenly clocked samples along latency/saccade/fixation segments.

    The sample clock is global: sample k is at exactly k * (1000 / rate) ms
    regardless of how many separate movement batches are appended, so a
    closed-loop simulation produces one seamless trace.
    """

    def __init__(self, cfg: PieConfig, params: SimParams, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        self.dt_ms = 1000.0 / params.sample_rate_hz
        self.pos = (cfg.center_x_px, cfg.center_y_px)
        self.t_end_ms = 0.0
        self.next_k = 0
        self.samples: list[GazeSample] = []

    def _segments_for(self, wp: Waypoint, strategy: Strategy) -> list[tuple]:
        p = self.params
        rng = self.rng
        segs = []
        latency = rng.uniform(*p.latency_ms_range)
        segs.append(("hold", latency, self.pos))
        dist = math.hypot(wp.x_px - self.pos[0], wp.y_px - self.pos[1])
        amplitude_deg = dist / p.px_per_deg
        lo, hi = p.saccade_ms_range
        sacc = min(max(SACCADE_BASE_MS + SACCADE_MS_PER_DEG * amplitude_deg, lo), hi)
        segs.append(("saccade", sacc, (self.pos, (wp.x_px, wp.y_px))))
        fix = rng.uniform(*p.fixation_ms_range) * p.expertise
        if wp.purpose == "select":
            fix = SELECT_HOLD_MS  # commit fires on entry; no visual search
        elif wp.purpose == "char" and isinstance(strategy, Dwell):
            fix += strategy.dwell_ms
        if fix > 0.0:
            segs.append(("fix", fix, (wp.x_px, wp.y_px)))
        self.pos = (wp.x_px, wp.y_px)
        return segs

    def run(self, waypoints: list[Waypoint], strategy: Strategy) -> list[GazeSample]:
        """Append movement for the waypoints; returns the new samples."""
        segs = []
        for wp in waypoints:
            segs.extend(self._segments_for(wp, strategy))
        if not segs:
            return []
        durations = np.array([s[1] for s in segs], dtype=float)
        ends = self.t_end_ms + np.cumsum(durations)
        starts = ends - durations
        batch_end = ends[-1]

        ks = np.arange(self.next_k, math.ceil(batch_end / self.dt_ms))
        times = ks * self.dt_ms
        times = times[times < batch_end]
        if len(times) == 0:
            self.t_end_ms = batch_end
            return []

        seg_idx = np.searchsorted(ends, times, side="right")
        seg_idx = np.minimum(seg_idx, len(segs) - 1)
        xs = np.empty(len(times))
        ys = np.empty(len(times))
        is_fix = np.zeros(len(times), dtype=bool)
        for j, (kind, _dur, data) in enumerate(segs):
            mask = seg_idx == j
            if not mask.any():
                continue
            if kind == "saccade":
                (x0, y0), (x1, y1) = data
                u = (times[mask] - starts[j]) / durations[j]
                xs[mask] = x0 + u * (x1 - x0)
                ys[mask] = y0 + u * (y1 - y0)
            else:
                xs[mask] = data[0]
                ys[mask] = data[1]
                if kind == "fix":
                    is_fix[mask] = True

        # draw noise unconditionally so the stream stays aligned across
        # sigma settings (common random numbers for sweep comparisons)
        jitter = self.rng.standard_normal((len(times), 2)) * self.params.jitter_sigma_px
        tracker = self.rng.standard_normal((len(times), 2)) * self.params.tracker_sigma_px
        xs = xs + np.where(is_fix, jitter[:, 0], 0.0) + tracker[:, 0]
        ys = ys + np.where(is_fix, jitter[:, 1], 0.0) + tracker[:, 1]

        new = [
            GazeSample(float(k * self.dt_ms), float(x), float(y))
            for k, x, y in zip(ks[: len(times)], xs, ys)
        ]
        self.samples.extend(new)
        self.next_k += len(new)
        self.t_end_ms = batch_end
        return new


def _trace_meta(phrase: str, cfg: PieConfig, params: SimParams, strategy: Strategy) -> dict:
    return {
        "kind": "synthetic",
        "phrase": phrase,
        "strategy": strategy_name(strategy),
        "params": params.to_dict(),
        "config": cfg.to_dict(),
    }


def strategy_name(strategy: Strategy) -> str:
    if isinstance(strategy, Dwell):
        return f"dwell:{strategy.dwell_ms:g}"
    return "border"


def parse_strategy(name: str) -> Strategy:
    if name == "border":
        return BorderCrossing()
    if name == "dwell":
        return Dwell()
    if name.startswith("dwell:"):
        return Dwell(dwell_ms=float(name.split(":", 1)[1]))
    raise ValueError(f"unknown strategy {name!r} (expected 'border' or 'dwell[:MS]')")


def synthesize(
    phrase: str,
    cfg: PieConfig,
    layout: Layout,
    params: SimParams,
    strategy: Strategy = BorderCrossing(),
) -> GazeTrace:
    """Open-loop trace for a phrase: plan once, move through every waypoint."""
    plan = plan_waypoints(phrase, cfg, layout, strategy)
    rng = np.random.default_rng(params.seed)
    builder = _TraceBuilder(cfg, params, rng)
    builder.run(plan, strategy)
    return GazeTrace(samples=tuple(builder.samples), meta=_trace_meta(phrase, cfg, params, strategy))


def simulate_user(
    phrase: str,
    cfg: PieConfig,
    layout: Layout,
    params: SimParams,
    strategy: Strategy = BorderCrossing(),
) -> tuple[GazeTrace, SessionResult]:
    """Closed-loop simulation: type, watch the output, correct mistakes.

    After each attempted character the simulated user compares the buffer
    with what they meant to have typed.  A wrong commit is noticed with
    probability ``p_notice``; noticing triggers CLEAR commits back to the
    last good prefix and a retry.  Every character gets at most
    ``max_retries`` retries before the user gives up and moves on.
    """
    for ch in phrase:
        locate(layout, ch)  # fail fast on unplannable phrases
    rng = np.random.default_rng(params.seed)
    builder = _TraceBuilder(cfg, params, rng)
    engine = Engine(cfg, layout, strategy)
    clear_cell = locate(layout, ClearLast())
    believed = ""
    exhausted = 0

    def run_cell(cell: tuple[int, int]) -> None:
        latched = engine.state.dwell_latch if isinstance(strategy, Dwell) else None
        wps, _ = _plan_cell(cell, cfg, layout, engine.state.focused, strategy, latched)
        for sample in builder.run(wps, strategy):
            engine.step(sample)

    for ch in phrase:
        cell = locate(layout, ch)
        want_char = " " if ch == " " else ch
        attempts = 0
        while True:
            run_cell(cell)
            buf = engine.state.buffer
            if buf == believed + want_char:
                believed = buf
                break
            if attempts >= params.max_retries:
                exhausted += 1
                believed = buf
                break
            attempts += 1
            if buf == believed:
                continue  # commit missed entirely; aim again
            if rng.random() >= params.p_notice:
                believed = buf  # wrong commit went unnoticed
                break
            clears = 0
            max_clears = len(buf) - len(believed) + params.max_retries
            while engine.state.buffer != believed and clears < max_clears:
                run_cell(clear_cell)
                clears += 1
            if engine.state.buffer != believed:
                believed = engine.state.buffer  # correction failed; resync

    samples = builder.samples
    duration = samples[-1].t_ms - samples[0].t_ms if samples else 0.0
    trace = GazeTrace(
        samples=tuple(samples), meta=_trace_meta(phrase, cfg, params, strategy)
    )
    return trace, engine.session_result(duration, retries_exhausted=exhausted)

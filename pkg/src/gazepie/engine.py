"""The interaction state machine: gaze samples in, commits out.

One engine serves one typing session.  Each sample is classified against
the current focus and drives the three-step entry cycle: focusing a slice
swaps the outer rings immediately, touching a character cell highlights
and arms it, and crossing into the selection region while armed commits
the highlighted item.  The safe ring between the character and selection
rings absorbs jitter: it never changes state, and because a commit disarms
the engine until the gaze re-enters a character cell, oscillation across
any single boundary cannot enter a character twice.

The dwell strategy reuses the same geometry but ignores the outer rings
for selection: a character commits once the gaze has stayed in its cell
for an accumulated dwell time, and the cell must be left before it can
fire again.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Union

from .config import PieConfig
from .geometry import RegionKind, hit_test
from .layout import AppendChar, AppendSpace, ClearLast, Item, Layout
from .metrics import SessionResult


class NonMonotonicSampleError(ValueError):
    """Raised when a sample's timestamp does not advance the clock."""


@dataclass(frozen=True)
class GazeSample:
    t_ms: float
    x_px: float
    y_px: float


@dataclass(frozen=True)
class BorderCrossing:
    """Commit by crossing from the safe ring into the selection ring."""


@dataclass(frozen=True)
class Dwell:
    """Commit by resting on a character cell for ``dwell_ms``."""

    dwell_ms: float = 400.0


Strategy = Union[BorderCrossing, Dwell]


class EventKind(Enum):
    FOCUS_CHANGED = "focus_changed"
    HIGHLIGHT_CHANGED = "highlight_changed"
    COMMITTED = "committed"
    BUFFER_CHANGED = "buffer_changed"
    NO_CHANGE = "no_change"


@dataclass(frozen=True)
class EngineEvent:
    kind: EventKind
    t_ms: float
    item: Optional[Item] = None


@dataclass
class EngineState:
    focused: Optional[int] = None
    highlighted: Optional[int] = None
    armed: bool = False
    buffer: str = ""
    commit_log: list = field(default_factory=list)  # (t_ms, Item, resulting_buffer_len)
    dwell_accum_ms: float = 0.0
    # bookkeeping for debouncing and dwell accumulation
    last_t_ms: Optional[float] = None
    last_hit_kind: Optional[RegionKind] = None
    last_cell: Optional[tuple[int, int]] = None  # (slice, item) of previous sample
    dwell_latch: Optional[tuple[int, int]] = None  # cell that must be left before re-arming


def apply_action(buffer: str, item: Item) -> str:
    """Apply one committed item's edit action to the output buffer."""
    action = item.action
    if isinstance(action, AppendChar):
        return buffer + action.char
    if isinstance(action, AppendSpace):
        return buffer + " "
    if isinstance(action, ClearLast):
        return buffer[:-1] if buffer else buffer
    raise TypeError(f"unknown action {action!r}")


class Engine:
    """Folds gaze samples into focus/highlight/commit state.

    ``always_armed`` is a test-only switch that removes the arming rule
    (every entry into the selection region commits); it exists to
    demonstrate the double-entry failure the safe region and arming
    prevent.
    """

    def __init__(
        self,
        cfg: PieConfig,
        layout: Layout,
        strategy: Strategy = BorderCrossing(),
        always_armed: bool = False,
    ):
        self.cfg = cfg
        self.layout = layout
        self.strategy = strategy
        self.always_armed = always_armed
        self.state = EngineState()

    def step(self, sample: GazeSample) -> list[EngineEvent]:
        """Advance by one sample; returns the events it caused."""
        st = self.state
        if st.last_t_ms is not None and sample.t_ms <= st.last_t_ms:
            raise NonMonotonicSampleError(
                f"sample at {sample.t_ms} ms does not advance past {st.last_t_ms} ms"
            )
        dt = 0.0 if st.last_t_ms is None else sample.t_ms - st.last_t_ms
        hit = hit_test(self.cfg, self.layout, st.focused, sample.x_px, sample.y_px)
        t = sample.t_ms
        events: list[EngineEvent] = []

        if hit.kind is RegionKind.PIE_SLICE:
            if hit.index != st.focused:
                st.focused = hit.index
                if st.highlighted is not None or st.armed:
                    events.append(EngineEvent(EventKind.HIGHLIGHT_CHANGED, t))
                st.highlighted = None
                st.armed = False
                st.dwell_accum_ms = 0.0
                st.dwell_latch = None
                events.append(EngineEvent(EventKind.FOCUS_CHANGED, t))
            elif isinstance(self.strategy, Dwell):
                st.dwell_accum_ms = 0.0
                st.dwell_latch = None
        elif isinstance(self.strategy, Dwell):
            events.extend(self._step_dwell(hit, t, dt))
        else:
            events.extend(self._step_border(hit, t))

        st.last_cell = (
            (st.focused, hit.index)
            if hit.kind is RegionKind.CHAR_CELL and st.focused is not None
            else None
        )
        st.last_hit_kind = hit.kind
        st.last_t_ms = sample.t_ms
        if not events:
            events.append(EngineEvent(EventKind.NO_CHANGE, t))
        return events

    def _step_border(self, hit, t: float) -> list[EngineEvent]:
        st = self.state
        events: list[EngineEvent] = []
        if hit.kind is RegionKind.CHAR_CELL:
            if st.highlighted != hit.index or not st.armed:
                st.highlighted = hit.index
                st.armed = True
                events.append(EngineEvent(EventKind.HIGHLIGHT_CHANGED, t))
        elif hit.kind is RegionKind.SELECTION:
            entering = st.last_hit_kind is not RegionKind.SELECTION
            may_fire = st.armed or (self.always_armed and entering)
            if may_fire and st.highlighted is not None and st.focused is not None:
                events.extend(self._commit(st.focused, st.highlighted, t))
                st.armed = False
        # SAFE and BACKGROUND change nothing
        return events

    def _step_dwell(self, hit, t: float, dt: float) -> list[EngineEvent]:
        st = self.state
        events: list[EngineEvent] = []
        if hit.kind is not RegionKind.CHAR_CELL:
            st.dwell_accum_ms = 0.0
            st.dwell_latch = None
            return events
        cell = (st.focused, hit.index)
        if st.highlighted != hit.index:
            st.highlighted = hit.index
            events.append(EngineEvent(EventKind.HIGHLIGHT_CHANGED, t))
        if st.dwell_latch == cell:
            return events  # committed here; must leave the cell first
        st.dwell_latch = None
        if st.last_cell == cell:
            st.dwell_accum_ms += dt
        else:
            st.dwell_accum_ms = 0.0
        if st.dwell_accum_ms >= self.strategy.dwell_ms:
            events.extend(self._commit(st.focused, hit.index, t))
            st.dwell_latch = cell
            st.dwell_accum_ms = 0.0
        return events

    def _commit(self, slice_index: int, item_index: int, t: float) -> list[EngineEvent]:
        st = self.state
        item = self.layout.item(slice_index, item_index)
        st.buffer = apply_action(st.buffer, item)
        st.commit_log.append((t, item, len(st.buffer)))
        return [
            EngineEvent(EventKind.COMMITTED, t, item=item),
            EngineEvent(EventKind.BUFFER_CHANGED, t),
        ]

    def session_result(self, duration_ms: float, retries_exhausted: int = 0) -> SessionResult:
        """Snapshot of this session as a SessionResult."""
        st = self.state
        typed = sum(
            1 for _, item, _ in st.commit_log if not isinstance(item.action, ClearLast)
        )
        clears = len(st.commit_log) - typed
        return SessionResult(
            transcribed=st.buffer,
            commit_log=tuple((t, item) for t, item, _ in st.commit_log),
            duration_ms=duration_ms,
            total_typed=typed,
            clear_count=clears,
            retries_exhausted=retries_exhausted,
        )


def replay(
    trace,
    cfg: PieConfig,
    layout: Layout,
    strategy: Strategy = BorderCrossing(),
    always_armed: bool = False,
) -> SessionResult:
    """Fold a whole trace through a fresh engine.

    ``trace`` is a GazeTrace or any iterable of GazeSample.  Deterministic:
    identical inputs produce identical results.
    """
    samples = list(getattr(trace, "samples", trace))
    engine = Engine(cfg, layout, strategy, always_armed=always_armed)
    for sample in samples:
        engine.step(sample)
    duration = samples[-1].t_ms - samples[0].t_ms if samples else 0.0
    return engine.session_result(duration)

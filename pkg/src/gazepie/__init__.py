"""gazepie: dwell-free pie-menu gaze typing.

A deterministic implementation of a circular gaze-typing interface: pie
geometry with focus expansion, character/safe/selection rings, a
border-crossing interaction engine with jitter debouncing, a seeded
synthetic gaze simulator, text-entry metrics, a sweep harness and a
session server.
"""

from .config import ConfigError, ConfigWarning, PieConfig
from .engine import (
    BorderCrossing,
    Dwell,
    Engine,
    EngineEvent,
    EngineState,
    EventKind,
    GazeSample,
    NonMonotonicSampleError,
    replay,
)
from .geometry import (
    RegionHit,
    RegionKind,
    active_backend,
    cell_center,
    hit_test,
    normalize_deg,
    polar_to_screen,
    slice_spans,
)
from .layout import (
    AppendChar,
    AppendSpace,
    ClearLast,
    Item,
    Layout,
    LayoutError,
    build_layout,
    locate,
)
from .metrics import (
    InvalidSessionError,
    Metrics,
    SessionResult,
    compute_metrics,
    edit_distance,
)
from .simulator import (
    GazeTrace,
    SimParams,
    SimulationError,
    Waypoint,
    parse_strategy,
    plan_waypoints,
    simulate_user,
    strategy_name,
    synthesize,
)
from .sweep import PRESETS, SweepRow, SweepSpec, run_sweep, to_csv
from .traceio import TraceFormatError, load_trace, read_trace, save_trace, write_trace

__version__ = "0.1.0"

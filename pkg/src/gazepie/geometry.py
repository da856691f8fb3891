"""Angular and radial geometry: slice spans, focus expansion, hit-testing.

Convention (fixed for the whole package): angles are degrees in [0, 360),
measured clockwise from 12 o'clock, in screen coordinates (y grows
downward).  Each slice initially spans an equal share of the circle, so
the clockwise alphabetical arrangement starts at the top.  A focused
slice widens symmetrically around its unexpanded center by ``expand_deg``
per side, and each adjacent slice gives up that much on the shared side.
Spans always partition the full circle.

Boundary ownership is deterministic: an angular span owns its start edge
(half-open ``[start, end)``), and every radial boundary belongs to the
inner region (the pie owns ``r == pie_radius``, the character ring owns
its outer edge, and so on).

The per-point classifier runs in a compiled Cython kernel when available,
with a pure-Python twin as fallback; both produce identical results.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional

from . import _kernel_py
from .config import PieConfig

if TYPE_CHECKING:
    from .layout import Layout

try:
    from . import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

_BACKENDS = {"pure": _kernel_py.classify}
if _kernel_c is not None:
    _BACKENDS["compiled"] = _kernel_c.classify

_env = os.environ.get("GAZEPIE_BACKEND", "")
if _env and _env in _BACKENDS:
    _active = _env
elif _env:
    raise ImportError(f"GAZEPIE_BACKEND={_env!r} is not available; have {sorted(_BACKENDS)}")
else:
    _active = "compiled" if "compiled" in _BACKENDS else "pure"
_classify = _BACKENDS[_active]


def active_backend() -> str:
    """Name of the classification kernel in use: 'compiled' or 'pure'."""
    return _active


def available_backends() -> dict:
    """Mapping of backend name to raw classify function (for benchmarks)."""
    return dict(_BACKENDS)


def use_backend(name: str) -> None:
    """Force a classification backend (mainly for tests and benchmarks)."""
    global _active, _classify
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    _active = name
    _classify = _BACKENDS[name]


class RegionKind(Enum):
    PIE_SLICE = 0
    CHAR_CELL = 1
    SAFE = 2
    SELECTION = 3
    BACKGROUND = 4


@dataclass(frozen=True)
class RegionHit:
    """Classification of one gaze point.

    ``index`` is the slice index for PIE_SLICE, the item index within the
    focused slice for CHAR_CELL, and None otherwise.
    """

    kind: RegionKind
    index: Optional[int]
    r_px: float
    theta_deg: float


def normalize_deg(deg: float) -> float:
    """Map any angle into [0, 360)."""
    d = math.fmod(deg, 360.0)
    if d < 0.0:
        d += 360.0
    if d >= 360.0:  # fmod of a tiny negative can round back up to 360
        d = 0.0
    return d


def slice_spans(cfg: PieConfig, focused: Optional[int] = None) -> list[tuple[int, float, float]]:
    """Angular spans of all slices under the given focus.

    Returns ``[(slice_index, start_deg, end_deg), ...]`` ordered by slice
    index.  ``start_deg`` is normalized into [0, 360); ``end_deg`` is
    ``start + width`` and may exceed 360 for spans that wrap past the top.
    The widths always sum to exactly 360.
    """
    n = cfg.num_slices
    base = cfg.base_span_deg
    starts = [i * base for i in range(n)]
    widths = [base] * n
    if focused is not None:
        if not 0 <= focused < n:
            raise ValueError(f"focused slice {focused} out of range for {n} slices")
        f = focused
        e = cfg.expand_deg
        center = (f + 0.5) * base
        starts[f] = center - cfg.focused_span_deg / 2.0
        widths[f] = cfg.focused_span_deg
        if n == 2:
            other = 1 - f
            starts[other] += e
            widths[other] -= 2.0 * e
        else:
            nxt = (f + 1) % n
            prv = (f - 1) % n
            starts[nxt] += e
            widths[nxt] -= e
            widths[prv] -= e
    return [(i, normalize_deg(starts[i]), normalize_deg(starts[i]) + widths[i]) for i in range(n)]


def _focused_items(layout: "Layout", focused: Optional[int]) -> int:
    if focused is None:
        return 1  # unused by the kernel when nothing has focus
    return len(layout.slices[focused])


def hit_test(
    cfg: PieConfig,
    layout: "Layout",
    focused: Optional[int],
    x: float,
    y: float,
) -> RegionHit:
    """Classify a screen point into exactly one region.

    Total function: every point maps to exactly one kind.  Character, safe
    and selection rings exist only inside the focused slice's expanded
    span; everything else beyond the pie disk is BACKGROUND.
    """
    kind, index, r, theta = _classify(
        x,
        y,
        cfg.center_x_px,
        cfg.center_y_px,
        cfg.pie_radius_px,
        cfg.char_width_px,
        cfg.safe_width_px,
        cfg.selection_width_px,
        cfg.num_slices,
        cfg.expand_deg,
        -1 if focused is None else focused,
        _focused_items(layout, focused),
    )
    return RegionHit(RegionKind(kind), index if index >= 0 else None, r, theta)


def polar_to_screen(cfg: PieConfig, r_px: float, theta_deg: float) -> tuple[float, float]:
    """Screen point at polar (r, theta) about the pie center."""
    t = math.radians(theta_deg)
    return (
        cfg.center_x_px + r_px * math.sin(t),
        cfg.center_y_px - r_px * math.cos(t),
    )


def cell_theta(cfg: PieConfig, layout: "Layout", focused: int, item: int) -> float:
    """Angular center of an item's cell in the focused slice's span."""
    n_items = len(layout.slices[focused])
    if not 0 <= item < n_items:
        raise IndexError(f"item {item} out of range for slice {focused} ({n_items} items)")
    start = (focused + 0.5) * cfg.base_span_deg - cfg.focused_span_deg / 2.0
    cell = cfg.focused_span_deg / n_items
    return normalize_deg(start + (item + 0.5) * cell)


def cell_center(cfg: PieConfig, layout: "Layout", focused: int, item: int) -> tuple[float, float]:
    """Midpoint of an item's character cell, halfway across the ring.

    Round-trips through hit_test: the returned point always classifies as
    CHAR_CELL of the same item while ``focused`` holds focus.
    """
    theta = cell_theta(cfg, layout, focused, item)
    return polar_to_screen(cfg, cfg.pie_radius_px + cfg.char_width_px / 2.0, theta)

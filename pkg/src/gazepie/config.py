"""Geometric parameters of the pie interface and their validation rules."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, asdict


class ConfigError(ValueError):
    """Raised for a geometrically inconsistent interface configuration."""


class ConfigWarning(UserWarning):
    """Raised for configurations that are valid but likely hard to use."""


@dataclass(frozen=True)
class PieConfig:
    """All geometric parameters of the interface.

    Angles are degrees, lengths are pixels.  ``expand_deg`` is the extra
    angle a focused slice gains on *each* side: an unfocused slice spans
    ``360 / num_slices`` degrees, a focused one that plus twice the
    expansion.
    """

    num_slices: int = 6
    pie_radius_px: float = 240.0
    char_width_px: float = 100.0
    safe_width_px: float = 20.0
    selection_width_px: float = 120.0
    expand_deg: float = 20.0
    center_x_px: float = 512.0
    center_y_px: float = 512.0

    def __post_init__(self):
        if self.num_slices < 2:
            raise ConfigError(f"num_slices must be >= 2, got {self.num_slices}")
        for name in ("pie_radius_px", "char_width_px", "selection_width_px"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.safe_width_px < 0:
            raise ConfigError(f"safe_width_px must be >= 0, got {self.safe_width_px}")
        if self.expand_deg < 0:
            raise ConfigError(f"expand_deg must be >= 0, got {self.expand_deg}")
        if self.focused_span_deg >= 3.0 * self.base_span_deg:
            raise ConfigError(
                f"focused slice span {self.focused_span_deg:g} deg must stay below "
                f"three base spans ({3 * self.base_span_deg:g} deg); expand_deg too "
                f"large for {self.num_slices} slices"
            )
        # a focused slice must leave every neighbor a positive span; with
        # only two slices the lone neighbor is eaten from both sides
        limit = self.base_span_deg / 2.0 if self.num_slices == 2 else self.base_span_deg
        if self.expand_deg >= limit:
            raise ConfigError(
                f"expand_deg={self.expand_deg:g} leaves a neighbor slice with "
                f"no span (limit {limit:g} for {self.num_slices} slices)"
            )
        if self.focused_span_deg > 2.0 * self.base_span_deg:
            warnings.warn(
                f"focused span {self.focused_span_deg:g} deg exceeds two base spans "
                f"({2 * self.base_span_deg:g} deg); focused slices will cover most "
                "of both neighbors",
                ConfigWarning,
                stacklevel=2,
            )

    @property
    def base_span_deg(self) -> float:
        """Angular span of one unfocused slice."""
        return 360.0 / self.num_slices

    @property
    def focused_span_deg(self) -> float:
        """Angular span of the focused slice."""
        return self.base_span_deg + 2.0 * self.expand_deg

    @property
    def outer_radius_px(self) -> float:
        """Outer edge of the selection ring."""
        return (
            self.pie_radius_px
            + self.char_width_px
            + self.safe_width_px
            + self.selection_width_px
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PieConfig":
        return cls(**d)

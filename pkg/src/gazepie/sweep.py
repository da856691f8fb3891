"""Parameter sweeps over slice counts, ring widths and selection strategies.

A sweep runs every (slice_count, char_width, strategy) cell over all
phrase x seed combinations with simulated users and reports per-cell mean
wpm and mean uncorrected error rate as CSV.  Output is deterministic for a
given spec: cells appear in spec order and repeated runs are byte
identical.  Cells may be computed in parallel without changing anything.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .config import ConfigError, PieConfig
from .layout import build_layout
from .metrics import compute_metrics
from .simulator import SimParams, parse_strategy, simulate_user, strategy_name

CSV_HEADER = "slices,width_px,strategy,mean_wpm,mean_error_pct,n"

# lowercase pangram-style stimulus set used when a spec names no phrases
DEFAULT_PHRASES = [
    "the quick brown fox jumps over the lazy dog",
    "pack my box with five dozen liquor jugs",
    "how vexingly quick daft zebras jump",
]


class SweepSpecError(ValueError):
    """Raised for structurally invalid sweep specs."""


@dataclass(frozen=True)
class SweepSpec:
    slice_counts: tuple[int, ...]
    char_widths_px: tuple[float, ...]
    strategies: tuple[str, ...] = ("border",)
    phrases: tuple[str, ...] = tuple(DEFAULT_PHRASES)
    seeds: tuple[int, ...] = (0, 1, 2)
    sim: dict = field(default_factory=dict)  # SimParams field overrides
    config: dict = field(default_factory=dict)  # PieConfig field overrides

    def __post_init__(self):
        for name in ("slice_counts", "char_widths_px", "strategies", "phrases", "seeds"):
            if not getattr(self, name):
                raise SweepSpecError(f"{name} must be a nonempty list")
        for s in self.strategies:
            parse_strategy(s)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        known = {
            "slice_counts",
            "char_widths_px",
            "strategies",
            "phrases",
            "seeds",
            "sim",
            "config",
        }
        unknown = set(d) - known
        if unknown:
            raise SweepSpecError(f"unknown spec keys: {sorted(unknown)}")
        kwargs = {}
        for name in known & set(d):
            v = d[name]
            kwargs[name] = tuple(v) if isinstance(v, list) else v
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise SweepSpecError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "SweepSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SweepSpecError(f"invalid JSON: {exc.msg}") from exc
        if not isinstance(d, dict):
            raise SweepSpecError("spec must be a JSON object")
        return cls.from_dict(d)


# sweep presets mirroring the slice-count and ring-width comparisons
PRESETS = {
    "slices": SweepSpec(slice_counts=(4, 5, 6, 7), char_widths_px=(100.0,)),
    "widths": SweepSpec(slice_counts=(6,), char_widths_px=(80.0, 100.0, 120.0, 140.0)),
}


@dataclass(frozen=True)
class SweepRow:
    slices: int
    width_px: float
    strategy: str
    mean_wpm: float | None
    mean_error_pct: float | None
    n: int
    error: str | None = None

    def as_csv(self) -> str:
        wpm = "" if self.mean_wpm is None else f"{self.mean_wpm:.6f}"
        err = "" if self.mean_error_pct is None else f"{self.mean_error_pct:.6f}"
        return f"{self.slices},{self.width_px:g},{self.strategy},{wpm},{err},{self.n}"


def _run_cell(args) -> SweepRow:
    slices, width, strat_name, phrases, seeds, sim_overrides, cfg_overrides = args
    try:
        cfg = PieConfig(**{**cfg_overrides, "num_slices": slices, "char_width_px": width})
        layout = build_layout(slices)
        strategy = parse_strategy(strat_name)
    except (ConfigError, ValueError) as exc:
        return SweepRow(slices, width, strat_name, None, None, 0, error=str(exc))
    base = SimParams(**sim_overrides)
    wpms = []
    errs = []
    for phrase in phrases:
        for seed in seeds:
            params = replace(base, seed=seed)
            _, result = simulate_user(phrase, cfg, layout, params, strategy)
            m = compute_metrics(result, phrase)
            wpms.append(m.wpm)
            errs.append(m.uncorrected_error_pct)
    n = len(wpms)
    return SweepRow(
        slices,
        width,
        strategy_name(strategy),
        sum(wpms) / n,
        sum(errs) / n,
        n,
    )


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """All cells of the sweep, in spec order (slices, then width, then strategy)."""
    tasks = [
        (s, w, strat, spec.phrases, spec.seeds, spec.sim, spec.config)
        for s in spec.slice_counts
        for w in spec.char_widths_px
        for strat in spec.strategies
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_cell, tasks))
    return [_run_cell(t) for t in tasks]


def to_csv(rows: list[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.as_csv() for r in rows]) + "\n"

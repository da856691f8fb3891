"""Text-entry performance measures for one typing session.

wpm follows the chars/5 convention; the uncorrected error rate is the
Levenshtein distance between transcribed and target text as a percentage
of all characters typed (including ones later cleared).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .layout import Item


class InvalidSessionError(ValueError):
    """Raised for sessions whose timing makes the metrics undefined."""


@dataclass(frozen=True)
class SessionResult:
    """Outcome of one typing session (live, replayed, or simulated)."""

    transcribed: str
    commit_log: tuple[tuple[float, Item], ...]
    duration_ms: float
    total_typed: int  # commits that appended a char or space, incl. later-cleared
    clear_count: int
    retries_exhausted: int = 0  # simulated users that gave up on a character


@dataclass(frozen=True)
class Metrics:
    wpm: float
    uncorrected_error_pct: float
    corrections: int
    kspc: float


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert/delete/substitute costs."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def compute_metrics(result: SessionResult, target: str) -> Metrics:
    """Metrics for a session against the phrase it was meant to produce."""
    if result.duration_ms <= 0:
        if result.transcribed:
            raise InvalidSessionError(
                f"nonempty transcript with duration {result.duration_ms} ms"
            )
        wpm = 0.0
    else:
        wpm = (len(result.transcribed) / 5.0) * (60000.0 / result.duration_ms)
    uncorrected = edit_distance(result.transcribed, target)
    error_pct = 100.0 * uncorrected / max(1, result.total_typed)
    total_commits = result.total_typed + result.clear_count
    kspc = total_commits / max(1, len(target))
    return Metrics(
        wpm=wpm,
        uncorrected_error_pct=error_pct,
        corrections=result.clear_count,
        kspc=kspc,
    )

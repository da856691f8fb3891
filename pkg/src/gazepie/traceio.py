"""Trace file format: one JSON record per line.

The first line is a metadata header; every following line is one sample:

    {"type": "meta", "version": 1, "config": {...}, "params": {...}, ...}
    {"t_ms": 0.0, "x": 512.0, "y": 512.0}
    {"t_ms": 16.666666666666668, "x": 511.2, "y": 513.9}

Field names are stable; readers must ignore unknown meta keys.
"""

from __future__ import annotations

import json
from typing import IO, Union

from .engine import GazeSample
from .simulator import GazeTrace

FORMAT_VERSION = 1


class TraceFormatError(ValueError):
    """Raised for malformed trace files; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def write_trace(trace: GazeTrace, fp: IO[str]) -> None:
    header = {"type": "meta", "version": FORMAT_VERSION}
    header.update(trace.meta)
    fp.write(json.dumps(header, sort_keys=True) + "\n")
    for s in trace.samples:
        fp.write(json.dumps({"t_ms": s.t_ms, "x": s.x_px, "y": s.y_px}) + "\n")


def save_trace(trace: GazeTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        write_trace(trace, fp)


def read_trace(fp: IO[str]) -> GazeTrace:
    meta: dict = {}
    samples: list[GazeSample] = []
    last_t = None
    for line_no, raw in enumerate(fp, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(line_no, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(rec, dict):
            raise TraceFormatError(line_no, "record is not an object")
        if rec.get("type") == "meta":
            if line_no != 1:
                raise TraceFormatError(line_no, "meta record only allowed on line 1")
            meta = {k: v for k, v in rec.items() if k not in ("type", "version")}
            continue
        try:
            sample = GazeSample(float(rec["t_ms"]), float(rec["x"]), float(rec["y"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise TraceFormatError(line_no, f"bad sample record: {exc}") from exc
        if last_t is not None and sample.t_ms <= last_t:
            raise TraceFormatError(line_no, f"timestamp {sample.t_ms} does not increase")
        last_t = sample.t_ms
        samples.append(sample)
    return GazeTrace(samples=tuple(samples), meta=meta)


def load_trace(path: Union[str, bytes]) -> GazeTrace:
    with open(path, "r", encoding="utf-8") as fp:
        return read_trace(fp)

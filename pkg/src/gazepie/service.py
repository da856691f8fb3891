"""Session server: one interaction engine per connection.

Wire protocol: newline-delimited JSON messages over a duplex byte stream.
The TCP listener is the canonical transport; an optional WebSocket bridge
(same messages, one per frame) exists because browsers cannot open raw
sockets.  The server owns all interaction logic - clients only render the
state snapshots it sends.

Client -> server message types:
    hello          {"type": "hello", "protocol_version": 1}
    configure      {"type": "configure", "num_slices": 6, ..., "strategy": "border",
                    "target": "optional phrase for live error metrics"}
    gaze           {"type": "gaze", "t_ms": 0.0, "x": 512.0, "y": 512.0}
    reset          {"type": "reset"}
    load_trace     {"type": "load_trace", "samples": [[t_ms, x, y], ...]}
    replay_control {"type": "replay_control", "action": "play"|"pause", "speed": 1.0}

Server -> client message types: layout_info, state, commit, metrics, error.
Every client message is answered by at least one server message.
"""

from __future__ import annotations

import json
import socket
import socketserver
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .config import ConfigError, PieConfig
from .engine import Engine, EventKind, GazeSample, NonMonotonicSampleError
from .geometry import slice_spans
from .layout import AppendChar, AppendSpace, ClearLast, Layout, build_layout
from .metrics import InvalidSessionError, compute_metrics
from .simulator import parse_strategy, strategy_name

PROTOCOL_VERSION = 1


def _action_wire(action) -> dict:
    if isinstance(action, AppendChar):
        return {"kind": "char", "char": action.char}
    if isinstance(action, AppendSpace):
        return {"kind": "space"}
    if isinstance(action, ClearLast):
        return {"kind": "clear"}
    raise TypeError(f"unknown action {action!r}")


def _layout_wire(cfg: PieConfig, layout: Layout) -> dict:
    slices = []
    for (i, start, end), items in zip(slice_spans(cfg), layout.slices):
        slices.append(
            {
                "index": i,
                "start_deg": start,
                "end_deg": end,
                "items": [
                    {
                        "label": it.label,
                        "shade_rank": it.shade_rank,
                        "action": _action_wire(it.action),
                    }
                    for it in items
                ],
            }
        )
    return {
        "type": "layout_info",
        "protocol_version": PROTOCOL_VERSION,
        "config": cfg.to_dict(),
        "base_span_deg": cfg.base_span_deg,
        "focused_span_deg": cfg.focused_span_deg,
        "slices": slices,
    }


class Session:
    """Protocol state machine for one connection.

    ``handle_line`` is synchronous: a JSON line in, JSON messages out.
    Trace replay streams asynchronously through the ``send`` callback the
    transport provides; all engine access is serialized by ``lock``.
    """

    def __init__(self, send: Optional[Callable[[dict], None]] = None):
        self.send = send or (lambda msg: None)
        self.lock = threading.Lock()
        self.cfg = PieConfig()
        self.layout = build_layout(self.cfg.num_slices)
        self.strategy = parse_strategy("border")
        self.engine = Engine(self.cfg, self.layout, self.strategy)
        self.target: Optional[str] = None
        self.greeted = False
        self.closed = False
        self.loaded_trace: list[GazeSample] = []
        self._first_t_ms: Optional[float] = None
        self._replay_thread: Optional[threading.Thread] = None
        self._replay_stop = threading.Event()
        self._replay_paused = threading.Event()
        self._replay_speed = 1.0

    # -- message handling ------------------------------------------------

    def handle_line(self, line: str) -> list[dict]:
        line = line.strip()
        if not line:
            return []
        try:
            msg = json.loads(line)
        except json.JSONDecodeError as exc:
            return [_error("bad_json", f"invalid JSON: {exc.msg}")]
        if not isinstance(msg, dict) or "type" not in msg:
            return [_error("bad_message", "message must be an object with a 'type'")]
        handler = getattr(self, f"_on_{msg['type']}", None)
        if handler is None:
            return [_error("bad_message", f"unknown message type {msg['type']!r}")]
        try:
            with self.lock:
                return handler(msg)
        except (KeyError, TypeError, ValueError) as exc:
            return [_error("bad_message", f"malformed {msg['type']} message: {exc}")]

    def _on_hello(self, msg: dict) -> list[dict]:
        version = msg.get("protocol_version")
        if version != PROTOCOL_VERSION:
            self.closed = True
            return [
                _error(
                    "protocol",
                    f"unsupported protocol_version {version!r}; server speaks {PROTOCOL_VERSION}",
                )
            ]
        self.greeted = True
        return [_layout_wire(self.cfg, self.layout)]

    def _on_configure(self, msg: dict) -> list[dict]:
        fields = {
            k: msg[k]
            for k in (
                "num_slices",
                "pie_radius_px",
                "char_width_px",
                "safe_width_px",
                "selection_width_px",
                "expand_deg",
                "center_x_px",
                "center_y_px",
            )
            if k in msg
        }
        try:
            cfg = PieConfig(**{**self.cfg.to_dict(), **fields})
            layout = build_layout(cfg.num_slices)
            strategy = parse_strategy(msg.get("strategy", strategy_name(self.strategy)))
        except (ConfigError, ValueError) as exc:
            return [_error("bad_config", str(exc))]
        self.cfg, self.layout, self.strategy = cfg, layout, strategy
        self.target = msg.get("target", self.target)
        self.engine = Engine(cfg, layout, strategy)
        self._first_t_ms = None
        return [_layout_wire(cfg, layout), self._state_msg()]

    def _on_gaze(self, msg: dict) -> list[dict]:
        sample = GazeSample(float(msg["t_ms"]), float(msg["x"]), float(msg["y"]))
        return self._feed(sample)

    def _on_reset(self, msg: dict) -> list[dict]:
        self._stop_replay()
        self.engine = Engine(self.cfg, self.layout, self.strategy)
        self._first_t_ms = None
        return [self._state_msg()]

    def _on_load_trace(self, msg: dict) -> list[dict]:
        samples = []
        for i, rec in enumerate(msg["samples"]):
            if isinstance(rec, dict):
                samples.append(GazeSample(float(rec["t_ms"]), float(rec["x"]), float(rec["y"])))
            else:
                t, x, y = rec
                samples.append(GazeSample(float(t), float(x), float(y)))
        self._stop_replay()
        self.loaded_trace = samples
        self.engine = Engine(self.cfg, self.layout, self.strategy)
        self._first_t_ms = None
        return [self._state_msg(extra={"trace_len": len(samples)})]

    def _on_replay_control(self, msg: dict) -> list[dict]:
        action = msg.get("action")
        self._replay_speed = float(msg.get("speed", self._replay_speed))
        if action == "pause":
            self._replay_paused.set()
            return [self._state_msg()]
        if action == "play":
            if not self.loaded_trace:
                return [_error("no_trace", "no trace loaded")]
            self._replay_paused.clear()
            if self._replay_thread is None or not self._replay_thread.is_alive():
                self._replay_stop.clear()
                self._replay_thread = threading.Thread(target=self._replay_loop, daemon=True)
                self._replay_thread.start()
            return [self._state_msg()]
        raise ValueError(f"unknown replay action {action!r}")

    # -- engine plumbing ---------------------------------------------------

    def _feed(self, sample: GazeSample) -> list[dict]:
        try:
            events = self.engine.step(sample)
        except NonMonotonicSampleError as exc:
            return [_error("ts_order", str(exc))]
        if self._first_t_ms is None:
            self._first_t_ms = sample.t_ms
        out = []
        if any(e.kind is not EventKind.NO_CHANGE for e in events):
            out.append(self._state_msg())
        for e in events:
            if e.kind is EventKind.COMMITTED:
                out.append(
                    {
                        "type": "commit",
                        "t_ms": e.t_ms,
                        "label": e.item.label,
                        "action": _action_wire(e.item.action),
                        "buffer": self.engine.state.buffer,
                    }
                )
                out.append(self._metrics_msg())
        if not out:
            out.append(self._state_msg())
        return out

    def _state_msg(self, extra: Optional[dict] = None) -> dict:
        st = self.engine.state
        msg = {
            "type": "state",
            "focused": st.focused,
            "highlighted": st.highlighted,
            "armed": st.armed,
            "buffer": st.buffer,
            "spans": [list(s) for s in slice_spans(self.cfg, st.focused)],
        }
        if extra:
            msg.update(extra)
        return msg

    def _metrics_msg(self) -> dict:
        st = self.engine.state
        duration = 0.0
        if st.last_t_ms is not None and self._first_t_ms is not None:
            duration = st.last_t_ms - self._first_t_ms
        result = self.engine.session_result(duration)
        msg = {
            "type": "metrics",
            "commits": len(st.commit_log),
            "clears": result.clear_count,
            "duration_ms": duration,
            "wpm": (len(st.buffer) / 5.0) * (60000.0 / duration) if duration > 0 else 0.0,
        }
        if self.target is not None:
            try:
                msg["uncorrected_error_pct"] = compute_metrics(
                    result, self.target
                ).uncorrected_error_pct
            except InvalidSessionError:
                pass  # no usable duration yet
        return msg

    # -- replay thread -----------------------------------------------------

    def _replay_loop(self) -> None:
        prev_t = None
        for sample in list(self.loaded_trace):
            if self._replay_stop.is_set():
                return
            while self._replay_paused.is_set():
                if self._replay_stop.is_set():
                    return
                time.sleep(0.01)
            if prev_t is not None:
                speed = max(self._replay_speed, 1e-6)
                time.sleep(max(0.0, (sample.t_ms - prev_t) / 1000.0 / speed))
            prev_t = sample.t_ms
            # acquire with timeout so a stopper holding the lock can join us
            while not self.lock.acquire(timeout=0.05):
                if self._replay_stop.is_set():
                    return
            try:
                msgs = self._feed(sample)
            finally:
                self.lock.release()
            for msg in msgs:
                self.send(msg)
        self.send({"type": "state", "replay_done": True, **{
            k: v for k, v in self._state_msg().items() if k != "type"}})

    def _stop_replay(self) -> None:
        self._replay_stop.set()
        self._replay_paused.clear()
        if self._replay_thread is not None and self._replay_thread.is_alive():
            self._replay_thread.join(timeout=1.0)
        self._replay_thread = None
        self._replay_stop = threading.Event()


def _error(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}


def encode(msg: dict) -> bytes:
    return (json.dumps(msg, sort_keys=True) + "\n").encode("utf-8")


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        write_lock = threading.Lock()

        def send(msg: dict) -> None:
            with write_lock:
                try:
                    self.wfile.write(encode(msg))
                    self.wfile.flush()
                except (BrokenPipeError, ConnectionResetError, OSError):
                    pass

        session = Session(send=send)
        try:
            for raw in self.rfile:
                for msg in session.handle_line(raw.decode("utf-8", errors="replace")):
                    send(msg)
                if session.closed:
                    break
        finally:
            session._stop_replay()


class SessionServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


def serve_tcp(host: str = "127.0.0.1", port: int = 8200) -> SessionServer:
    """Start the TCP listener in a background thread; returns the server."""
    server = SessionServer((host, port), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server


async def _session_ws_endpoint(ws):
    """One protocol session per WebSocket; each text frame is one message."""
    import asyncio

    from starlette.websockets import WebSocketDisconnect

    await ws.accept()
    loop = asyncio.get_event_loop()
    outbox: "asyncio.Queue[dict]" = asyncio.Queue()

    def send(msg: dict) -> None:
        loop.call_soon_threadsafe(outbox.put_nowait, msg)

    session = Session(send=send)

    async def pump():
        while True:
            msg = await outbox.get()
            await ws.send_text(json.dumps(msg, sort_keys=True))

    pump_task = asyncio.create_task(pump())
    try:
        while not session.closed:
            line = await ws.receive_text()
            for msg in session.handle_line(line):
                await ws.send_text(json.dumps(msg, sort_keys=True))
    except WebSocketDisconnect:
        pass
    finally:
        pump_task.cancel()
        session._stop_replay()
        if session.closed:
            try:
                await ws.close()
            except RuntimeError:
                pass  # client already gone


def make_ws_app(static_dir: Optional[str] = None):
    """FastAPI app bridging WebSocket clients onto the same protocol.

    Requires the 'ws' extra (fastapi + uvicorn).  The session route is a
    plain Starlette WebSocketRoute so it needs no annotation machinery.
    """
    from fastapi import FastAPI
    from starlette.routing import WebSocketRoute

    app = FastAPI(title="gazepie session service")
    app.router.routes.append(WebSocketRoute("/session", _session_ws_endpoint))

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def serve(
    host: str = "127.0.0.1",
    port: int = 8200,
    ws_port: Optional[int] = None,
    static_dir: Optional[str] = None,
) -> None:
    """Run the service in the foreground until interrupted."""
    server = SessionServer((host, port), _Handler)
    print(f"gazepie service listening on tcp://{host}:{port}", flush=True)
    if ws_port is not None:
        import uvicorn

        app = make_ws_app(static_dir=static_dir)
        tcp_thread = threading.Thread(target=server.serve_forever, daemon=True)
        tcp_thread.start()
        print(f"gazepie websocket bridge on ws://{host}:{ws_port}/session", flush=True)
        uvicorn.run(app, host=host, port=ws_port, log_level="warning")
    else:
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.shutdown()

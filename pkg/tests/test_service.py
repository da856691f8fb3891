"""Tests for the newline-delimited session service over TCP."""

import json
import socket

import pytest

from gazepie import PieConfig, build_layout
from gazepie.geometry import cell_center, cell_theta, polar_to_screen
from gazepie.service import PROTOCOL_VERSION, Session, serve_tcp


@pytest.fixture(scope="module")
def server():
    srv = serve_tcp(port=0)
    yield srv
    srv.shutdown()


class Client:
    def __init__(self, server):
        host, port = server.server_address
        self.sock = socket.create_connection((host, port), timeout=5.0)
        self.fp = self.sock.makefile("rw", encoding="utf-8")

    def send(self, msg):
        self.fp.write(json.dumps(msg) + "\n")
        self.fp.flush()

    def recv(self, n=1):
        out = [json.loads(self.fp.readline()) for _ in range(n)]
        return out[0] if n == 1 else out

    def recv_raw(self, n=1):
        return [self.fp.readline() for _ in range(n)]

    def close(self):
        self.sock.close()


def three_step_messages(cfg, layout):
    pts = [
        polar_to_screen(cfg, 0.6 * cfg.pie_radius_px, 90.0),
        cell_center(cfg, layout, 1, 1),
        polar_to_screen(
            cfg,
            cfg.pie_radius_px + cfg.char_width_px + cfg.safe_width_px
            + cfg.selection_width_px / 2.0,
            cell_theta(cfg, layout, 1, 1),
        ),
    ]
    return [
        {"type": "gaze", "t_ms": 100.0 * (k + 1), "x": x, "y": y}
        for k, (x, y) in enumerate(pts)
    ]


def test_hello_returns_layout_info(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
    msg = c.recv()
    assert msg["type"] == "layout_info"
    assert msg["config"]["num_slices"] == 6
    assert len(msg["slices"]) == 6
    c.close()


def test_protocol_mismatch_errors_and_closes(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": 99})
    msg = c.recv()
    assert msg["type"] == "error"
    assert msg["code"] == "protocol"
    assert c.fp.readline() == ""  # server closed the connection
    c.close()


def test_three_step_path_commits_g(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
    c.recv()
    c.send({"type": "configure", "num_slices": 6, "char_width_px": 120.0})
    c.recv(2)  # layout_info + state
    cfg = PieConfig(num_slices=6, char_width_px=120.0)
    layout = build_layout(6)
    msgs = three_step_messages(cfg, layout)
    c.send(msgs[0])
    assert c.recv()["type"] == "state"  # focus
    c.send(msgs[1])
    assert c.recv()["focused"] == 1  # highlight state
    c.send(msgs[2])
    state, commit, metrics = c.recv(3)
    assert state["buffer"] == "g"
    assert commit["type"] == "commit"
    assert commit["label"] == "G"
    assert metrics["type"] == "metrics"
    c.close()


def test_backwards_timestamp_is_error_but_session_continues(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
    c.recv()
    c.send({"type": "gaze", "t_ms": 100.0, "x": 500.0, "y": 500.0})
    c.recv()
    c.send({"type": "gaze", "t_ms": 50.0, "x": 500.0, "y": 500.0})
    msg = c.recv()
    assert msg["type"] == "error"
    assert msg["code"] == "ts_order"
    c.send({"type": "gaze", "t_ms": 150.0, "x": 500.0, "y": 500.0})
    assert c.recv()["type"] == "state"
    c.close()


def test_malformed_line_is_error_not_fatal(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
    c.recv()
    c.fp.write("this is not json\n")
    c.fp.flush()
    assert c.recv()["code"] == "bad_json"
    c.send({"type": "reset"})
    assert c.recv()["type"] == "state"
    c.close()


def test_unknown_message_type(server):
    c = Client(server)
    c.send({"type": "warp", "x": 1})
    assert c.recv()["code"] == "bad_message"
    c.close()


def test_bad_config_reported(server):
    c = Client(server)
    c.send({"type": "configure", "num_slices": 1})
    assert c.recv()["code"] == "bad_config"
    c.close()


def test_sessions_are_isolated(server):
    a, b = Client(server), Client(server)
    for c in (a, b):
        c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
        c.recv()
    cfg = PieConfig()
    layout = build_layout(6)
    # a types g; b only focuses
    for msg in three_step_messages(cfg, layout):
        a.send(msg)
    a_msgs = a.recv(5)  # state, state, state+commit+metrics
    b.send({"type": "gaze", "t_ms": 10.0, "x": cfg.center_x_px, "y": cfg.center_y_px})
    b_state = b.recv()
    assert a_msgs[-3]["buffer"] == "g"
    assert b_state["buffer"] == ""
    a.close()
    b.close()


def test_message_log_replay_is_byte_identical(server):
    cfg = PieConfig()
    layout = build_layout(6)
    script = [
        {"type": "hello", "protocol_version": PROTOCOL_VERSION},
        {"type": "configure", "num_slices": 6, "char_width_px": 120.0},
        *three_step_messages(PieConfig(num_slices=6, char_width_px=120.0), layout),
        {"type": "reset"},
    ]
    expected = 1 + 2 + 1 + 1 + 3 + 1

    def run():
        c = Client(server)
        for msg in script:
            c.send(msg)
        raw = c.recv_raw(expected)
        c.close()
        return raw

    assert run() == run()


def test_load_trace_and_replay_stream(server):
    c = Client(server)
    c.send({"type": "hello", "protocol_version": PROTOCOL_VERSION})
    c.recv()
    cfg = PieConfig()
    layout = build_layout(6)
    samples = [
        [m["t_ms"], m["x"], m["y"]] for m in three_step_messages(cfg, layout)
    ]
    c.send({"type": "load_trace", "samples": samples})
    st = c.recv()
    assert st["trace_len"] == 3
    c.send({"type": "replay_control", "action": "play", "speed": 50.0})
    msgs = c.recv(1 + 5 + 1)  # control ack, 3 samples' messages, final marker
    types = [m["type"] for m in msgs]
    assert types.count("commit") == 1
    assert any(m.get("replay_done") for m in msgs if m["type"] == "state")
    c.close()


def test_session_unit_handles_lines_without_transport():
    s = Session()
    out = s.handle_line(json.dumps({"type": "hello", "protocol_version": PROTOCOL_VERSION}))
    assert out[0]["type"] == "layout_info"
    out = s.handle_line("garbage")
    assert out[0]["code"] == "bad_json"
    out = s.handle_line(json.dumps({"type": "gaze", "t_ms": 1.0, "x": 512.0, "y": 512.0}))
    assert out[0]["type"] == "state"

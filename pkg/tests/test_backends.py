"""The compiled and pure-Python kernels must agree bit for bit."""

import random
import warnings

import pytest

from gazepie import ConfigWarning, PieConfig
from gazepie.geometry import active_backend, available_backends, use_backend
from gazepie import _kernel_py


def _kernel_args(cfg, focused, n_items, x, y):
    return (
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
        focused,
        n_items,
    )


def test_a_backend_is_active():
    assert active_backend() in available_backends()


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        use_backend("turbo")


@pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled kernel not built"
)
def test_compiled_matches_pure_bitwise():
    compiled = available_backends()["compiled"]
    rng = random.Random(7)
    warnings.simplefilter("ignore", ConfigWarning)
    for _ in range(20000):
        n = rng.randint(2, 14)
        cfg = PieConfig(
            num_slices=n,
            pie_radius_px=rng.uniform(50, 400),
            char_width_px=rng.uniform(10, 200),
            safe_width_px=rng.uniform(0, 60),
            selection_width_px=rng.uniform(10, 200),
            expand_deg=rng.uniform(0, (360 / n / 2 if n == 2 else 360 / n) * 0.9),
            center_x_px=rng.uniform(-100, 1000),
            center_y_px=rng.uniform(-100, 1000),
        )
        focused = rng.choice([-1] + list(range(n)))
        n_items = rng.randint(1, 8)
        x = rng.uniform(-1500, 2500)
        y = rng.uniform(-1500, 2500)
        args = _kernel_args(cfg, focused, n_items, x, y)
        assert compiled(*args) == _kernel_py.classify(*args)


@pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled kernel not built"
)
def test_switching_backends_preserves_results(cfg, layout6):
    from gazepie.geometry import hit_test

    points = [(300.0 + 7 * k, 280.0 + 3 * k) for k in range(50)]
    before = active_backend()
    try:
        use_backend("pure")
        pure_hits = [hit_test(cfg, layout6, 1, x, y) for x, y in points]
        use_backend("compiled")
        compiled_hits = [hit_test(cfg, layout6, 1, x, y) for x, y in points]
    finally:
        use_backend(before)
    assert pure_hits == compiled_hits

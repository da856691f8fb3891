"""Benchmark: compiled vs pure-Python region-classification kernel.

Two workloads: raw per-point classification (the kernel alone) and a full
engine replay of a synthesized trace (kernel + state machine).  Run:

    python benchmarks/bench_kernel.py [--points 200000] [--phrase-reps 40]
"""

import argparse
import time

from gazepie import PieConfig, SimParams, build_layout, replay, synthesize
from gazepie.geometry import available_backends, use_backend, active_backend


def bench_classify(backend_fn, cfg, points):
    args_tail = (
        cfg.center_x_px,
        cfg.center_y_px,
        cfg.pie_radius_px,
        cfg.char_width_px,
        cfg.safe_width_px,
        cfg.selection_width_px,
        cfg.num_slices,
        cfg.expand_deg,
        1,
        5,
    )
    start = time.perf_counter()
    for x, y in points:
        backend_fn(x, y, *args_tail)
    return time.perf_counter() - start


def bench_replay(backend_name, trace, cfg, layout, reps):
    use_backend(backend_name)
    start = time.perf_counter()
    for _ in range(reps):
        replay(trace, cfg, layout)
    return time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--phrase-reps", type=int, default=40)
    args = ap.parse_args()

    backends = available_backends()
    default = active_backend()
    print(f"available backends: {sorted(backends)} (default: {default})")

    cfg = PieConfig()
    layout = build_layout(6)

    import random

    rng = random.Random(0)
    lim = cfg.outer_radius_px * 1.2
    points = [
        (cfg.center_x_px + rng.uniform(-lim, lim), cfg.center_y_px + rng.uniform(-lim, lim))
        for _ in range(args.points)
    ]

    params = SimParams(seed=0, jitter_sigma_px=10.0)
    trace = synthesize("the quick brown fox jumps over the lazy dog", cfg, layout, params)
    print(f"replay trace: {len(trace.samples)} samples x {args.phrase_reps} reps")

    results = {}
    for name in sorted(backends):
        t_cls = bench_classify(backends[name], cfg, points)
        t_rep = bench_replay(name, trace, cfg, layout, args.phrase_reps)
        results[name] = (t_cls, t_rep)
        print(
            f"{name:>9}: classify {args.points / t_cls / 1e6:6.2f} Mpts/s "
            f"({t_cls:.3f}s)   replay {args.phrase_reps * len(trace.samples) / t_rep / 1e3:7.1f} ksteps/s "
            f"({t_rep:.3f}s)"
        )

    if {"pure", "compiled"} <= results.keys():
        cls_speedup = results["pure"][0] / results["compiled"][0]
        rep_speedup = results["pure"][1] / results["compiled"][1]
        print(f"speedup (compiled over pure): classify x{cls_speedup:.1f}, replay x{rep_speedup:.1f}")

    use_backend(default)


if __name__ == "__main__":
    main()

// Pointer-as-gaze sampling: the mouse stands in for an eye tracker.
// Samples go out at a fixed cadence with strictly increasing timestamps;
// an optional jitter sigma adds the noise character real trackers have,
// which makes the safe ring's debouncing humanly perceivable.

import type { GazeMsg } from './protocol.js';

export interface PointerSamplerOptions {
  rateHz?: number;
  jitterSigmaPx?: number;
  now?: () => number; // injectable clock for tests
  random?: () => number; // injectable uniform source for tests
}

export class PointerSampler {
  readonly intervalMs: number;
  jitterSigmaPx: number;

  private readonly now: () => number;
  private readonly random: () => number;
  private x = 0;
  private y = 0;
  private hasPosition = false;
  private lastT = -Infinity;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly emit: (msg: GazeMsg) => void,
    opts: PointerSamplerOptions = {},
  ) {
    this.intervalMs = 1000 / (opts.rateHz ?? 60);
    this.jitterSigmaPx = opts.jitterSigmaPx ?? 0;
    this.now = opts.now ?? (() => performance.now());
    this.random = opts.random ?? Math.random;
  }

  moveTo(x: number, y: number): void {
    this.x = x;
    this.y = y;
    this.hasPosition = true;
  }

  /** One sample now (used by the timer; callable directly in tests). */
  tick(): GazeMsg | null {
    if (!this.hasPosition) return null;
    let t = this.now();
    if (t <= this.lastT) {
      t = this.lastT + 0.001; // clock ties or regressions never reach the wire
    }
    this.lastT = t;
    const [jx, jy] = this.jitter();
    const msg: GazeMsg = { type: 'gaze', t_ms: t, x: this.x + jx, y: this.y + jy };
    this.emit(msg);
    return msg;
  }

  private jitter(): [number, number] {
    if (this.jitterSigmaPx <= 0) return [0, 0];
    // Box-Muller from the injected uniform source
    const u1 = Math.max(this.random(), 1e-12);
    const u2 = this.random();
    const mag = Math.sqrt(-2 * Math.log(u1)) * this.jitterSigmaPx;
    return [mag * Math.cos(2 * Math.PI * u2), mag * Math.sin(2 * Math.PI * u2)];
  }

  start(): void {
    if (this.timer === null) {
      this.timer = setInterval(() => this.tick(), this.intervalMs);
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

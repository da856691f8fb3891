// Trace-file replay: parse the shared JSON-lines format, push the
// samples to the server with load_trace, then drive playback with
// replay_control. The server streams state/commit messages back; the
// client only animates what it is told.

export interface TraceSample {
  tMs: number;
  x: number;
  y: number;
}

export interface ParsedTrace {
  meta: Record<string, unknown>;
  samples: TraceSample[];
}

export class TraceParseError extends Error {
  constructor(
    readonly lineNo: number,
    detail: string,
  ) {
    super(`line ${lineNo}: ${detail}`);
  }
}

export function parseTrace(text: string): ParsedTrace {
  const meta: Record<string, unknown> = {};
  const samples: TraceSample[] = [];
  let lastT = -Infinity;
  const lines = text.split('\n');
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) continue;
    const lineNo = i + 1;
    let rec: Record<string, unknown>;
    try {
      rec = JSON.parse(line) as Record<string, unknown>;
    } catch {
      throw new TraceParseError(lineNo, 'invalid JSON');
    }
    if (rec['type'] === 'meta') {
      if (lineNo !== 1) throw new TraceParseError(lineNo, 'meta record only allowed on line 1');
      Object.assign(meta, rec);
      continue;
    }
    const tMs = rec['t_ms'];
    const x = rec['x'];
    const y = rec['y'];
    if (typeof tMs !== 'number' || typeof x !== 'number' || typeof y !== 'number') {
      throw new TraceParseError(lineNo, 'sample needs numeric t_ms, x, y');
    }
    if (tMs <= lastT) {
      throw new TraceParseError(lineNo, `timestamp ${tMs} does not increase`);
    }
    lastT = tMs;
    samples.push({ tMs, x, y });
  }
  return { meta, samples };
}

export function toLoadTraceSamples(trace: ParsedTrace): [number, number, number][] {
  return trace.samples.map((s) => [s.tMs, s.x, s.y]);
}

/**
 * Client-side playback cursor for the path polyline. The server streams
 * the samples through the engine and owns every commit; this only tracks
 * which trace points the playback clock has passed so they can be drawn.
 */
export class ReplayTrail {
  private samples: TraceSample[] = [];
  private nextIndex = 0;
  private playing = false;
  private speed = 1;
  private traceClockMs = 0; // how far into the trace playback has advanced
  private lastWallMs = 0;

  load(samples: TraceSample[]): void {
    this.samples = samples;
    this.reset();
  }

  reset(): void {
    this.nextIndex = 0;
    this.playing = false;
    this.traceClockMs = this.samples.length ? this.samples[0].tMs : 0;
  }

  play(speed: number, wallMs: number): void {
    if (this.nextIndex >= this.samples.length) {
      this.reset(); // replaying from the end starts over
    }
    this.speed = speed;
    this.playing = true;
    this.lastWallMs = wallMs;
  }

  pause(wallMs: number): void {
    this.advance(wallMs);
    this.playing = false;
  }

  get done(): boolean {
    return this.nextIndex >= this.samples.length;
  }

  /** Trace points passed since the last call, advanced to `wallMs`. */
  advance(wallMs: number): TraceSample[] {
    if (!this.playing) return [];
    this.traceClockMs += (wallMs - this.lastWallMs) * this.speed;
    this.lastWallMs = wallMs;
    const passed: TraceSample[] = [];
    while (
      this.nextIndex < this.samples.length &&
      this.samples[this.nextIndex].tMs <= this.traceClockMs
    ) {
      passed.push(this.samples[this.nextIndex]);
      this.nextIndex++;
    }
    if (this.done) {
      this.playing = false;
    }
    return passed;
  }
}

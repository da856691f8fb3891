// Wire protocol for the gazepie session service: one JSON message per
// line (TCP) or per frame (WebSocket). These types mirror the server's
// message schema field for field; the client never interprets gaze
// geometry itself.

export const PROTOCOL_VERSION = 1;

// ── client → server ──────────────────────────────────────────────────

export interface HelloMsg {
  type: 'hello';
  protocol_version: number;
}

export interface ConfigureMsg {
  type: 'configure';
  num_slices?: number;
  pie_radius_px?: number;
  char_width_px?: number;
  safe_width_px?: number;
  selection_width_px?: number;
  expand_deg?: number;
  center_x_px?: number;
  center_y_px?: number;
  strategy?: string;
  target?: string;
}

export interface GazeMsg {
  type: 'gaze';
  t_ms: number;
  x: number;
  y: number;
}

export interface ResetMsg {
  type: 'reset';
}

export interface LoadTraceMsg {
  type: 'load_trace';
  samples: [number, number, number][];
}

export interface ReplayControlMsg {
  type: 'replay_control';
  action: 'play' | 'pause';
  speed?: number;
}

export type ClientMsg =
  | HelloMsg
  | ConfigureMsg
  | GazeMsg
  | ResetMsg
  | LoadTraceMsg
  | ReplayControlMsg;

// ── server → client ──────────────────────────────────────────────────

export interface WireAction {
  kind: 'char' | 'space' | 'clear';
  char?: string;
}

export interface WireItem {
  label: string;
  shade_rank: number;
  action: WireAction;
}

export interface WireSlice {
  index: number;
  start_deg: number;
  end_deg: number;
  items: WireItem[];
}

export interface LayoutInfoMsg {
  type: 'layout_info';
  protocol_version: number;
  config: {
    num_slices: number;
    pie_radius_px: number;
    char_width_px: number;
    safe_width_px: number;
    selection_width_px: number;
    expand_deg: number;
    center_x_px: number;
    center_y_px: number;
  };
  base_span_deg: number;
  focused_span_deg: number;
  slices: WireSlice[];
}

export interface StateMsg {
  type: 'state';
  focused: number | null;
  highlighted: number | null;
  armed: boolean;
  buffer: string;
  spans: [number, number, number][];
  trace_len?: number;
  replay_done?: boolean;
}

export interface CommitMsg {
  type: 'commit';
  t_ms: number;
  label: string;
  action: WireAction;
  buffer: string;
}

export interface MetricsMsg {
  type: 'metrics';
  wpm: number;
  commits: number;
  clears: number;
  duration_ms: number;
  uncorrected_error_pct?: number;
}

export interface ErrorMsg {
  type: 'error';
  code: string;
  message: string;
}

export type ServerMsg = LayoutInfoMsg | StateMsg | CommitMsg | MetricsMsg | ErrorMsg;

export function encodeMsg(msg: ClientMsg): string {
  return JSON.stringify(msg) + '\n';
}

export function decodeMsg(line: string): ServerMsg {
  const parsed = JSON.parse(line) as { type?: string };
  if (!parsed || typeof parsed.type !== 'string') {
    throw new Error(`not a protocol message: ${line}`);
  }
  return parsed as ServerMsg;
}

/** Reassembles newline-delimited messages from arbitrary stream chunks. */
export class LineSplitter {
  private tail = '';

  push(chunk: string): string[] {
    this.tail += chunk;
    const parts = this.tail.split('\n');
    this.tail = parts.pop() ?? '';
    return parts.filter((p) => p.trim().length > 0);
  }
}

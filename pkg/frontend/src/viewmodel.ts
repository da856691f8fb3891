// Client-side view state: a fold over server messages, nothing more.
// All interaction logic (focus, arming, commits) lives on the server;
// the reducer only snapshots what it is told, latest message wins.

import type {
  CommitMsg,
  LayoutInfoMsg,
  MetricsMsg,
  ServerMsg,
  StateMsg,
} from './protocol.js';

export interface CommitToast {
  label: string;
  atMs: number; // client clock, for fade-out and the green flash
}

export interface TracePoint {
  x: number;
  y: number;
  tMs: number;
}

export interface ViewModel {
  layout: LayoutInfoMsg | null;
  state: StateMsg | null;
  metrics: MetricsMsg | null;
  commits: CommitMsg[]; // full log, for tests and the session panel
  toasts: CommitToast[];
  lastError: string | null;
  connected: boolean;
  mode: 'live' | 'replay';
  replaySpeed: number;
  replayDone: boolean;
  cursorTrail: TracePoint[]; // fading polyline of recent gaze
}

export const TOAST_TTL_MS = 1200;
export const TRAIL_TTL_MS = 2500;
export const TRAIL_MAX_POINTS = 600;

export function initialViewModel(): ViewModel {
  return {
    layout: null,
    state: null,
    metrics: null,
    commits: [],
    toasts: [],
    lastError: null,
    connected: false,
    mode: 'live',
    replaySpeed: 1,
    replayDone: false,
    cursorTrail: [],
  };
}

/** Fold one server message into the view model (mutating). */
export function applyMessage(vm: ViewModel, msg: ServerMsg, nowMs: number): ViewModel {
  switch (msg.type) {
    case 'layout_info':
      vm.layout = msg;
      vm.state = null;
      vm.commits = [];
      vm.toasts = [];
      vm.replayDone = false;
      break;
    case 'state':
      vm.state = msg;
      if (msg.replay_done) {
        vm.replayDone = true;
      }
      break;
    case 'commit':
      vm.commits.push(msg);
      vm.toasts.push({ label: msg.label, atMs: nowMs });
      break;
    case 'metrics':
      vm.metrics = msg;
      break;
    case 'error':
      vm.lastError = `${msg.code}: ${msg.message}`;
      break;
  }
  return vm;
}

export function pruneTransients(vm: ViewModel, nowMs: number): void {
  vm.toasts = vm.toasts.filter((t) => nowMs - t.atMs < TOAST_TTL_MS);
  vm.cursorTrail = vm.cursorTrail.filter((p) => nowMs - p.tMs < TRAIL_TTL_MS);
}

export function pushTrailPoint(vm: ViewModel, x: number, y: number, nowMs: number): void {
  vm.cursorTrail.push({ x, y, tMs: nowMs });
  if (vm.cursorTrail.length > TRAIL_MAX_POINTS) {
    vm.cursorTrail.splice(0, vm.cursorTrail.length - TRAIL_MAX_POINTS);
  }
}

/** True while a commit flash should tint the selection ring green. */
export function commitFlashActive(vm: ViewModel, nowMs: number, ttlMs = 350): boolean {
  const last = vm.toasts[vm.toasts.length - 1];
  return last !== undefined && nowMs - last.atMs < ttlMs;
}

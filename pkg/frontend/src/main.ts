// DOM wiring: canvas, control panel, pointer capture, trace upload.

import { SessionClient } from './client.js';
import { PointerSampler } from './pointer.js';
import type { GazeMsg, ServerMsg } from './protocol.js';
import { render } from './renderer.js';
import { parseTrace, ReplayTrail, toLoadTraceSamples } from './replay.js';
import {
  applyMessage,
  initialViewModel,
  pruneTransients,
  pushTrailPoint,
} from './viewmodel.js';

const canvas = document.getElementById('pie') as HTMLCanvasElement;
const ctx = canvas.getContext('2d')!;
const bufferEl = document.getElementById('buffer')!;
const metricsEl = document.getElementById('metrics')!;
const bannerEl = document.getElementById('banner')!;
const jitterEl = document.getElementById('jitter') as HTMLInputElement;
const jitterValEl = document.getElementById('jitter-value')!;
const slicesEl = document.getElementById('slices') as HTMLSelectElement;
const widthEl = document.getElementById('char-width') as HTMLSelectElement;
const strategyEl = document.getElementById('strategy') as HTMLSelectElement;
const traceFileEl = document.getElementById('trace-file') as HTMLInputElement;
const playEl = document.getElementById('play') as HTMLButtonElement;
const pauseEl = document.getElementById('pause') as HTMLButtonElement;
const speedEl = document.getElementById('speed') as HTMLSelectElement;
const resetEl = document.getElementById('reset') as HTMLButtonElement;
const renderToggleEl = document.getElementById('render-toggle') as HTMLInputElement;

const vm = initialViewModel();

const wsUrl = `ws://${location.hostname}:${Number(location.port) || 8201}/session`;
const client = new SessionClient({
  url: wsUrl,
  onMessage: (msg: ServerMsg) => {
    applyMessage(vm, msg, performance.now());
    if (msg.type === 'error') {
      showBanner(vm.lastError ?? 'error');
    }
  },
  onOpen: () => {
    vm.connected = true;
    hideBanner();
    configure();
  },
  onClose: () => {
    vm.connected = false;
    showBanner('connection lost - reload to retry');
    sampler.stop();
  },
});

const sampler = new PointerSampler((msg: GazeMsg) => client.send(msg), {
  rateHz: 60,
  jitterSigmaPx: Number(jitterEl.value),
});
const trail = new ReplayTrail();

function configure(): void {
  client.send({
    type: 'configure',
    num_slices: Number(slicesEl.value),
    char_width_px: Number(widthEl.value),
    strategy: strategyEl.value,
    center_x_px: canvas.width / 2,
    center_y_px: canvas.height / 2,
  });
}

function showBanner(text: string): void {
  bannerEl.textContent = text;
  bannerEl.classList.remove('hidden');
}

function hideBanner(): void {
  bannerEl.classList.add('hidden');
}

canvas.addEventListener('pointermove', (ev) => {
  const rect = canvas.getBoundingClientRect();
  const x = ((ev.clientX - rect.left) / rect.width) * canvas.width;
  const y = ((ev.clientY - rect.top) / rect.height) * canvas.height;
  sampler.moveTo(x, y);
  if (vm.mode === 'live') {
    pushTrailPoint(vm, x, y, performance.now());
  }
});
canvas.addEventListener('pointerenter', () => {
  if (vm.mode === 'live') sampler.start();
});
canvas.addEventListener('pointerleave', () => sampler.stop());

jitterEl.addEventListener('input', () => {
  sampler.jitterSigmaPx = Number(jitterEl.value);
  jitterValEl.textContent = `${jitterEl.value} px`;
});
for (const el of [slicesEl, widthEl, strategyEl]) {
  el.addEventListener('change', configure);
}
resetEl.addEventListener('click', () => client.send({ type: 'reset' }));

traceFileEl.addEventListener('change', async () => {
  const file = traceFileEl.files?.[0];
  if (!file) return;
  try {
    const trace = parseTrace(await file.text());
    vm.mode = 'replay';
    sampler.stop();
    vm.cursorTrail = [];
    trail.load(trace.samples);
    client.send({ type: 'load_trace', samples: toLoadTraceSamples(trace) });
    showBanner(`trace loaded: ${trace.samples.length} samples - press play`);
  } catch (err) {
    showBanner(String(err));
  }
});
playEl.addEventListener('click', () => {
  client.send({ type: 'replay_control', action: 'play', speed: Number(speedEl.value) });
  trail.play(Number(speedEl.value), performance.now());
  hideBanner();
});
pauseEl.addEventListener('click', () => {
  client.send({ type: 'replay_control', action: 'pause' });
  trail.pause(performance.now());
});

function frame(): void {
  const now = performance.now();
  if (vm.mode === 'replay') {
    for (const p of trail.advance(now)) {
      pushTrailPoint(vm, p.x, p.y, now);
    }
  }
  pruneTransients(vm, now);
  if (renderToggleEl.checked) {
    render(vm, ctx, canvas.width, canvas.height, now);
  } else {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
  }
  bufferEl.textContent = vm.state?.buffer ?? '';
  if (vm.metrics) {
    const m = vm.metrics;
    const err =
      m.uncorrected_error_pct === undefined ? '' : ` | err ${m.uncorrected_error_pct.toFixed(1)}%`;
    metricsEl.textContent =
      `wpm ${m.wpm.toFixed(2)} | commits ${m.commits} | clears ${m.clears}${err}`;
  }
  requestAnimationFrame(frame);
}

client.connect();
requestAnimationFrame(frame);

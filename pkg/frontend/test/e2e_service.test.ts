// End-to-end against the real session service: spawn `python -m gazepie
// serve`, speak the newline-delimited protocol over TCP, and check that a
// scripted pointer path through the three entry steps types 'g' exactly
// once - with byte-identical server output across reruns, rendered or not.

import { type ChildProcess, spawn } from 'node:child_process';
import net from 'node:net';
import path from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { LineSplitter, PROTOCOL_VERSION, decodeMsg } from '../src/protocol.js';
import type { ClientMsg, ServerMsg } from '../src/protocol.js';
import { polarPoint } from '../src/scene.js';
import { render } from '../src/renderer.js';
import { applyMessage, initialViewModel } from '../src/viewmodel.js';
import { RecordingContext } from './recording_context.js';

const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), '..', '..');
const PORT = 18000 + (process.pid % 10000);

let server: ChildProcess;

beforeAll(async () => {
  server = spawn('python3', ['-m', 'gazepie', 'serve', '--port', String(PORT)], {
    cwd: REPO_ROOT,
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  await new Promise<void>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error('service did not start')), 15000);
    server.stdout!.on('data', (chunk: Buffer) => {
      if (chunk.toString().includes('listening')) {
        clearTimeout(timer);
        resolve();
      }
    });
    server.on('exit', (code) => reject(new Error(`service exited early: ${code}`)));
  });
}, 20000);

afterAll(() => {
  server?.kill();
});

interface Exchange {
  raw: string[];
  messages: ServerMsg[];
}

/** Send a script of messages, collect exactly `expect` reply lines. */
function runScript(script: ClientMsg[], expectLines: number): Promise<Exchange> {
  return new Promise((resolve, reject) => {
    const sock = net.createConnection({ host: '127.0.0.1', port: PORT });
    const splitter = new LineSplitter();
    const raw: string[] = [];
    const timer = setTimeout(() => {
      sock.destroy();
      reject(new Error(`timed out with ${raw.length}/${expectLines} lines`));
    }, 10000);
    sock.on('connect', () => {
      for (const msg of script) {
        sock.write(JSON.stringify(msg) + '\n');
      }
    });
    sock.on('data', (chunk: Buffer) => {
      for (const line of splitter.push(chunk.toString('utf-8'))) {
        raw.push(line);
        if (raw.length === expectLines) {
          clearTimeout(timer);
          sock.end();
          resolve({ raw, messages: raw.map(decodeMsg) });
        }
      }
    });
    sock.on('error', reject);
  });
}

// the three entry steps for 'G' on the default 6-slice layout,
// char ring width 120: slice interior, G cell center, selection ring
function threeStepScript(): ClientMsg[] {
  const cx = 512;
  const cy = 512;
  const gTheta = 70; // focused slice 1 spans [40, 140); item 1 cell center
  const p1 = polarPoint(cx, cy, 144, 90);
  const p2 = polarPoint(cx, cy, 240 + 60, gTheta);
  const p3 = polarPoint(cx, cy, 240 + 120 + 20 + 60, gTheta);
  return [
    { type: 'hello', protocol_version: PROTOCOL_VERSION },
    { type: 'configure', num_slices: 6, char_width_px: 120 },
    { type: 'gaze', t_ms: 100, x: p1.x, y: p1.y },
    { type: 'gaze', t_ms: 200, x: p2.x, y: p2.y },
    { type: 'gaze', t_ms: 300, x: p3.x, y: p3.y },
  ];
}

// hello(1) + configure(2) + focus state(1) + highlight state(1) +
// commit burst: state + commit + metrics (3)
const THREE_STEP_REPLY_LINES = 8;

describe('live service', () => {
  it('types g exactly once for the three-step pointer path', async () => {
    const { messages } = await runScript(threeStepScript(), THREE_STEP_REPLY_LINES);
    const commits = messages.filter((m) => m.type === 'commit');
    expect(commits.length).toBe(1);
    expect(commits[0].type === 'commit' && commits[0].label).toBe('G');
    const lastState = [...messages].reverse().find((m) => m.type === 'state');
    expect(lastState && lastState.type === 'state' && lastState.buffer).toBe('g');
  });

  it('replaying the same message log is byte-identical', async () => {
    const a = await runScript(threeStepScript(), THREE_STEP_REPLY_LINES);
    const b = await runScript(threeStepScript(), THREE_STEP_REPLY_LINES);
    expect(a.raw).toEqual(b.raw);
  });

  it('rendering the stream does not change what the server commits', async () => {
    const rendered = await runScript(threeStepScript(), THREE_STEP_REPLY_LINES);
    const vm = initialViewModel();
    const ctx = new RecordingContext();
    rendered.messages.forEach((m, i) => {
      applyMessage(vm, m, i);
      render(vm, ctx, 1024, 1024, i); // full client render path runs
    });
    expect(ctx.calls.length).toBeGreaterThan(0);

    const headless = await runScript(threeStepScript(), THREE_STEP_REPLY_LINES);
    expect(headless.raw).toEqual(rendered.raw); // server output identical
    expect(vm.commits.map((c) => c.label)).toEqual(['G']);
  });

  it('reports out-of-order gaze timestamps without killing the session', async () => {
    const script: ClientMsg[] = [
      { type: 'hello', protocol_version: PROTOCOL_VERSION },
      { type: 'gaze', t_ms: 100, x: 512, y: 512 },
      { type: 'gaze', t_ms: 50, x: 512, y: 512 },
      { type: 'gaze', t_ms: 150, x: 512, y: 512 },
    ];
    const { messages } = await runScript(script, 4);
    expect(messages[2].type).toBe('error');
    expect(messages[2].type === 'error' && messages[2].code).toBe('ts_order');
    expect(messages[3].type).toBe('state');
  });
});

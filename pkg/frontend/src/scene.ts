// Display math and scene construction. buildScene() is a pure function
// of the view model: it turns the server's spans and items into a list
// of drawable shapes. Angles follow the server convention (degrees,
// clockwise from 12 o'clock, screen y down); canvas arcs measure from
// the +x axis, so canvas angle = theta - 90 degrees.

import type { LayoutInfoMsg, StateMsg, WireSlice } from './protocol.js';
import { commitFlashActive, type ViewModel } from './viewmodel.js';

export interface ArcShape {
  kind: 'arc';
  rInner: number;
  rOuter: number;
  startDeg: number; // server convention
  endDeg: number;
  fill: string;
  stroke?: string;
}

export interface LabelShape {
  kind: 'label';
  x: number;
  y: number;
  text: string;
  fill: string;
  fontPx: number;
  bold?: boolean;
}

export interface PolylineShape {
  kind: 'polyline';
  points: { x: number; y: number }[];
  stroke: string;
  width: number;
}

export type Shape = ArcShape | LabelShape | PolylineShape;

export interface Scene {
  center: { x: number; y: number };
  shapes: Shape[];
}

export function toCanvasRad(thetaDeg: number): number {
  return ((thetaDeg - 90) * Math.PI) / 180;
}

export function polarPoint(
  cx: number,
  cy: number,
  r: number,
  thetaDeg: number,
): { x: number; y: number } {
  const t = (thetaDeg * Math.PI) / 180;
  return { x: cx + r * Math.sin(t), y: cy - r * Math.cos(t) };
}

// slice fills alternate gray and blue around the pie
export function sliceFill(index: number, focused: boolean): string {
  const base = index % 2 === 0 ? 'hsl(210, 8%, 62%)' : 'hsl(212, 48%, 58%)';
  return focused ? (index % 2 === 0 ? 'hsl(210, 10%, 72%)' : 'hsl(212, 55%, 68%)') : base;
}

/** Character-cell gray, darkness increasing clockwise within the slice. */
export function cellShade(rank: number, count: number): string {
  const lightness = 78 - (count <= 1 ? 0 : (rank / (count - 1)) * 36);
  return `hsl(0, 0%, ${lightness}%)`;
}

export const SAFE_FILL = '#000000';
export const SELECTION_FILL_ARMED = 'hsl(0, 72%, 52%)'; // red
export const SELECTION_FILL_IDLE = 'hsl(0, 30%, 72%)';
export const SELECTION_FILL_FLASH = 'hsl(130, 62%, 45%)'; // green on commit

interface SpanTriple {
  index: number;
  startDeg: number;
  endDeg: number;
}

function currentSpans(layout: LayoutInfoMsg, state: StateMsg | null): SpanTriple[] {
  const raw: [number, number, number][] =
    state?.spans ?? layout.slices.map((s) => [s.index, s.start_deg, s.end_deg]);
  return raw.map(([index, startDeg, endDeg]) => ({ index, startDeg, endDeg }));
}

export function buildScene(vm: ViewModel, nowMs: number): Scene {
  const layout = vm.layout;
  if (!layout) {
    return { center: { x: 0, y: 0 }, shapes: [] };
  }
  const cfg = layout.config;
  const cx = cfg.center_x_px;
  const cy = cfg.center_y_px;
  const state = vm.state;
  const spans = currentSpans(layout, state);
  const focused = state?.focused ?? null;
  const shapes: Shape[] = [];

  // pie disk
  for (const span of spans) {
    shapes.push({
      kind: 'arc',
      rInner: 0,
      rOuter: cfg.pie_radius_px,
      startDeg: span.startDeg,
      endDeg: span.endDeg,
      fill: sliceFill(span.index, span.index === focused),
      stroke: '#ffffff',
    });
  }

  // slice labels (letters grouped at mid-span, mid-radius)
  for (const span of spans) {
    const slice: WireSlice = layout.slices[span.index];
    const mid = (span.startDeg + span.endDeg) / 2;
    const p = polarPoint(cx, cy, cfg.pie_radius_px * 0.62, mid);
    const text = slice.items.map((i) => (i.action.kind === 'char' ? i.label : i.label[0])).join('');
    shapes.push({
      kind: 'label',
      x: p.x,
      y: p.y,
      text,
      fill: '#17202a',
      fontPx: 20,
    });
  }

  // outer rings exist only while a slice has focus
  if (state && focused !== null) {
    const focusSpan = spans.find((s) => s.index === focused);
    const items = layout.slices[focused].items;
    if (focusSpan) {
      const width = focusSpan.endDeg - focusSpan.startDeg;
      const cellDeg = width / items.length;
      const rChar = cfg.pie_radius_px;
      const rSafe = rChar + cfg.char_width_px;
      const rSel = rSafe + cfg.safe_width_px;
      const rOut = rSel + cfg.selection_width_px;

      items.forEach((item, i) => {
        const a0 = focusSpan.startDeg + i * cellDeg;
        const a1 = a0 + cellDeg;
        shapes.push({
          kind: 'arc',
          rInner: rChar,
          rOuter: rSafe,
          startDeg: a0,
          endDeg: a1,
          fill: cellShade(item.shade_rank, items.length),
          stroke: '#ffffff',
        });
        const p = polarPoint(cx, cy, (rChar + rSafe) / 2, (a0 + a1) / 2);
        const highlighted = state.highlighted === i;
        shapes.push({
          kind: 'label',
          x: p.x,
          y: p.y,
          text: item.label === 'SPACE' ? '␣' : item.label === 'CLEAR' ? '⌫' : item.label,
          fill: highlighted ? 'hsl(0, 85%, 45%)' : '#1b1b1b',
          fontPx: 26,
          bold: highlighted,
        });
      });

      if (cfg.safe_width_px > 0) {
        shapes.push({
          kind: 'arc',
          rInner: rSafe,
          rOuter: rSel,
          startDeg: focusSpan.startDeg,
          endDeg: focusSpan.endDeg,
          fill: SAFE_FILL,
        });
      }

      const flash = commitFlashActive(vm, nowMs);
      shapes.push({
        kind: 'arc',
        rInner: rSel,
        rOuter: rOut,
        startDeg: focusSpan.startDeg,
        endDeg: focusSpan.endDeg,
        fill: flash ? SELECTION_FILL_FLASH : state.armed ? SELECTION_FILL_ARMED : SELECTION_FILL_IDLE,
      });
    }
  }

  // fading cursor trail on top
  if (vm.cursorTrail.length > 1) {
    shapes.push({
      kind: 'polyline',
      points: vm.cursorTrail.map((p) => ({ x: p.x, y: p.y })),
      stroke: 'rgba(255, 255, 255, 0.85)',
      width: 2,
    });
  }

  return { center: { x: cx, y: cy }, shapes };
}

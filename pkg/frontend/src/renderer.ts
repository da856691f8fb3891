// Paints a Scene onto a canvas 2D context. Rendering is strictly
// output-only: nothing here feeds back into the session, so disabling
// the renderer cannot change what the server commits.

import { buildScene, toCanvasRad, type Scene, type Shape } from './scene.js';
import type { ViewModel } from './viewmodel.js';

export interface Canvas2D {
  // the subset of CanvasRenderingContext2D the renderer uses; tests can
  // substitute a recording stub
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number, ccw?: boolean): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
  textBaseline: CanvasTextBaseline;
}

function paintShape(ctx: Canvas2D, cx: number, cy: number, shape: Shape): void {
  if (shape.kind === 'arc') {
    ctx.beginPath();
    const a0 = toCanvasRad(shape.startDeg);
    const a1 = toCanvasRad(shape.endDeg);
    if (shape.rInner <= 0) {
      ctx.moveTo(cx, cy);
      ctx.arc(cx, cy, shape.rOuter, a0, a1, false);
    } else {
      ctx.arc(cx, cy, shape.rOuter, a0, a1, false);
      ctx.arc(cx, cy, shape.rInner, a1, a0, true);
    }
    ctx.closePath();
    ctx.fillStyle = shape.fill;
    ctx.fill();
    if (shape.stroke) {
      ctx.strokeStyle = shape.stroke;
      ctx.lineWidth = 1;
      ctx.stroke();
    }
  } else if (shape.kind === 'label') {
    ctx.font = `${shape.bold ? 'bold ' : ''}${shape.fontPx}px system-ui, sans-serif`;
    ctx.textAlign = 'center';
    ctx.textBaseline = 'middle';
    ctx.fillStyle = shape.fill;
    ctx.fillText(shape.text, shape.x, shape.y);
  } else {
    if (shape.points.length < 2) return;
    ctx.beginPath();
    ctx.moveTo(shape.points[0].x, shape.points[0].y);
    for (const p of shape.points.slice(1)) {
      ctx.lineTo(p.x, p.y);
    }
    ctx.strokeStyle = shape.stroke;
    ctx.lineWidth = shape.width;
    ctx.stroke();
  }
}

export function paintScene(ctx: Canvas2D, scene: Scene, width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
  for (const shape of scene.shapes) {
    paintShape(ctx, scene.center.x, scene.center.y, shape);
  }
}

/** Build the scene for a view model and paint it in one step. */
export function render(
  vm: ViewModel,
  ctx: Canvas2D,
  width: number,
  height: number,
  nowMs: number,
): Scene {
  const scene = buildScene(vm, nowMs);
  paintScene(ctx, scene, width, height);
  return scene;
}

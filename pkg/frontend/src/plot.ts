/** Axis scaffolding: linear/log scales with data-derived fixed limits. */
import { BLACK, Canvas, Color, GRAY } from "./raster.js";

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface Scale {
  (v: number): number;
  min: number;
  max: number;
  log: boolean;
}

function makeScale(min: number, max: number, out0: number, out1: number, log: boolean): Scale {
  const lo = log ? Math.log10(min) : min;
  const hi = log ? Math.log10(max) : max;
  const span = hi - lo || 1;
  const fn = ((v: number) => {
    const t = ((log ? Math.log10(v) : v) - lo) / span;
    return out0 + t * (out1 - out0);
  }) as Scale;
  fn.min = min;
  fn.max = max;
  fn.log = log;
  return fn;
}

export function xScale(min: number, max: number, rect: Rect, log = false): Scale {
  return makeScale(min, max, rect.x, rect.x + rect.w, log);
}

export function yScale(min: number, max: number, rect: Rect, log = false): Scale {
  return makeScale(min, max, rect.y + rect.h, rect.y, log); // y grows downward
}

export function pad(min: number, max: number, frac = 0.06): [number, number] {
  if (min === max) {
    const d = Math.abs(min) || 1;
    return [min - 0.1 * d, max + 0.1 * d];
  }
  const d = (max - min) * frac;
  return [min - d, max + d];
}

export function linearTicks(min: number, max: number, target = 5): number[] {
  const span = max - min;
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= step0) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

export function logTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, e) <= max * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length >= 2 ? ticks : [min, max];
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.01 && a < 10000) {
    return parseFloat(v.toPrecision(3)).toString();
  }
  const e = Math.floor(Math.log10(a));
  const mant = v / Math.pow(10, e);
  const m = parseFloat(mant.toPrecision(2)).toString();
  return `${m}e${e}`;
}

export function drawFrame(
  canvas: Canvas,
  rect: Rect,
  sx: Scale,
  sy: Scale,
  xLabel: string,
  yLabel: string,
  title: string,
): void {
  canvas.line(rect.x, rect.y, rect.x, rect.y + rect.h, BLACK);
  canvas.line(rect.x, rect.y + rect.h, rect.x + rect.w, rect.y + rect.h, BLACK);
  canvas.line(rect.x + rect.w, rect.y, rect.x + rect.w, rect.y + rect.h, GRAY);
  canvas.line(rect.x, rect.y, rect.x + rect.w, rect.y, GRAY);

  const xs = sx.log ? logTicks(sx.min, sx.max) : linearTicks(sx.min, sx.max);
  for (const v of xs) {
    const px = sx(v);
    canvas.line(px, rect.y + rect.h, px, rect.y + rect.h + 4, BLACK);
    const label = fmtTick(v);
    canvas.text(px - canvas.textWidth(label) / 2, rect.y + rect.h + 7, label, BLACK);
  }
  const ys = sy.log ? logTicks(sy.min, sy.max) : linearTicks(sy.min, sy.max);
  for (const v of ys) {
    const py = sy(v);
    canvas.line(rect.x - 4, py, rect.x, py, BLACK);
    const label = fmtTick(v);
    canvas.text(rect.x - 6 - canvas.textWidth(label), py - 3, label, BLACK);
  }
  canvas.text(rect.x + rect.w / 2 - canvas.textWidth(xLabel) / 2, rect.y + rect.h + 22, xLabel, BLACK);
  canvas.text(rect.x, rect.y - 24, yLabel, BLACK);
  canvas.text(rect.x + rect.w / 2 - canvas.textWidth(title) / 2, 8, title, BLACK);
}

export function legend(
  canvas: Canvas,
  rect: Rect,
  entries: Array<[string, Color, "line" | "dash" | "dot"]>,
): void {
  let y = rect.y + 8;
  const x = rect.x + rect.w - 150;
  for (const [label, color, style] of entries) {
    if (style === "dot") {
      canvas.marker(x + 8, y + 3, color, 2);
    } else if (style === "dash") {
      canvas.dashedLine(x, y + 3, x + 16, y + 3, color);
    } else {
      canvas.line(x, y + 3, x + 16, y + 3, color);
    }
    canvas.text(x + 22, y, label, BLACK);
    y += 12;
  }
}

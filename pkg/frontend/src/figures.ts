/**
 * The four figure kinds rendered from the primary tool's CSV artifacts:
 *
 *   spectrum         -- wavenumbers and frequencies against mode index
 *   convergence      -- channel heat against truncation order
 *   scaling          -- exact-vs-perturbative error against coupling,
 *                       log-log with a slope-2 reference
 *   landauer_heatmap -- heat flow over the (T_R, T_D) grid with the
 *                       zero-margin contour and the T_D = T_R diagonal
 *
 * Axis limits derive only from the data, so output bytes are a pure
 * function of the input file.
 */
import { column, requireColumns, SchemaError, Table } from "./csv.js";
import { BLACK, BLUE, Canvas, Color, GRAY, GREEN, RED } from "./raster.js";
import { drawFrame, fmtTick, legend, pad, Rect, xScale, yScale } from "./plot.js";

export const FIGURE_KINDS = ["spectrum", "convergence", "scaling", "landauer_heatmap"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export const REQUIRED_COLUMNS: Record<FigureKind, string[]> = {
  spectrum: ["n", "k", "omega", "norm"],
  convergence: ["n_max", "dQ", "delta_p", "tail_estimate"],
  scaling: ["lambda", "rel_err_delta_p", "rel_err_dQ"],
  landauer_heatmap: ["T_R", "T_D", "dQ", "landauer_margin"],
};

const WIDTH = 640;
const HEIGHT = 480;
const PLOT: Rect = { x: 70, y: 40, w: WIDTH - 100, h: HEIGHT - 110 };

function polyline(canvas: Canvas, xs: number[], ys: number[], color: Color, dots = true): void {
  for (let i = 1; i < xs.length; i++) {
    canvas.line(xs[i - 1], ys[i - 1], xs[i], ys[i], color);
  }
  if (dots) {
    for (let i = 0; i < xs.length; i++) canvas.marker(xs[i], ys[i], color, 2);
  }
}

function renderSpectrum(table: Table): Canvas {
  const n = column(table, "n");
  const k = column(table, "k");
  const omega = column(table, "omega");
  const canvas = new Canvas(WIDTH, HEIGHT);
  const [ylo, yhi] = pad(0, Math.max(...omega));
  const sx = xScale(...pad(n[0], n[n.length - 1], 0.03), PLOT);
  const sy = yScale(ylo, yhi, PLOT);
  drawFrame(canvas, PLOT, sx, sy, "mode index n", "wavenumber / energy", "cavity mode spectrum");
  polyline(canvas, n.map(sx), k.map(sy), BLUE);
  polyline(canvas, n.map(sx), omega.map(sy), RED);
  legend(canvas, PLOT, [
    ["k_n", BLUE, "dot"],
    ["omega_n", RED, "dot"],
  ]);
  return canvas;
}

function renderConvergence(table: Table): Canvas {
  const nmax = column(table, "n_max");
  const dq = column(table, "dQ");
  const canvas = new Canvas(WIDTH, HEIGHT);
  const sx = xScale(...pad(Math.min(...nmax), Math.max(...nmax), 0.03), PLOT);
  const sy = yScale(...pad(Math.min(...dq), Math.max(...dq)), PLOT);
  drawFrame(canvas, PLOT, sx, sy, "truncation n_max", "dQ", "mode-sum convergence");
  polyline(canvas, nmax.map(sx), dq.map(sy), BLUE);
  legend(canvas, PLOT, [["dQ(n_max)", BLUE, "dot"]]);
  return canvas;
}

function renderScaling(table: Table): Canvas {
  const lam = column(table, "lambda");
  const edp = column(table, "rel_err_delta_p");
  const edq = column(table, "rel_err_dQ");
  if (lam.some((v) => v <= 0) || [...edp, ...edq].some((v) => v <= 0)) {
    throw new SchemaError("scaling figure needs positive lambda and errors (log axes)");
  }
  const canvas = new Canvas(WIDTH, HEIGHT);
  const errAll = [...edp, ...edq];
  const sx = xScale(Math.min(...lam) / 1.3, Math.max(...lam) * 1.3, PLOT, true);
  const sy = yScale(Math.min(...errAll) / 2, Math.max(...errAll) * 2, PLOT, true);
  drawFrame(canvas, PLOT, sx, sy, "lambda", "relative error", "perturbative error scaling");

  // slope-2 guide anchored on the largest-lambda delta_p point
  const i0 = lam.indexOf(Math.max(...lam));
  const ref = (l: number) => edp[i0] * Math.pow(l / lam[i0], 2);
  canvas.dashedLine(sx(sx.min), sy(ref(sx.min)), sx(sx.max), sy(ref(sx.max)), GRAY);
  for (let i = 0; i < lam.length; i++) {
    canvas.marker(sx(lam[i]), sy(edp[i]), BLUE, 3);
    canvas.marker(sx(lam[i]), sy(edq[i]), RED, 2);
  }
  legend(canvas, PLOT, [
    ["delta_p error", BLUE, "dot"],
    ["dQ error", RED, "dot"],
    ["slope 2", GRAY, "dash"],
  ]);
  return canvas;
}

export interface HeatGrid {
  trs: number[];
  tds: number[];
  dq: number[][]; // [tr index][td index]
  margin: number[][];
}

export function heatGrid(table: Table): HeatGrid {
  const tr = column(table, "T_R");
  const td = column(table, "T_D");
  const dq = column(table, "dQ");
  const margin = column(table, "landauer_margin");
  const trs = [...new Set(tr)].sort((a, b) => a - b);
  const tds = [...new Set(td)].sort((a, b) => a - b);
  const gridQ = trs.map(() => new Array(tds.length).fill(NaN));
  const gridM = trs.map(() => new Array(tds.length).fill(NaN));
  for (let i = 0; i < tr.length; i++) {
    const r = trs.indexOf(tr[i]);
    const c = tds.indexOf(td[i]);
    gridQ[r][c] = dq[i];
    gridM[r][c] = margin[i];
  }
  if (gridQ.flat().some(Number.isNaN)) {
    throw new SchemaError("sweep rows do not tile a full (T_R, T_D) grid");
  }
  return { trs, tds, dq: gridQ, margin: gridM };
}

/**
 * Zero-margin contour: for each field temperature, the detector
 * temperature cell where the Landauer margin is smallest (the bound
 * touches zero along thermal equilibrium).
 */
export function zeroMarginContour(grid: HeatGrid): Array<{ tr: number; td: number }> {
  return grid.trs.map((tr, r) => {
    let best = 0;
    for (let c = 1; c < grid.tds.length; c++) {
      if (grid.margin[r][c] < grid.margin[r][best]) best = c;
    }
    return { tr, td: grid.tds[best] };
  });
}

function divergingColor(t: number): Color {
  // t in [-1, 1]: blue for heat leaving the field, red for heat absorbed
  const clamp = Math.max(-1, Math.min(1, t));
  const w = 1 - Math.abs(clamp);
  if (clamp >= 0) {
    return [255, Math.round(60 + 195 * w), Math.round(50 + 205 * w)];
  }
  return [Math.round(50 + 205 * w), Math.round(70 + 185 * w), 255];
}

function renderHeatmap(table: Table): Canvas {
  const grid = heatGrid(table);
  const canvas = new Canvas(WIDTH, HEIGHT);
  const sx = xScale(grid.tds[0], grid.tds[grid.tds.length - 1], PLOT);
  const sy = yScale(grid.trs[0], grid.trs[grid.trs.length - 1], PLOT);
  const qmax = Math.max(...grid.dq.flat().map(Math.abs)) || 1;

  // cell boundaries at midpoints between grid values
  const edges = (vals: number[]) => {
    const e = [vals[0] - (vals[1] - vals[0]) / 2];
    for (let i = 0; i + 1 < vals.length; i++) e.push((vals[i] + vals[i + 1]) / 2);
    e.push(vals[vals.length - 1] + (vals[vals.length - 1] - vals[vals.length - 2]) / 2);
    return e;
  };
  const xe = edges(grid.tds);
  const ye = edges(grid.trs);
  for (let r = 0; r < grid.trs.length; r++) {
    for (let c = 0; c < grid.tds.length; c++) {
      const x0 = Math.round(sx(xe[c]));
      const x1 = Math.round(sx(xe[c + 1]));
      const y1 = Math.round(sy(ye[r]));
      const y0 = Math.round(sy(ye[r + 1]));
      canvas.fillRect(x0, y0, x1 - x0 + 1, y1 - y0 + 1, divergingColor(grid.dq[r][c] / qmax));
    }
  }
  drawFrame(canvas, PLOT, sx, sy, "detector temperature T_D", "field temperature T_R",
    "heat flow and Landauer margin");

  const contour = zeroMarginContour(grid);
  for (let i = 1; i < contour.length; i++) {
    canvas.line(sx(contour[i - 1].td), sy(contour[i - 1].tr), sx(contour[i].td), sy(contour[i].tr), GREEN);
  }
  for (const pt of contour) canvas.marker(sx(pt.td), sy(pt.tr), GREEN, 2);
  const lo = Math.max(grid.tds[0], grid.trs[0]);
  const hi = Math.min(grid.tds[grid.tds.length - 1], grid.trs[grid.trs.length - 1]);
  canvas.dashedLine(sx(lo), sy(lo), sx(hi), sy(hi), BLACK, 5);
  legend(canvas, PLOT, [
    ["zero margin", GREEN, "dot"],
    ["T_D = T_R", BLACK, "dash"],
  ]);
  canvas.text(PLOT.x, HEIGHT - 28, `dQ range +-${fmtTick(qmax)}`, BLACK);
  return canvas;
}

export function renderFigure(kind: FigureKind, table: Table): Canvas {
  requireColumns(table, REQUIRED_COLUMNS[kind], kind);
  switch (kind) {
    case "spectrum":
      return renderSpectrum(table);
    case "convergence":
      return renderConvergence(table);
    case "scaling":
      return renderScaling(table);
    case "landauer_heatmap":
      return renderHeatmap(table);
  }
}

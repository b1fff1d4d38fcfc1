/**
 * Width-vs-cutoff figure: the analytic curve through the sigma_theory column
 * plus the Monte Carlo points with +/- one-standard-error bars, and a legend
 * annotating the worst relative error of the scan.
 */

import { writeFileSync } from "node:fs";

import { readWidthScanCsv, WidthScanRow } from "./csv.js";
import { encodePng } from "./png.js";
import { Raster } from "./raster.js";
import { formatTick, linspace } from "./scale.js";

const AXIS: [number, number, number] = [40, 40, 40];
const THEORY: [number, number, number] = [31, 119, 180];
const MC: [number, number, number] = [255, 127, 14];

export interface WidthCurveStyle {
  logX?: boolean;
  title?: string;
  width?: number;
  height?: number;
}

export interface WidthCurveResult {
  outputPath: string;
  rows: WidthScanRow[];
  maxRelErr: number;
  axis: { xMin: number; xMax: number; yMin: number; yMax: number };
  image: Raster;
}

export function renderWidthCurve(
  inputPath: string,
  outputPath: string,
  style: WidthCurveStyle = {},
): WidthCurveResult {
  const rows = readWidthScanCsv(inputPath);
  if (rows.length === 0) {
    throw new Error(`${inputPath}: width scan holds no rows`);
  }
  const logX = style.logX ?? false;

  const xOf = (n: number) => (logX ? Math.log10(n) : n);
  const xs = rows.map((r) => xOf(r.n));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const xSpan = xMax - xMin || 1;
  const yTop = Math.max(...rows.map((r) => Math.max(r.sigmaMc + r.sigmaStdError, r.sigmaTheory)));
  const yMax = yTop * 1.08 || 1;
  const yMin = 0;

  const plotW = style.width ?? 420;
  const plotH = style.height ?? 300;
  const margin = { left: 64, right: 24, top: 30, bottom: 48 };
  const img = new Raster(margin.left + plotW + margin.right, margin.top + plotH + margin.bottom);
  const px = (x: number) => margin.left + Math.round(((x - xMin) / xSpan) * (plotW - 1));
  const py = (y: number) => margin.top + plotH - 1 - Math.round(((y - yMin) / (yMax - yMin)) * (plotH - 1));

  img.strokeRect(margin.left - 1, margin.top - 1, plotW + 2, plotH + 2, AXIS);

  // theory: sigma_theory = c sqrt(N); draw the dense curve when the column
  // is consistent with that shape, else join the provided points
  const coeffs = rows.map((r) => r.sigmaTheory / Math.sqrt(r.n));
  const c0 = coeffs[0];
  const sqrtLaw = coeffs.every((c) => Math.abs(c - c0) <= 1e-9 * Math.abs(c0));
  const curve: Array<[number, number]> = [];
  if (sqrtLaw) {
    const nLo = rows[0].n;
    const nHi = rows[rows.length - 1].n;
    for (const n of linspace(nLo, nHi, 256)) {
      curve.push([xOf(n), c0 * Math.sqrt(n)]);
    }
  } else {
    for (const r of rows) curve.push([xOf(r.n), r.sigmaTheory]);
  }
  for (let i = 1; i < curve.length; i++) {
    img.line(px(curve[i - 1][0]), py(curve[i - 1][1]), px(curve[i][0]), py(curve[i][1]), THEORY);
  }

  // Monte Carlo points with +/- 1 standard-error bars
  for (const r of rows) {
    const x = px(xOf(r.n));
    const yLo = py(r.sigmaMc - r.sigmaStdError);
    const yHi = py(r.sigmaMc + r.sigmaStdError);
    img.line(x, yHi, x, yLo, MC);
    img.line(x - 2, yHi, x + 2, yHi, MC);
    img.line(x - 2, yLo, x + 2, yLo, MC);
    img.fillRect(x - 2, py(r.sigmaMc) - 2, 5, 5, MC);
  }

  const xTicks = logX
    ? rows.map((r) => r.n)
    : linspace(rows[0].n, rows[rows.length - 1].n, Math.min(6, rows.length + 1));
  for (const n of xTicks) {
    const x = px(xOf(n));
    img.line(x, margin.top + plotH, x, margin.top + plotH + 3, AXIS);
    const label = formatTick(n);
    img.text(x - Math.floor(Raster.textWidth(label) / 2), margin.top + plotH + 7, label, AXIS);
  }
  for (const v of linspace(yMin, yMax, 5)) {
    const y = py(v);
    img.line(margin.left - 4, y, margin.left - 1, y, AXIS);
    const label = formatTick(v);
    img.text(margin.left - 8 - Raster.textWidth(label), y - 3, label, AXIS);
  }
  img.text(margin.left + Math.floor(plotW / 2) - 2, margin.top + plotH + 24, "N", AXIS);
  img.text(8, margin.top + Math.floor(plotH / 2) - 3, "sigma", AXIS);
  img.text(margin.left, 10, style.title ?? "manifold width vs mode cutoff", AXIS);

  // legend with the worst relative deviation of the scan
  const maxRelErr = Math.max(...rows.map((r) => r.relErr));
  const lx = margin.left + 12;
  const ly = margin.top + 10;
  img.line(lx, ly + 3, lx + 16, ly + 3, THEORY);
  img.text(lx + 22, ly, "theory", AXIS);
  img.fillRect(lx + 6, ly + 12, 5, 5, MC);
  img.text(lx + 22, ly + 12, "simulation (+/- 1 s.e.)", AXIS);
  img.text(lx + 22, ly + 24, `max rel err ${(100 * maxRelErr).toFixed(2)}%`, AXIS);

  writeFileSync(outputPath, encodePng(img.width, img.height, img.data));
  return {
    outputPath,
    rows,
    maxRelErr,
    axis: { xMin, xMax, yMin, yMax },
    image: img,
  };
}

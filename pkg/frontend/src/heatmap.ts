/**
 * Heatmap rendering of LDG1 descriptor grids.
 *
 * The image places q horizontally and p vertically (increasing upward), with
 * the physical extents taken verbatim from the file header.  Difference
 * fields use a diverging colormap whose center sits exactly at zero; raw
 * descriptor fields use a sequential map.  A labeled colorbar sits on the
 * right.
 */

import { writeFileSync } from "node:fs";

import { colormap } from "./color.js";
import { GridHeader, LdgField, readLdgFile } from "./ldg.js";
import { encodePng } from "./png.js";
import { Raster } from "./raster.js";
import { formatTick, linspace } from "./scale.js";

const AXIS: [number, number, number] = [40, 40, 40];
const GRAY: [number, number, number] = [120, 120, 120];

export interface HeatmapStyle {
  /** colormap override; defaults to diverging for differences, else sequential */
  colormap?: string;
  title?: string;
  /** integer pixel size per grid cell; default targets about 384 px */
  cellSize?: number;
}

export interface PlotRect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface HeatmapResult {
  outputPath: string;
  header: GridHeader;
  /** physical axis extents used for the plot; equal to the header fields */
  extents: { qMin: number; qMax: number; pMin: number; pMax: number };
  vMin: number;
  vMax: number;
  colormap: string;
  plotRect: PlotRect;
  image: Raster;
}

function valueRange(field: LdgField): { vMin: number; vMax: number } {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of field.values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (field.header.kind === "difference") {
    // symmetric range: the colorbar center is exactly zero
    const peak = Math.max(Math.abs(lo), Math.abs(hi)) || 1;
    return { vMin: -peak, vMax: peak };
  }
  if (lo === hi) hi = lo + 1;
  return { vMin: lo, vMax: hi };
}

export function renderHeatmap(
  inputPath: string,
  outputPath: string,
  style: HeatmapStyle = {},
): HeatmapResult {
  const field = readLdgFile(inputPath);
  const { nq, np, qMin, qMax, pMin, pMax, kind } = field.header;

  const cell =
    style.cellSize ?? Math.max(1, Math.min(96, Math.floor(384 / Math.max(nq, np))));
  const mapName = style.colormap ?? (kind === "difference" ? "diverging" : "sequential");
  const cmap = colormap(mapName);
  const { vMin, vMax } = valueRange(field);

  const plotW = nq * cell;
  const plotH = np * cell;
  const margin = { left: 58, right: 86, top: 30, bottom: 46 };
  const img = new Raster(margin.left + plotW + margin.right, margin.top + plotH + margin.bottom);
  const plot: PlotRect = { x: margin.left, y: margin.top, width: plotW, height: plotH };

  for (let i = 0; i < np; i++) {
    const y = plot.y + (np - 1 - i) * cell; // p grows upward
    for (let j = 0; j < nq; j++) {
      const t = (field.values[i * nq + j] - vMin) / (vMax - vMin);
      img.fillRect(plot.x + j * cell, y, cell, cell, cmap(t));
    }
  }
  img.strokeRect(plot.x - 1, plot.y - 1, plot.width + 2, plot.height + 2, AXIS);

  // axis ticks carry the physical extents from the header
  const qTicks = linspace(qMin, qMax, 5);
  const pTicks = linspace(pMin, pMax, 5);
  qTicks.forEach((v, idx) => {
    const x = plot.x + Math.round(((plot.width - 1) * idx) / (qTicks.length - 1));
    img.line(x, plot.y + plot.height, x, plot.y + plot.height + 3, AXIS);
    const label = formatTick(v);
    img.text(x - Math.floor(Raster.textWidth(label) / 2), plot.y + plot.height + 7, label, AXIS);
  });
  pTicks.forEach((v, idx) => {
    const y = plot.y + plot.height - 1 - Math.round(((plot.height - 1) * idx) / (pTicks.length - 1));
    img.line(plot.x - 4, y, plot.x - 1, y, AXIS);
    const label = formatTick(v);
    img.text(plot.x - 8 - Raster.textWidth(label), y - 3, label, AXIS);
  });
  img.text(plot.x + Math.floor(plot.width / 2) - 2, plot.y + plot.height + 24, "q", AXIS);
  img.text(12, plot.y + Math.floor(plot.height / 2) - 3, "p", AXIS);

  const title = style.title ?? `${kind} descriptor field`;
  img.text(plot.x, 10, title, AXIS);

  // colorbar
  const barX = plot.x + plot.width + 18;
  const barW = 14;
  for (let y = 0; y < plot.height; y++) {
    const t = 1 - y / Math.max(1, plot.height - 1);
    img.fillRect(barX, plot.y + y, barW, 1, cmap(t));
  }
  img.strokeRect(barX - 1, plot.y - 1, barW + 2, plot.height + 2, AXIS);
  const barTicks = [vMax, (vMin + vMax) / 2, vMin];
  barTicks.forEach((v, idx) => {
    const y = plot.y + Math.round(((plot.height - 1) * idx) / (barTicks.length - 1));
    img.line(barX + barW + 1, y, barX + barW + 3, y, AXIS);
    img.text(barX + barW + 6, y - 3, formatTick(v), GRAY);
  });

  writeFileSync(outputPath, encodePng(img.width, img.height, img.data));
  return {
    outputPath,
    header: field.header,
    extents: { qMin, qMax, pMin, pMax },
    vMin,
    vMax,
    colormap: mapName,
    plotRect: plot,
    image: img,
  };
}

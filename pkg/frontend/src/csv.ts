/** Width-scan CSV parsing with strict schema checking. */

import { readFileSync } from "node:fs";

export const WIDTH_SCAN_HEADER = ["N", "sigma_mc", "sigma_std_error", "sigma_theory", "rel_err"];

export interface WidthScanRow {
  n: number;
  sigmaMc: number;
  sigmaStdError: number;
  sigmaTheory: number;
  relErr: number;
}

export class CsvSchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CsvSchemaError";
  }
}

export function parseWidthScanCsv(text: string): WidthScanRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty file, expected a width-scan header row");
  }
  const header = lines[0].split(",");
  if (header.join(",") !== WIDTH_SCAN_HEADER.join(",")) {
    throw new CsvSchemaError(
      `header mismatch: got "${lines[0]}", expected "${WIDTH_SCAN_HEADER.join(",")}"`,
    );
  }
  const rows: WidthScanRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== WIDTH_SCAN_HEADER.length) {
      throw new CsvSchemaError(`row ${i} has ${cells.length} fields, expected 5`);
    }
    const nums = cells.map(Number);
    if (nums.some((v) => !Number.isFinite(v))) {
      throw new CsvSchemaError(`row ${i} holds a non-numeric value: "${lines[i]}"`);
    }
    rows.push({
      n: nums[0],
      sigmaMc: nums[1],
      sigmaStdError: nums[2],
      sigmaTheory: nums[3],
      relErr: nums[4],
    });
  }
  return rows;
}

export function readWidthScanCsv(path: string): WidthScanRow[] {
  return parseWidthScanCsv(readFileSync(path, "utf8"));
}

/**
 * Parser for LDG1 binary descriptor grids.
 *
 * Layout (little-endian): 4-byte magic "LDG1", uint16 format version,
 * uint32 nq, uint32 np, four float64 extents (qMin, qMax, pMin, pMax),
 * uint8 kind code, then nq*np float64 values in row-major order with q
 * varying fastest.
 */

import { readFileSync } from "node:fs";

export const LDG_MAGIC = "LDG1";
export const LDG_FORMAT_VERSION = 1;
export const HEADER_SIZE = 47;

export type FieldKind = "classical" | "quantum" | "difference";

const KIND_NAMES: FieldKind[] = ["classical", "quantum", "difference"];

export interface GridHeader {
  nq: number;
  np: number;
  qMin: number;
  qMax: number;
  pMin: number;
  pMax: number;
  kind: FieldKind;
}

export interface LdgField {
  header: GridHeader;
  /** row-major (np rows of nq values), q varying fastest */
  values: Float64Array;
}

/** Parse failure; `byteOffset` locates the offending byte in the file. */
export class LdgParseError extends Error {
  readonly byteOffset: number;

  constructor(message: string, byteOffset: number) {
    super(`${message} (at byte ${byteOffset})`);
    this.name = "LdgParseError";
    this.byteOffset = byteOffset;
  }
}

export function parseLdg(buf: Buffer): LdgField {
  if (buf.length < 4 || buf.toString("latin1", 0, 4) !== LDG_MAGIC) {
    throw new LdgParseError(
      `bad magic ${JSON.stringify(buf.toString("latin1", 0, Math.min(4, buf.length)))}, expected "${LDG_MAGIC}"`,
      0,
    );
  }
  if (buf.length < HEADER_SIZE) {
    throw new LdgParseError(`header truncated: ${buf.length} bytes`, buf.length);
  }
  const view = new DataView(buf.buffer, buf.byteOffset, buf.byteLength);
  const version = view.getUint16(4, true);
  if (version !== LDG_FORMAT_VERSION) {
    throw new LdgParseError(
      `unsupported format version ${version}, expected ${LDG_FORMAT_VERSION}`,
      4,
    );
  }
  const nq = view.getUint32(6, true);
  const np = view.getUint32(10, true);
  const qMin = view.getFloat64(14, true);
  const qMax = view.getFloat64(22, true);
  const pMin = view.getFloat64(30, true);
  const pMax = view.getFloat64(38, true);
  const kindCode = view.getUint8(46);
  if (kindCode >= KIND_NAMES.length) {
    throw new LdgParseError(`unknown kind code ${kindCode}`, 46);
  }
  const expected = HEADER_SIZE + nq * np * 8;
  if (buf.length !== expected) {
    throw new LdgParseError(
      `payload is ${buf.length - HEADER_SIZE} bytes, expected ${nq * np * 8} for ${nq}x${np}`,
      Math.min(buf.length, expected),
    );
  }
  const values = new Float64Array(nq * np);
  for (let i = 0; i < values.length; i++) {
    values[i] = view.getFloat64(HEADER_SIZE + 8 * i, true);
  }
  return {
    header: { nq, np, qMin, qMax, pMin, pMax, kind: KIND_NAMES[kindCode] },
    values,
  };
}

export function readLdgFile(path: string): LdgField {
  return parseLdg(readFileSync(path));
}

/** Serialize a field; inverse of parseLdg. Used by tests to build fixtures. */
export function writeLdgBuffer(field: LdgField): Buffer {
  const { header, values } = field;
  const buf = Buffer.alloc(HEADER_SIZE + values.length * 8);
  buf.write(LDG_MAGIC, 0, "latin1");
  const view = new DataView(buf.buffer, buf.byteOffset, buf.byteLength);
  view.setUint16(4, LDG_FORMAT_VERSION, true);
  view.setUint32(6, header.nq, true);
  view.setUint32(10, header.np, true);
  view.setFloat64(14, header.qMin, true);
  view.setFloat64(22, header.qMax, true);
  view.setFloat64(30, header.pMin, true);
  view.setFloat64(38, header.pMax, true);
  view.setUint8(46, KIND_NAMES.indexOf(header.kind));
  for (let i = 0; i < values.length; i++) {
    view.setFloat64(HEADER_SIZE + 8 * i, values[i], true);
  }
  return buf;
}

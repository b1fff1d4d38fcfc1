/** Software RGBA canvas with lines, rectangles and bitmap text. */

import { FONT, GLYPH_HEIGHT, GLYPH_WIDTH, UNKNOWN_GLYPH } from "./font.js";
import { Rgb } from "./color.js";

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    this.fill(background);
  }

  fill(color: Rgb): void {
    for (let i = 0; i < this.width * this.height; i++) {
      this.data[4 * i] = color[0];
      this.data[4 * i + 1] = color[1];
      this.data[4 * i + 2] = color[2];
      this.data[4 * i + 3] = 255;
    }
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 4 * (y * this.width + x);
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
    this.data[i + 3] = 255;
  }

  get(x: number, y: number): Rgb {
    const i = 4 * (y * this.width + x);
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  strokeRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    this.line(x, y, x + w - 1, y, color);
    this.line(x, y + h - 1, x + w - 1, y + h - 1, color);
    this.line(x, y, x, y + h - 1, color);
    this.line(x + w - 1, y, x + w - 1, y + h - 1, color);
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  text(x: number, y: number, str: string, color: Rgb, scale = 1): void {
    let cursor = x;
    for (const ch of str) {
      const glyph = FONT[ch] ?? UNKNOWN_GLYPH;
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if ((glyph[row] >> (GLYPH_WIDTH - 1 - col)) & 1) {
            this.fillRect(cursor + col * scale, y + row * scale, scale, scale, color);
          }
        }
      }
      cursor += (GLYPH_WIDTH + 1) * scale;
    }
  }

  static textWidth(str: string, scale = 1): number {
    return str.length === 0 ? 0 : ([...str].length * (GLYPH_WIDTH + 1) - 1) * scale;
  }
}

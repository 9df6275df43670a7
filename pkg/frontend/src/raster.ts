/** Software RGBA canvas with just enough drawing for batch figures. */
import { GLYPHS, GLYPH_H, GLYPH_W, MISSING } from "./font.js";
import { encodePng } from "./png.js";

export type Color = readonly [number, number, number, number?];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    this.fill(background);
  }

  fill(color: Color): void {
    const [r, g, b, a = 255] = color;
    for (let i = 0; i < this.data.length; i += 4) {
      this.data[i] = r;
      this.data[i + 1] = g;
      this.data[i + 2] = b;
      this.data[i + 3] = a;
    }
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (Math.round(y) * this.width + Math.round(x)) * 4;
    const [r, g, b, a = 255] = color;
    this.data[i] = r;
    this.data[i + 1] = g;
    this.data[i + 2] = b;
    this.data[i + 3] = a;
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, color);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Color): void {
    // Bresenham on rounded endpoints: crisp, deterministic
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

  /** Dashed straight line; used for reference slopes and diagonals. */
  dashedLine(x0: number, y0: number, x1: number, y1: number, color: Color, dash = 4): void {
    const len = Math.hypot(x1 - x0, y1 - y0);
    const steps = Math.max(1, Math.round(len));
    for (let i = 0; i <= steps; i++) {
      if (Math.floor(i / dash) % 2 === 0) {
        this.set(x0 + ((x1 - x0) * i) / steps, y0 + ((y1 - y0) * i) / steps, color);
      }
    }
  }

  marker(x: number, y: number, color: Color, size = 2): void {
    for (let dy = -size; dy <= size; dy++) {
      for (let dx = -size; dx <= size; dx++) {
        if (dx * dx + dy * dy <= size * size) this.set(x + dx, y + dy, color);
      }
    }
  }

  text(x: number, y: number, s: string, color: Color, scale = 1): void {
    let cx = Math.round(x);
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? MISSING;
      for (let row = 0; row < GLYPH_H; row++) {
        for (let col = 0; col < GLYPH_W; col++) {
          if (glyph[row] & (1 << (GLYPH_W - 1 - col))) {
            this.fillRect(cx + col * scale, Math.round(y) + row * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_W + 1) * scale;
    }
  }

  textWidth(s: string, scale = 1): number {
    return s.length * (GLYPH_W + 1) * scale - scale;
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.data);
  }
}

export const BLACK: Color = [0, 0, 0];
export const GRAY: Color = [150, 150, 150];
export const BLUE: Color = [32, 80, 200];
export const RED: Color = [200, 48, 32];
export const GREEN: Color = [24, 140, 72];

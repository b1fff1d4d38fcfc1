/** Colormaps: diverging (sign-centered differences) and sequential (raw fields). */

export type Rgb = [number, number, number];

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

function piecewise(anchors: Rgb[], t: number): Rgb {
  const x = Math.min(1, Math.max(0, t)) * (anchors.length - 1);
  const i = Math.min(anchors.length - 2, Math.floor(x));
  return lerp(anchors[i], anchors[i + 1], x - i);
}

/** Blue-white-red, zero at t = 0.5. */
const DIVERGING: Rgb[] = [
  [33, 102, 172],
  [146, 197, 222],
  [247, 247, 247],
  [244, 165, 130],
  [178, 24, 43],
];

/** Dark-violet to yellow, perceptually increasing. */
const SEQUENTIAL: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export const COLORMAPS: Record<string, (t: number) => Rgb> = {
  diverging: (t) => piecewise(DIVERGING, t),
  sequential: (t) => piecewise(SEQUENTIAL, t),
};

export function colormap(name: string): (t: number) => Rgb {
  const fn = COLORMAPS[name];
  if (!fn) {
    throw new Error(`unknown colormap "${name}" (have ${Object.keys(COLORMAPS).join(", ")})`);
  }
  return fn;
}

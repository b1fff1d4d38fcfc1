/** Tick placement and compact numeric labels. */

export function linspace(a: number, b: number, count: number): number[] {
  if (count === 1) return [a];
  const out = new Array<number>(count);
  for (let i = 0; i < count; i++) {
    out[i] = a + ((b - a) * i) / (count - 1);
  }
  out[count - 1] = b;
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const magnitude = Math.abs(v);
  if (magnitude >= 10000 || magnitude < 0.001) {
    return v.toExponential(1).replace("e+", "e").replace(/e(-?)0*(\d)/, "e$1$2");
  }
  return String(Number(v.toPrecision(3)));
}

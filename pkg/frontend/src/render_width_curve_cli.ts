/** Standalone script: node dist/render_width_curve_cli.js <in.csv> <out.png> [flags] */

import { renderWidthCurve, WidthCurveStyle } from "./widthcurve.js";

export function main(argv: string[]): number {
  const positional: string[] = [];
  const style: WidthCurveStyle = {};
  for (const arg of argv) {
    if (arg === "--log-x") style.logX = true;
    else if (arg.startsWith("--title=")) style.title = arg.slice("--title=".length);
    else positional.push(arg);
  }
  if (positional.length !== 2) {
    console.error("usage: render_width_curve_cli <scan.csv> <output.png> [--log-x] [--title=TEXT]");
    return 2;
  }
  try {
    const result = renderWidthCurve(positional[0], positional[1], style);
    console.log(
      `wrote ${result.outputPath} (${result.rows.length} rows, ` +
        `max rel err ${(100 * result.maxRelErr).toFixed(2)}%)`,
    );
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}

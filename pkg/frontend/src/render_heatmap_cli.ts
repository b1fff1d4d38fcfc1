/** Standalone script: node dist/render_heatmap_cli.js <in.ldg> <out.png> [flags] */

import { HeatmapStyle, renderHeatmap } from "./heatmap.js";

export function main(argv: string[]): number {
  const positional: string[] = [];
  const style: HeatmapStyle = {};
  for (const arg of argv) {
    if (arg.startsWith("--colormap=")) style.colormap = arg.slice("--colormap=".length);
    else if (arg.startsWith("--title=")) style.title = arg.slice("--title=".length);
    else if (arg.startsWith("--cell-size=")) style.cellSize = Number(arg.slice("--cell-size=".length));
    else positional.push(arg);
  }
  if (positional.length !== 2) {
    console.error(
      "usage: render_heatmap_cli <input.ldg> <output.png> [--colormap=NAME] [--title=TEXT] [--cell-size=N]",
    );
    return 2;
  }
  try {
    const result = renderHeatmap(positional[0], positional[1], style);
    console.log(
      `wrote ${result.outputPath} (${result.image.width}x${result.image.height}, ` +
        `${result.header.kind}, ${result.colormap})`,
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

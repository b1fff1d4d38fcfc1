export { CsvSchemaError, parseWidthScanCsv, readWidthScanCsv, WIDTH_SCAN_HEADER } from "./csv.js";
export type { WidthScanRow } from "./csv.js";
export { colormap, COLORMAPS } from "./color.js";
export { renderHeatmap } from "./heatmap.js";
export type { HeatmapResult, HeatmapStyle } from "./heatmap.js";
export {
  HEADER_SIZE,
  LDG_FORMAT_VERSION,
  LDG_MAGIC,
  LdgParseError,
  parseLdg,
  readLdgFile,
  writeLdgBuffer,
} from "./ldg.js";
export type { FieldKind, GridHeader, LdgField } from "./ldg.js";
export { encodePng } from "./png.js";
export { Raster } from "./raster.js";
export { renderWidthCurve } from "./widthcurve.js";
export type { WidthCurveResult, WidthCurveStyle } from "./widthcurve.js";

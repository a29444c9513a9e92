export { FIGURES, figureIds, renderFigure } from "./figures.js";
export type { FigureSpec } from "./figures.js";
export { loadCsv } from "./csv.js";

/** Minimal deterministic SVG chart primitives (no DOM, plain strings). */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
  ticks(count: number): number[];
  log: boolean;
}

function makeTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.log = false;
  fn.ticks = (count: number) => makeTicks(d0, d1, count);
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs positive domain");
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const [r0, r1] = range;
  const fn = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.log = true;
  fn.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(l0); e <= Math.floor(l1); e++) out.push(Math.pow(10, e));
    return out.length > 0 ? out : [d0, d1];
  };
  return fn;
}

export function fmt(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1).replace("+", "");
  return Number(value.toPrecision(4)).toString();
}

const xml = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function text(x: number, y: number, content: string, opts = ""):
    string {
  return `<text x="${x.toFixed(1)}" y="${y.toFixed(1)}" ${opts}>${xml(content)}</text>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, style: string, extra = ""): string {
  return `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" y2="${y2.toFixed(1)}" ${style} ${extra}/>`;
}

export function polyline(points: Array<[number, number]>, style: string, extra = ""): string {
  const pts = points.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
  return `<polyline fill="none" points="${pts}" ${style} ${extra}/>`;
}

/** Step-after staircase through the points. */
export function staircase(points: Array<[number, number]>, style: string, extra = ""): string {
  const path: Array<[number, number]> = [];
  for (let i = 0; i < points.length; i++) {
    if (i > 0) path.push([points[i][0], points[i - 1][1]]);
    path.push(points[i]);
  }
  return polyline(path, style, extra);
}

export function band(xs: number[], los: number[], his: number[], fill: string): string {
  const upper = xs.map((x, i) => `${x.toFixed(1)},${his[i].toFixed(1)}`);
  const lower = xs.map((x, i) => `${x.toFixed(1)},${los[i].toFixed(1)}`).reverse();
  return `<polygon points="${upper.concat(lower).join(" ")}" fill="${fill}" stroke="none"/>`;
}

export function rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): string {
  return `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${w.toFixed(1)}" height="${h.toFixed(1)}" fill="${fill}" ${extra}/>`;
}

export function circle(x: number, y: number, r: number, fill: string, extra = ""): string {
  return `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="${r}" fill="${fill}" ${extra}/>`;
}

export interface Frame {
  x: Scale;
  y: Scale;
  left: number;
  top: number;
  width: number;
  height: number;
}

export function frame(
  left: number, top: number, width: number, height: number,
  x: Scale, y: Scale,
): Frame {
  return { x, y, left, top, width, height };
}

const AXIS = 'stroke="#333" stroke-width="1"';
const GRID = 'stroke="#ddd" stroke-width="0.5"';
const LABEL = 'font-family="sans-serif" font-size="10" fill="#333"';

export function axes(f: Frame, xLabel: string, yLabel: string, tickCount = 6): string {
  const parts: string[] = [];
  const bottom = f.top + f.height;
  const right = f.left + f.width;
  parts.push(line(f.left, bottom, right, bottom, AXIS));
  parts.push(line(f.left, f.top, f.left, bottom, AXIS));
  for (const t of f.x.ticks(tickCount)) {
    const px = f.x(t);
    if (px < f.left - 0.5 || px > right + 0.5) continue;
    parts.push(line(px, f.top, px, bottom, GRID));
    parts.push(text(px, bottom + 12, fmt(t), `${LABEL} text-anchor="middle"`));
  }
  for (const t of f.y.ticks(tickCount)) {
    const py = f.y(t);
    if (py < f.top - 0.5 || py > bottom + 0.5) continue;
    parts.push(line(f.left, py, right, py, GRID));
    parts.push(text(f.left - 4, py + 3, fmt(t), `${LABEL} text-anchor="end"`));
  }
  parts.push(text(f.left + f.width / 2, bottom + 26, xLabel, `${LABEL} text-anchor="middle"`));
  parts.push(
    `<text x="${(f.left - 32).toFixed(1)}" y="${(f.top + f.height / 2).toFixed(1)}" ${LABEL} ` +
    `text-anchor="middle" transform="rotate(-90 ${(f.left - 32).toFixed(1)} ${(f.top + f.height / 2).toFixed(1)})">${xml(yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function legend(entries: Array<[string, string]>, x: number, y: number): string {
  const parts: string[] = [];
  entries.forEach(([label, color], i) => {
    const yy = y + 14 * i;
    parts.push(line(x, yy - 3, x + 16, yy - 3, `stroke="${color}" stroke-width="2"`));
    parts.push(text(x + 20, yy, label, LABEL));
  });
  return parts.join("\n");
}

export function title(x: number, content: string): string {
  return text(x, 14, content, 'font-family="sans-serif" font-size="12" font-weight="bold" fill="#111" text-anchor="middle"');
}

export function document(width: number, height: number, body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`;
}

export const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#17becf", "#7f7f7f"];

/** Diverging blue-white-red color for v in [-max, +max]. */
export function diverging(value: number, max: number): string {
  const t = Math.max(-1, Math.min(1, max === 0 ? 0 : value / max));
  const mix = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  if (t < 0) {
    const u = 1 + t;
    return `rgb(${mix(33, 255, u)},${mix(102, 255, u)},${mix(172, 255, u)})`;
  }
  const u = t;
  return `rgb(${mix(255, 178, u)},${mix(255, 24, u)},${mix(255, 43, u)})`;
}

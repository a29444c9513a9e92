import { Row, distinct, loadCsv, num, str } from "./csv.js";
import {
  COLORS,
  band,
  circle,
  diverging,
  document,
  fmt,
  frame,
  axes,
  legend,
  line,
  linearScale,
  logScale,
  polyline,
  rect,
  staircase,
  text,
  title,
} from "./svg.js";

export interface FigureSpec {
  id: string;
  description: string;
  inputs: Record<string, string[]>; // input name -> required columns
  render(data: Record<string, Row[]>): string;
}

const METHOD_COLORS: Record<string, string> = {
  blind_reset: "#1f77b4",
  no_reset: "#d62728",
  measurement_reset: "#2ca02c",
};

const W = 640;
const H = 400;
const PLOT = { left: 60, top: 30, width: W - 90, height: H - 90 };

function extent(values: number[], pad = 0.05): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}

// ---------------------------------------------------------------------------

function renderCleanliness(data: Record<string, Row[]>): string {
  const rows = data.summary;
  const lengths = distinct(rows.map((r) => num(r, "L"))).sort((a, b) => a - b);
  const x = linearScale(extent(lengths, 0.02), [PLOT.left, PLOT.left + PLOT.width]);
  const y = linearScale([0, 1.02], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Ancilla cleanliness vs sequence length (95% CI bands)")];
  parts.push(axes(f, "sequence length L", "P(|0>)"));
  const backends = distinct(rows.map((r) => str(r, "backend")));
  const entries: Array<[string, string]> = [];
  backends.forEach((backend, bi) => {
    for (const method of Object.keys(METHOD_COLORS)) {
      const series = rows
        .filter((r) => str(r, "backend") === backend && str(r, "method") === method)
        .sort((a, b) => num(a, "L") - num(b, "L"));
      if (series.length === 0) continue;
      const color = METHOD_COLORS[method];
      const dash = bi > 0 ? `stroke-dasharray="${4 * bi},3"` : "";
      parts.push(band(
        series.map((r) => x(num(r, "L"))),
        series.map((r) => y(num(r, "ci_lo"))),
        series.map((r) => y(num(r, "ci_hi"))),
        color + "22",
      ));
      parts.push(polyline(
        series.map((r) => [x(num(r, "L")), y(num(r, "mean_p_zero"))]),
        `stroke="${color}" stroke-width="1.8" ${dash}`,
      ));
      entries.push([`${backend} ${method.replace("_", " ")}`, color]);
    }
  });
  parts.push(legend(entries, PLOT.left + 8, PLOT.top + 12));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

function renderLatency(data: Record<string, Row[]>): string {
  const points = data.points;
  const table = data.table;
  const times = points.flatMap((r) => [num(r, "t_blind"), num(r, "t_meas")]).filter((v) => v > 0);
  const lengths = points.map((r) => num(r, "length"));
  const x = linearScale([0, Math.max(...lengths)], [PLOT.left, PLOT.left + PLOT.width]);
  const y = logScale([Math.min(...times) / 2, Math.max(...times) * 2], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Reset latency vs sequence length")];
  parts.push(axes(f, "sequence length L", "latency [s]"));
  const profiles = distinct(points.map((r) => str(r, "profile")));
  const entries: Array<[string, string]> = [];
  profiles.forEach((profile, i) => {
    const color = COLORS[i % COLORS.length];
    const series = points
      .filter((r) => str(r, "profile") === profile && num(r, "length") > 0)
      .sort((a, b) => num(a, "length") - num(b, "length"));
    parts.push(polyline(
      series.map((r) => [x(num(r, "length")), y(num(r, "t_blind"))]),
      `stroke="${color}" stroke-width="1.8"`,
    ));
    const tMeas = num(series[0], "t_meas");
    parts.push(line(f.left, y(tMeas), f.left + f.width, y(tMeas),
      `stroke="${color}" stroke-width="1.2" stroke-dasharray="5,4"`));
    entries.push([profile, color]);
  });
  // crossover markers from the summary table
  table.forEach((r, i) => {
    const lStar = num(r, "l_star");
    const px = x(lStar);
    parts.push(line(px, f.top, px, f.top + f.height,
      'stroke="#555" stroke-width="1" stroke-dasharray="2,3"',
      `class="crossover" data-profile="${str(r, "profile")}" data-lstar="${lStar}"`));
    parts.push(text(px + 2, f.top + 12 + 11 * i, `L*=${lStar}`,
      'font-family="sans-serif" font-size="9" fill="#555"'));
  });
  parts.push(legend(entries, PLOT.left + 8, PLOT.top + 12));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

function renderNvqlink(data: Record<string, Row[]>): string {
  const rows = data.sweep;
  const xsUs = rows.map((r) => num(r, "t_ext") * 1e6);
  const x = linearScale(extent(xsUs, 0.02), [PLOT.left, PLOT.left + PLOT.width]);
  const stars = rows.map((r) => num(r, "l_star"));
  const y = linearScale([0, Math.max(...stars) * 1.08], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Crossover length vs external feedback latency")];
  parts.push(axes(f, "external feedback t_ext [us]", "crossover L*"));
  const profiles = distinct(rows.map((r) => str(r, "profile")));
  const entries: Array<[string, string]> = [];
  profiles.forEach((profile, i) => {
    const color = COLORS[i % COLORS.length];
    const series = rows
      .filter((r) => str(r, "profile") === profile)
      .sort((a, b) => num(a, "t_ext") - num(b, "t_ext"));
    parts.push(staircase(
      series.map((r) => [x(num(r, "t_ext") * 1e6), y(num(r, "l_star"))]),
      `stroke="${color}" stroke-width="1.8"`,
    ));
    entries.push([profile, color]);
  });
  parts.push(legend(entries, PLOT.left + 8, PLOT.top + 12));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

const ERROR_FLOOR = 1e-4; // zero estimates draw at the floor of the log axis

function renderDecoder(data: Record<string, Row[]>): string {
  const rows = data.curves;
  const cycles = rows.map((r) => num(r, "cycle"));
  const x = linearScale(extent(cycles, 0.03), [PLOT.left, PLOT.left + PLOT.width]);
  const values = rows.map((r) => Math.max(num(r, "logical_error"), ERROR_FLOOR));
  const y = logScale([ERROR_FLOOR / 2, Math.max(...values) * 2], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Logical error rate vs syndrome cycles (95% CI)")];
  parts.push(axes(f, "syndrome cycles", "logical error rate"));
  const keys = distinct(rows.map((r) => `${str(r, "policy")}|${num(r, "distance")}|${str(r, "decoder")}`));
  const entries: Array<[string, string]> = [];
  keys.forEach((key) => {
    const [policy, distance, decoder] = key.split("|");
    const color = METHOD_COLORS[policy] ?? "#555";
    const dash = distance === "5" ? 'stroke-dasharray="5,3"' : "";
    const opacity = decoder === "matching" ? 0.55 : 1.0;
    const series = rows
      .filter((r) => `${str(r, "policy")}|${num(r, "distance")}|${str(r, "decoder")}` === key)
      .sort((a, b) => num(a, "cycle") - num(b, "cycle"));
    const pts: Array<[number, number]> = series.map((r) => [
      x(num(r, "cycle")),
      y(Math.max(num(r, "logical_error"), ERROR_FLOOR)),
    ]);
    parts.push(polyline(pts, `stroke="${color}" stroke-width="1.6" opacity="${opacity}" ${dash}`));
    for (const r of series) {
      const px = x(num(r, "cycle"));
      parts.push(line(
        px, y(Math.max(num(r, "ci_lo"), ERROR_FLOOR)),
        px, y(Math.max(num(r, "ci_hi"), ERROR_FLOOR)),
        `stroke="${color}" stroke-width="1" opacity="${opacity}"`,
      ));
    }
    entries.push([`${policy.replace("_", " ")} d=${distance} (${decoder})`, color]);
  });
  parts.push(legend(entries, PLOT.left + 8, PLOT.top + 12));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

function renderLandscape(data: Record<string, Row[]>): string {
  const rows = [...data.summary].sort((a, b) => num(a, "L") - num(b, "L"));
  const lengths = rows.map((r) => num(r, "L"));
  const panelW = 230;
  const panelH = 250;
  const gap = 60;
  const width = 3 * panelW + 2 * gap + 90;
  const parts = [title(width / 2, "Scale-factor landscape statistics by sequence length")];

  const xScale = (left: number) => linearScale(extent(lengths, 0.05), [left, left + panelW]);

  // (a) optimal residual with CI band
  let left = 50;
  const eps = rows.flatMap((r) => [num(r, "eps_ci_lo"), num(r, "eps_ci_hi")]);
  const ya = linearScale(extent(eps, 0.1), [40 + panelH, 40]);
  const fa = frame(left, 40, panelW, panelH, xScale(left), ya);
  parts.push(axes(fa, "L", "optimal residual", 5));
  parts.push(band(
    rows.map((r) => fa.x(num(r, "L"))),
    rows.map((r) => ya(num(r, "eps_ci_lo"))),
    rows.map((r) => ya(num(r, "eps_ci_hi"))),
    "#1f77b422",
  ));
  parts.push(polyline(rows.map((r) => [fa.x(num(r, "L")), ya(num(r, "mean_epsilon"))]),
    'stroke="#1f77b4" stroke-width="1.8"'));

  // (b) curvature with sd bars
  left += panelW + gap;
  const kappaHi = rows.map((r) => num(r, "mean_kappa") + num(r, "sd_kappa"));
  const yb = linearScale([0, Math.max(...kappaHi) * 1.08], [40 + panelH, 40]);
  const fb = frame(left, 40, panelW, panelH, xScale(left), yb);
  parts.push(axes(fb, "L", "curvature", 5));
  parts.push(polyline(rows.map((r) => [fb.x(num(r, "L")), yb(num(r, "mean_kappa"))]),
    'stroke="#ff7f0e" stroke-width="1.8"'));
  for (const r of rows) {
    const px = fb.x(num(r, "L"));
    parts.push(line(px, yb(Math.max(num(r, "mean_kappa") - num(r, "sd_kappa"), 0)),
      px, yb(num(r, "mean_kappa") + num(r, "sd_kappa")),
      'stroke="#ff7f0e" stroke-width="1"'));
  }

  // (c) class fractions, stacked
  left += panelW + gap;
  const yc = linearScale([0, 1], [40 + panelH, 40]);
  const fc = frame(left, 40, panelW, panelH, xScale(left), yc);
  parts.push(axes(fc, "L", "class fraction", 5));
  const classes: Array<[string, string]> = [
    ["frac_sharp", "#d62728"],
    ["frac_moderate", "#ff7f0e"],
    ["frac_flat", "#2ca02c"],
    ["frac_multimodal", "#9467bd"],
  ];
  const barW = Math.min(18, panelW / (rows.length * 1.6));
  for (const r of rows) {
    const px = fc.x(num(r, "L")) - barW / 2;
    let acc = 0;
    for (const [column, color] of classes) {
      const value = num(r, column);
      if (value <= 0) continue;
      parts.push(rect(px, yc(acc + value), barW, yc(acc) - yc(acc + value), color));
      acc += value;
    }
  }
  parts.push(legend(classes.map(([c, color]) => [c.replace("frac_", ""), color] as [string, string]),
    left + panelW - 70, 52));

  return document(width, panelH + 110, parts.join("\n"));
}

// ---------------------------------------------------------------------------

function renderT1T2(data: Record<string, Row[]>): string {
  const rows = data.grid;
  const t1s = distinct(rows.map((r) => num(r, "t1"))).sort((a, b) => a - b);
  const t2s = distinct(rows.map((r) => num(r, "t2"))).sort((a, b) => a - b);
  const x = logScale([t1s[0] / 1.5, t1s[t1s.length - 1] * 1.5], [PLOT.left, PLOT.left + PLOT.width]);
  const y = logScale([t2s[0] / 1.5, t2s[t2s.length - 1] * 1.5], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Blind-vs-none cleanliness advantage over the coherence plane")];
  parts.push(axes(f, "T1 [s]", "T2 [s]", 5));
  const maxAbs = Math.max(...rows.map((r) => Math.abs(num(r, "advantage"))));
  const edge = (values: number[], i: number, scale: (v: number) => number) => {
    const lo = i === 0 ? values[0] / 1.4 : Math.sqrt(values[i - 1] * values[i]);
    const hi = i === values.length - 1 ? values[i] * 1.4 : Math.sqrt(values[i] * values[i + 1]);
    return [scale(lo), scale(hi)];
  };
  for (const r of rows) {
    const i = t1s.indexOf(num(r, "t1"));
    const j = t2s.indexOf(num(r, "t2"));
    const [x0, x1] = edge(t1s, i, x);
    const [y0, y1] = edge(t2s, j, y);
    const advantage = num(r, "advantage");
    parts.push(rect(
      Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0), Math.abs(y1 - y0),
      diverging(advantage, maxAbs),
      `data-advantage="${fmt(advantage)}" stroke="#fff" stroke-width="0.5"`,
    ));
  }
  parts.push(text(PLOT.left + PLOT.width - 4, PLOT.top + 12,
    `advantage range +-${fmt(maxAbs)}`, 'font-family="sans-serif" font-size="10" fill="#333" text-anchor="end"'));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

function renderEnvelope(data: Record<string, Row[]>): string {
  const rows = data.rows;
  const x = linearScale([0, 1.02], [PLOT.left, PLOT.left + PLOT.width]);
  const y = linearScale([0, 1.02], [PLOT.top + PLOT.height, PLOT.top]);
  const f = frame(PLOT.left, PLOT.top, PLOT.width, PLOT.height, x, y);
  const parts = [title(W / 2, "Measured cleanliness vs diagnostic envelope")];
  parts.push(axes(f, "envelope estimate", "measured P(|0>)"));
  parts.push(line(x(0), y(0), x(1), y(1), 'stroke="#999" stroke-width="1" stroke-dasharray="4,3"'));
  for (const r of rows) {
    const violation = str(r, "status") === "violation";
    parts.push(circle(
      x(num(r, "envelope")), y(num(r, "p_zero")), 2.4,
      violation ? "#d62728aa" : "#2ca02caa",
      `data-status="${str(r, "status")}"`,
    ));
  }
  parts.push(legend([["consistent", "#2ca02c"], ["violation", "#d62728"]], PLOT.left + 8, PLOT.top + 12));
  return document(W, H, parts.join("\n"));
}

// ---------------------------------------------------------------------------

export const FIGURES: Record<string, FigureSpec> = {
  cleanliness: {
    id: "cleanliness",
    description: "cleanliness vs sequence length with CI bands (per backend and method)",
    inputs: { summary: ["backend", "method", "L", "mean_p_zero", "ci_lo", "ci_hi"] },
    render: renderCleanliness,
  },
  latency: {
    id: "latency",
    description: "blind vs measurement latency lines with crossover markers",
    inputs: {
      points: ["profile", "length", "t_blind", "t_meas"],
      table: ["profile", "l_star"],
    },
    render: renderLatency,
  },
  nvqlink: {
    id: "nvqlink",
    description: "crossover length staircase vs external feedback latency",
    inputs: { sweep: ["profile", "t_ext", "l_star"] },
    render: renderNvqlink,
  },
  decoder: {
    id: "decoder",
    description: "logical error rate vs syndrome cycles per policy/distance/decoder",
    inputs: { curves: ["cycle", "policy", "distance", "decoder", "logical_error", "ci_lo", "ci_hi"] },
    render: renderDecoder,
  },
  landscape: {
    id: "landscape",
    description: "landscape panels: optimal residual, curvature, class fractions",
    inputs: {
      summary: ["L", "mean_epsilon", "eps_ci_lo", "eps_ci_hi", "mean_kappa", "sd_kappa",
                "frac_sharp", "frac_moderate", "frac_flat", "frac_multimodal"],
    },
    render: renderLandscape,
  },
  t1t2: {
    id: "t1t2",
    description: "heat map of blind-vs-none advantage over the T1/T2 plane",
    inputs: { grid: ["t1", "t2", "advantage"] },
    render: renderT1T2,
  },
  envelope: {
    id: "envelope",
    description: "measured cleanliness vs envelope scatter with violation flags",
    inputs: { rows: ["backend", "seed", "L", "p_zero", "envelope", "delta", "status"] },
    render: renderEnvelope,
  },
};

export function figureIds(): string[] {
  return Object.keys(FIGURES);
}

/** Render one figure from named CSV paths; errors name what is missing. */
export function renderFigure(id: string, inputPaths: Record<string, string>): string {
  const spec = FIGURES[id];
  if (!spec) {
    throw new Error(`unknown figure id "${id}"; valid ids: ${figureIds().join(", ")}`);
  }
  const data: Record<string, Row[]> = {};
  for (const [name, columns] of Object.entries(spec.inputs)) {
    const path = inputPaths[name];
    if (!path) {
      throw new Error(`figure "${id}" needs input "${name}" (given: ${Object.keys(inputPaths).join(", ") || "none"})`);
    }
    data[name] = loadCsv(path, columns);
  }
  return spec.render(data);
}

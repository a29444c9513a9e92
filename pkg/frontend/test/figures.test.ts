import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { figureIds, renderFigure } from "../src/figures.js";
import { run } from "../src/cli.js";

const DATA = join(__dirname, "..", "testdata");

const INPUTS: Record<string, Record<string, string>> = {
  cleanliness: { summary: join(DATA, "aggregate_pass1.csv") },
  latency: { points: join(DATA, "latency_points.csv"), table: join(DATA, "latency_table.csv") },
  nvqlink: { sweep: join(DATA, "ext_sweep.csv") },
  decoder: { curves: join(DATA, "qec_curves.csv") },
  landscape: { summary: join(DATA, "landscape_summary.csv") },
  t1t2: { grid: join(DATA, "t1t2_grid.csv") },
  envelope: { rows: join(DATA, "envelope_rows.csv") },
};

describe("figure rendering", () => {
  it("covers every registered figure id", () => {
    expect(Object.keys(INPUTS).sort()).toEqual(figureIds().sort());
  });

  for (const id of Object.keys(INPUTS)) {
    it(`renders ${id} from the reference CSVs`, () => {
      const svg = renderFigure(id, INPUTS[id]);
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
      expect(svg.length).toBeGreaterThan(1000);
    });

    it(`renders ${id} deterministically`, () => {
      expect(renderFigure(id, INPUTS[id])).toEqual(renderFigure(id, INPUTS[id]));
    });
  }

  it("places latency crossover markers at 12, 11, 1, 78", () => {
    const svg = renderFigure("latency", INPUTS.latency);
    const markers = [...svg.matchAll(/data-lstar="(\d+)"/g)].map((m) => Number(m[1]));
    expect(new Set(markers)).toEqual(new Set([12, 11, 1, 78]));
  });

  it("rejects unknown figure ids with the valid list", () => {
    expect(() => renderFigure("not-a-figure", {})).toThrowError(/unknown figure id/);
    expect(() => renderFigure("not-a-figure", {})).toThrowError(/cleanliness/);
  });

  it("names missing columns", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const broken = join(dir, "broken.csv");
    writeFileSync(broken, "profile,t_ext\nIQM,0\n");
    expect(() => renderFigure("nvqlink", { sweep: broken })).toThrowError(/missing column "l_star"/);
  });

  it("names missing inputs", () => {
    expect(() => renderFigure("latency", { points: INPUTS.latency.points })).toThrowError(/needs input "table"/);
  });

  it("renders degenerate zero-width CI bands from a single-seed summary", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const single = join(dir, "single.csv");
    writeFileSync(
      single,
      "backend,method,L,n,mean_p_zero,ci_lo,ci_hi,mean_p_x\n" +
        "IQM,blind_reset,4,1,0.88,0.88,0.88,0.5\n" +
        "IQM,blind_reset,8,1,0.80,0.80,0.80,0.5\n" +
        "IQM,no_reset,4,1,0.50,0.50,0.50,0.5\n" +
        "IQM,no_reset,8,1,0.49,0.49,0.49,0.5\n",
    );
    const svg = renderFigure("cleanliness", { summary: single });
    expect(svg).toContain("<polygon");
    expect(svg).toContain("<polyline");
  });

  it("flags envelope statuses on the scatter points", () => {
    const svg = renderFigure("envelope", INPUTS.envelope);
    expect(svg).toMatch(/data-status="(violation|consistent)"/);
  });
});

describe("command line", () => {
  it("writes an SVG file", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const out = join(dir, "nvqlink.svg");
    const code = run(["nvqlink", "--input", INPUTS.nvqlink.sweep, "--out", out]);
    expect(code).toBe(0);
  });

  it("accepts named inputs for multi-input figures", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const out = join(dir, "latency.svg");
    const code = run([
      "latency",
      "--input", `points=${INPUTS.latency.points}`,
      "--input", `table=${INPUTS.latency.table}`,
      "--out", out,
    ]);
    expect(code).toBe(0);
  });

  it("fails with usage on unknown figure ids", () => {
    const code = run(["nope", "--input", "x.csv", "--out", "y.svg"]);
    expect(code).toBe(1);
  });
});

#!/usr/bin/env node
import { writeFileSync } from "fs";
import { FIGURES, figureIds, renderFigure } from "./figures.js";

function usage(): string {
  const lines = ["usage: blindreset-figures <figure-id> --input [name=]path ... --out figure.svg", "", "figures:"];
  for (const id of figureIds()) {
    lines.push(`  ${id.padEnd(12)} ${FIGURES[id].description}`);
    lines.push(`  ${"".padEnd(12)} inputs: ${Object.keys(FIGURES[id].inputs).join(", ")}`);
  }
  return lines.join("\n");
}

export function run(argv: string[]): number {
  if (argv.length === 0 || argv[0] === "--help" || argv[0] === "-h") {
    console.log(usage());
    return argv.length === 0 ? 1 : 0;
  }
  const id = argv[0];
  const inputs: Record<string, string> = {};
  let out = "";
  for (let i = 1; i < argv.length; i++) {
    if (argv[i] === "--input") {
      const value = argv[++i];
      if (!value) {
        console.error("--input needs a value");
        return 1;
      }
      const eq = value.indexOf("=");
      if (eq >= 0) {
        inputs[value.slice(0, eq)] = value.slice(eq + 1);
      } else {
        // bare path: bind to the single declared input
        const spec = FIGURES[id];
        const names = spec ? Object.keys(spec.inputs) : [];
        if (names.length === 1) {
          inputs[names[0]] = value;
        } else {
          console.error(`figure "${id}" has inputs ${names.join(", ")}; use --input name=path`);
          return 1;
        }
      }
    } else if (argv[i] === "--out") {
      out = argv[++i] ?? "";
    } else {
      console.error(`unknown argument ${argv[i]}`);
      console.error(usage());
      return 1;
    }
  }
  if (!out) {
    console.error("--out is required");
    return 1;
  }
  try {
    const svg = renderFigure(id, inputs);
    writeFileSync(out, svg, "utf8");
    console.error(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    if ((err as Error).message.startsWith("unknown figure")) {
      console.error(usage());
    }
    return 1;
  }
}

import { fileURLToPath } from "url";
if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(run(process.argv.slice(2)));
}

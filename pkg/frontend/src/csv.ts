import { readFileSync } from "fs";
import Papa from "papaparse";

export type Row = Record<string, string | number | null>;

/** Parse a CSV file and verify the columns a figure depends on. */
export function loadCsv(path: string, requiredColumns: string[]): Row[] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Row>(text.trim(), { header: true, dynamicTyping: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${path}: ${first.message} (row ${first.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const column of requiredColumns) {
    if (!fields.includes(column)) {
      throw new Error(`missing column "${column}" in ${path}`);
    }
  }
  return parsed.data;
}

export function num(row: Row, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`non-numeric value ${JSON.stringify(row[column])} in column "${column}"`);
  }
  return value;
}

export function str(row: Row, column: string): string {
  return String(row[column]);
}

/** Distinct values in first-appearance order (stable across reruns). */
export function distinct<T>(values: T[]): T[] {
  const out: T[] = [];
  for (const value of values) {
    if (!out.includes(value)) out.push(value);
  }
  return out;
}

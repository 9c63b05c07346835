/** CSV reading against the versioned result schema (schema_version 1). */

import fs from "node:fs";

export const SCHEMA_VERSION = 1;

/** Column sets of the result files this package understands. */
export const KNOWN_SCHEMAS: Record<string, string[]> = {
  timeseries_mean: ["time", "quantity", "mean", "std", "haar_value"],
  page_curve: [
    "region_size",
    "f",
    "S1",
    "S1_std",
    "haar_S1",
    "S1_rescaled",
    "haar_rescaled",
  ],
  summary: [
    "quantity",
    "mean",
    "std",
    "stderr",
    "haar_value",
    "relative_difference",
  ],
};

export interface Table {
  header: string[];
  rows: string[][];
}

export function readCsv(path: string): Table {
  const text = fs.readFileSync(path, "utf-8");
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${path}`);
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(`ragged row in ${path}: ${row.join(",")}`);
    }
  }
  return { header, rows };
}

/** Read a CSV and check it matches one of the known schemas exactly. */
export function readSchemaCsv(path: string, schema: string): Table {
  const expected = KNOWN_SCHEMAS[schema];
  if (!expected) {
    throw new Error(`unknown schema '${schema}'`);
  }
  const table = readCsv(path);
  if (
    table.header.length !== expected.length ||
    !expected.every((c, i) => table.header[i] === c)
  ) {
    throw new Error(
      `${path}: header [${table.header.join(",")}] does not match the ` +
        `'${schema}' schema [${expected.join(",")}]`,
    );
  }
  if (table.rows.length === 0) {
    throw new Error(`${path}: no data rows`);
  }
  return table;
}

export function column(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`column '${name}' not in [${table.header.join(",")}]`);
  }
  return table.rows.map((r) => r[idx]);
}

export function numColumn(table: Table, name: string): number[] {
  return column(table, name).map((v) => {
    const x = Number(v);
    if (Number.isNaN(x)) {
      throw new Error(`non-numeric value '${v}' in column '${name}'`);
    }
    return x;
  });
}

/** The three figure operations. Each is a pure function of its input
 * files: no timestamps, no environment lookups, fixed styling. */

import { numColumn, readSchemaCsv, Table } from "./csv.js";
import {
  HEIGHT,
  MARGIN,
  PALETTE,
  Svg,
  WIDTH,
  makeScale,
} from "./svg.js";

export interface SeriesInput {
  label: string;
  path: string;
  /** chain length; required by relative-difference recipes */
  n?: number;
}

export interface Recipe {
  kind: "timeseries" | "page_curve" | "relative_difference";
  inputs: SeriesInput[];
  quantity?: string;
  baseline?: boolean;
  logScale?: boolean;
  title?: string;
}

export function validateRecipe(data: unknown): Recipe {
  if (typeof data !== "object" || data === null) {
    throw new Error("recipe must be an object");
  }
  const r = data as Record<string, unknown>;
  const kinds = ["timeseries", "page_curve", "relative_difference"];
  if (typeof r.kind !== "string" || !kinds.includes(r.kind)) {
    throw new Error(`recipe.kind must be one of ${kinds.join(", ")}`);
  }
  if (!Array.isArray(r.inputs) || r.inputs.length === 0) {
    throw new Error("recipe.inputs must be a non-empty array");
  }
  for (const inp of r.inputs) {
    if (typeof inp.label !== "string" || typeof inp.path !== "string") {
      throw new Error("each input needs string 'label' and 'path'");
    }
  }
  const allowed = new Set([
    "kind",
    "inputs",
    "quantity",
    "baseline",
    "logScale",
    "title",
  ]);
  for (const key of Object.keys(r)) {
    if (!allowed.has(key)) {
      throw new Error(`unknown recipe key '${key}'`);
    }
  }
  return r as unknown as Recipe;
}

const PLOT_X: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
const PLOT_Y: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];

function extent(values: number[], padFrac = 0.05): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = (hi - lo) * padFrac;
  return [lo - pad, hi + pad];
}

function filterQuantity(table: Table, quantity: string): Table {
  const qi = table.header.indexOf("quantity");
  const rows = table.rows.filter((r) => r[qi] === quantity);
  if (rows.length === 0) {
    const seen = [...new Set(table.rows.map((r) => r[qi]))];
    throw new Error(
      `quantity '${quantity}' not present (have: ${seen.join(", ")})`,
    );
  }
  return { header: table.header, rows };
}

/** Mean curve with a +-1 std band per input series (timeseries_mean.csv). */
export function plotTimeseries(recipe: Recipe): string {
  const quantity = recipe.quantity ?? "S1_avg";
  const series = recipe.inputs.map((inp) => {
    const table = filterQuantity(readSchemaCsv(inp.path, "timeseries_mean"), quantity);
    return {
      label: inp.label,
      t: numColumn(table, "time"),
      mean: numColumn(table, "mean"),
      std: numColumn(table, "std"),
      haar: numColumn(table, "haar_value")[0],
    };
  });

  const allT = series.flatMap((s) => s.t);
  const allY = series.flatMap((s) =>
    s.mean.flatMap((m, i) => [m - s.std[i], m + s.std[i]]),
  );
  if (recipe.baseline !== false) {
    allY.push(...series.map((s) => s.haar));
  }
  const xs = makeScale(extent(allT, 0), PLOT_X);
  const ys = makeScale(extent(allY), PLOT_Y);

  const svg = new Svg(recipe.title ?? quantity);
  svg.axes(xs, ys, "t", quantity);
  const legend: { label: string; color: string; dashed?: boolean }[] = [];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const px = s.t.map(xs);
    svg.band(px, s.mean.map((m, k) => ys(m - s.std[k])), s.mean.map((m, k) => ys(m + s.std[k])), color);
    svg.polyline(px, s.mean.map(ys), color);
    legend.push({ label: s.label, color });
  });
  if (recipe.baseline !== false) {
    const color = "#555555";
    svg.polyline(
      [PLOT_X[0], PLOT_X[1]],
      [ys(series[0].haar), ys(series[0].haar)],
      color,
      true,
    );
    legend.push({ label: "Haar", color, dashed: true });
  }
  svg.legend(legend);
  return svg.render();
}

/** Rescaled entropy vs subsystem fraction f with the 2f / 2(1-f) dashed
 * reference (page_curve.csv). */
export function plotPageCurve(recipe: Recipe): string {
  const series = recipe.inputs.map((inp) => {
    const table = readSchemaCsv(inp.path, "page_curve");
    const f = numColumn(table, "f");
    const y = numColumn(table, "S1_rescaled");
    const order = f.map((_, i) => i).sort((a, b) => f[a] - f[b]);
    return {
      label: inp.label,
      f: order.map((i) => f[i]),
      y: order.map((i) => y[i]),
    };
  });

  const xs = makeScale([0, 1], PLOT_X);
  const allY = series.flatMap((s) => s.y).concat([0, 1]);
  const ys = makeScale(extent(allY), PLOT_Y);

  const svg = new Svg(recipe.title ?? "Page curve");
  svg.axes(xs, ys, "f = R / N", "2 S1 / (N log 2)");
  const legend: { label: string; color: string; dashed?: boolean }[] = [];

  // dashed Haar reference 2 min(f, 1-f) on a fine fixed grid
  const refF: number[] = [];
  for (let i = 0; i <= 100; i++) refF.push(i / 100);
  svg.polyline(
    refF.map(xs),
    refF.map((f) => ys(pageReference(f))),
    "#555555",
    true,
  );
  legend.push({ label: "2 min(f, 1-f)", color: "#555555", dashed: true });

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    svg.polyline(s.f.map(xs), s.y.map(ys), color);
    svg.markers(s.f.map(xs), s.y.map(ys), color);
    legend.push({ label: s.label, color });
  });
  svg.legend(legend);
  return svg.render();
}

/** The dashed Page reference used by the page-curve figure. */
export function pageReference(f: number): number {
  return 2 * Math.min(f, 1 - f);
}

/** Long-time relative difference vs chain length N, one series per input
 * group (summary.csv files tagged with n). */
export function plotRelativeDifference(recipe: Recipe): string {
  const quantity = recipe.quantity ?? "S1_avg";
  const groups = new Map<string, { n: number; value: number }[]>();
  for (const inp of recipe.inputs) {
    if (typeof inp.n !== "number") {
      throw new Error(`input '${inp.label}' is missing its chain length n`);
    }
    const table = filterQuantity(readSchemaCsv(inp.path, "summary"), quantity);
    const value = numColumn(table, "relative_difference")[0];
    const group = groups.get(inp.label) ?? [];
    group.push({ n: inp.n, value });
    groups.set(inp.label, group);
  }

  const allN: number[] = [];
  const allV: number[] = [];
  for (const pts of groups.values()) {
    pts.sort((a, b) => a.n - b.n);
    for (const p of pts) {
      allN.push(p.n);
      allV.push(p.value);
    }
  }
  const log = recipe.logScale === true;
  if (log && allV.some((v) => v <= 0)) {
    throw new Error("log scale requires positive relative differences");
  }
  const xs = makeScale(extent(allN, 0.05), PLOT_X);
  const ys = log
    ? makeScale([Math.min(...allV) / 2, Math.max(...allV) * 2], PLOT_Y, true)
    : makeScale(extent(allV.concat([0])), PLOT_Y);

  const svg = new Svg(recipe.title ?? `relative difference: ${quantity}`);
  svg.axes(xs, ys, "N", "|A - A_Haar| / A_Haar");
  const legend: { label: string; color: string }[] = [];
  let i = 0;
  for (const [label, pts] of groups) {
    const color = PALETTE[i % PALETTE.length];
    svg.polyline(pts.map((p) => xs(p.n)), pts.map((p) => ys(p.value)), color);
    svg.markers(pts.map((p) => xs(p.n)), pts.map((p) => ys(p.value)), color);
    legend.push({ label, color });
    i += 1;
  }
  svg.legend(legend);
  return svg.render();
}

export function renderRecipe(recipe: Recipe): string {
  switch (recipe.kind) {
    case "timeseries":
      return plotTimeseries(recipe);
    case "page_curve":
      return plotPageCurve(recipe);
    case "relative_difference":
      return plotRelativeDifference(recipe);
  }
}

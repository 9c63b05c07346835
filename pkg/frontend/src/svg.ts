/** Minimal deterministic SVG builder: fixed canvas, fixed style, no
 * timestamps or random ids, numbers formatted to a fixed precision so the
 * same inputs always yield the same bytes. */

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { top: 40, right: 24, bottom: 48, left: 64 };

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
];

export function fmt(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`non-finite coordinate ${x}`);
  }
  // trim trailing zeros for stable, compact output
  return x.toFixed(3).replace(/\.?0+$/, "") || "0";
}

export interface Scale {
  (x: number): number;
  domain: [number, number];
  range: [number, number];
  log: boolean;
}

export function makeScale(
  domain: [number, number],
  range: [number, number],
  log = false,
): Scale {
  const [d0, d1] = log ? [Math.log10(domain[0]), Math.log10(domain[1])] : domain;
  const span = d1 - d0 || 1;
  const f = ((x: number) => {
    const v = log ? Math.log10(x) : x;
    return range[0] + ((v - d0) / span) * (range[1] - range[0]);
  }) as Scale;
  f.domain = domain;
  f.range = range;
  f.log = log;
  return f;
}

/** Round-number tick positions covering the domain. */
export function ticks(domain: [number, number], count = 6): number[] {
  const span = domain[1] - domain[0];
  if (span <= 0) return [domain[0]];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let v = Math.ceil(domain[0] / s) * s; v <= domain[1] + s * 1e-9; v += s) {
    out.push(Math.abs(v) < s * 1e-9 ? 0 : v);
  }
  return out;
}

export function logTicks(domain: [number, number]): number[] {
  const out: number[] = [];
  const lo = Math.floor(Math.log10(domain[0]));
  const hi = Math.ceil(Math.log10(domain[1]));
  for (let e = lo; e <= hi; e++) {
    const v = Math.pow(10, e);
    if (v >= domain[0] * 0.999 && v <= domain[1] * 1.001) out.push(v);
  }
  return out.length > 0 ? out : [domain[0], domain[1]];
}

function tickLabel(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3)) {
    return v.toExponential(0).replace("+", "");
  }
  return fmt(v);
}

export class Svg {
  private parts: string[] = [];

  constructor(title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
        `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
        `font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" ` +
        `font-size="16">${escapeXml(title)}</text>`,
    );
  }

  axes(xs: Scale, ys: Scale, xLabel: string, yLabel: string): void {
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    this.parts.push(
      `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#000"/>`,
      `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#000"/>`,
    );
    const xt = xs.log ? logTicks(xs.domain) : ticks(xs.domain);
    for (const v of xt) {
      const px = xs(v);
      this.parts.push(
        `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 5}" stroke="#000"/>`,
        `<text x="${fmt(px)}" y="${y0 + 18}" text-anchor="middle" ` +
          `font-size="11">${tickLabel(v)}</text>`,
      );
    }
    const yt = ys.log ? logTicks(ys.domain) : ticks(ys.domain);
    for (const v of yt) {
      const py = ys(v);
      this.parts.push(
        `<line x1="${x0 - 5}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#000"/>`,
        `<text x="${x0 - 8}" y="${fmt(py + 4)}" text-anchor="end" ` +
          `font-size="11">${tickLabel(v)}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" text-anchor="middle" ` +
        `font-size="13">${escapeXml(xLabel)}</text>`,
      `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" ` +
        `transform="rotate(-90 16 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`,
    );
  }

  polyline(px: number[], py: number[], color: string, dashed = false): void {
    const pts = px.map((x, i) => `${fmt(x)},${fmt(py[i])}`).join(" ");
    const dash = dashed ? ` stroke-dasharray="6 4"` : "";
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" ` +
        `stroke-width="1.5"${dash}/>`,
    );
  }

  band(px: number[], yLow: number[], yHigh: number[], color: string): void {
    const fwd = px.map((x, i) => `${fmt(x)},${fmt(yHigh[i])}`);
    const back = px
      .map((x, i) => `${fmt(x)},${fmt(yLow[i])}`)
      .reverse();
    this.parts.push(
      `<polygon points="${fwd.concat(back).join(" ")}" fill="${color}" ` +
        `fill-opacity="0.2" stroke="none"/>`,
    );
  }

  markers(px: number[], py: number[], color: string): void {
    for (let i = 0; i < px.length; i++) {
      this.parts.push(
        `<circle cx="${fmt(px[i])}" cy="${fmt(py[i])}" r="3" fill="${color}"/>`,
      );
    }
  }

  legend(entries: { label: string; color: string; dashed?: boolean }[]): void {
    let y = MARGIN.top + 8;
    const x = WIDTH - MARGIN.right - 170;
    for (const e of entries) {
      const dash = e.dashed ? ` stroke-dasharray="6 4"` : "";
      this.parts.push(
        `<line x1="${x}" y1="${y}" x2="${x + 24}" y2="${y}" ` +
          `stroke="${e.color}" stroke-width="1.5"${dash}/>`,
        `<text x="${x + 30}" y="${y + 4}" font-size="12">${escapeXml(e.label)}</text>`,
      );
      y += 18;
    }
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

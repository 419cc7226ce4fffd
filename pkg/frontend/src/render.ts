import { SweepData, SweepRow, legendLabel } from "./schema.js";

export interface RenderOptions {
  width?: number;
  height?: number;
  /** Log-axis bounds for pdark; default from the data. */
  xMin?: number;
  xMax?: number;
  /** Linear-axis bounds for pmax; default [0, max(1.05, data max)]. */
  yMin?: number;
  yMax?: number;
  title?: string;
}

const COLORS = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf",
];

const MARGIN = { top: 40, right: 220, bottom: 50, left: 60 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0).replace("e-", "1e-").replace(/^1?1e/, "1e");
  }
  return String(Math.round(v * 1000) / 1000);
}

/**
 * Render a log-linear figure (pdark on a logarithmic abscissa, pmax on a
 * linear ordinate), one polyline per configuration, with a horizontal
 * guide at pmax = 1 marking where the bound stops constraining anything.
 */
export function renderSvg(data: SweepData, opts: RenderOptions = {}): string {
  const width = opts.width ?? 760;
  const height = opts.height ?? 460;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const all: SweepRow[] = [...data.series.values()].flat();
  const xMin = opts.xMin ?? Math.min(...all.map((r) => r.pdark));
  const xMax = opts.xMax ?? Math.max(...all.map((r) => r.pdark));
  const yMin = opts.yMin ?? 0;
  const yMax = opts.yMax ??
    Math.max(1.05, ...all.map((r) => r.pmax)) * 1.02;

  const lx0 = Math.log10(xMin);
  const lx1 = Math.log10(xMax);
  const sx = (p: number) =>
    MARGIN.left + ((Math.log10(p) - lx0) / Math.max(lx1 - lx0, 1e-12)) * plotW;
  const sy = (v: number) =>
    MARGIN.top + plotH - ((v - yMin) / Math.max(yMax - yMin, 1e-12)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}" ` +
    `font-family="sans-serif" font-size="12">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(
      `<text x="${MARGIN.left}" y="20" font-size="14">` +
      `${esc(opts.title)}</text>`);
  }

  // frame and x ticks at decades
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" ` +
    `height="${plotH}" fill="none" stroke="#333"/>`);
  for (let d = Math.ceil(lx0); d <= Math.floor(lx1); d += 1) {
    const x = sx(Math.pow(10, d));
    parts.push(
      `<line x1="${x.toFixed(2)}" y1="${MARGIN.top}" x2="${x.toFixed(2)}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#ddd"/>`);
    parts.push(
      `<text x="${x.toFixed(2)}" y="${MARGIN.top + plotH + 18}" ` +
      `text-anchor="middle">1e${d}</text>`);
  }
  const nY = 6;
  for (let i = 0; i <= nY; i += 1) {
    const v = yMin + ((yMax - yMin) * i) / nY;
    const y = sy(v);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y.toFixed(2)}" ` +
      `x2="${MARGIN.left + plotW}" y2="${y.toFixed(2)}" stroke="#eee"/>`);
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${(y + 4).toFixed(2)}" ` +
      `text-anchor="end">${fmtTick(v)}</text>`);
  }

  // uninformative-threshold guide
  if (yMin <= 1 && 1 <= yMax) {
    const y1 = sy(1).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y1}" x2="${MARGIN.left + plotW}" ` +
      `y2="${y1}" stroke="#888" stroke-dasharray="6 4" ` +
      `class="guide-uninformative"/>`);
    parts.push(
      `<text x="${MARGIN.left + plotW - 4}" y="${(sy(1) - 6).toFixed(2)}" ` +
      `text-anchor="end" fill="#888">no constraint above this line</text>`);
  }

  // axis labels
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 12}" ` +
    `text-anchor="middle">dark-count probability</text>`);
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">` +
    `maximum click probability</text>`);

  // one series per configuration, legend on the right
  let idx = 0;
  const names = [...data.series.keys()].sort();
  for (const name of names) {
    const rows = data.series.get(name)!;
    const color = COLORS[idx % COLORS.length];
    const pts = rows
      .map((r) => `${sx(r.pdark).toFixed(2)},${sy(r.pmax).toFixed(2)}`)
      .join(" ");
    if (rows.length > 1) {
      parts.push(
        `<polyline points="${pts}" fill="none" stroke="${color}" ` +
        `stroke-width="1.8" class="series" data-config="${esc(name)}"/>`);
    }
    for (const r of rows) {
      parts.push(
        `<circle cx="${sx(r.pdark).toFixed(2)}" cy="${sy(r.pmax).toFixed(2)}" ` +
        `r="2.4" fill="${color}" class="series-point" ` +
        `data-config="${esc(name)}"/>`);
    }
    const ly = MARGIN.top + 14 + idx * 18;
    parts.push(
      `<line x1="${width - MARGIN.right + 12}" y1="${ly - 4}" ` +
      `x2="${width - MARGIN.right + 34}" y2="${ly - 4}" ` +
      `stroke="${color}" stroke-width="1.8"/>`);
    parts.push(
      `<text x="${width - MARGIN.right + 40}" y="${ly}">` +
      `${esc(legendLabel(rows[0]))}</text>`);
    idx += 1;
  }

  if (data.excluded > 0) {
    const plural = data.excluded === 1 ? "point" : "points";
    parts.push(
      `<text x="${MARGIN.left}" y="${height - 12}" fill="#a00" ` +
      `class="excluded-note">${data.excluded} ${plural} excluded</text>`);
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Minimal hand-rolled SVG line charts: linear/log axes, dual y-axes,
 * legend, vertical markers.  No runtime dependencies.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: string; // stroke-dasharray
  axis?: "left" | "right";
}

export interface Marker {
  x: number;
  label: string;
  color?: string;
}

export interface ChartSpec {
  title: string;
  subtitle?: string;
  xLabel: string;
  yLabel: string;
  rightYLabel?: string;
  logX?: boolean;
  logY?: boolean;
  yMin?: number;
  yMax?: number;
  rightYMin?: number;
  rightYMax?: number;
  series: Series[];
  markers?: Marker[];
}

const W = 720;
const H = 420;
const ML = 64;
const MT = 44;
const MB = 52;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function logTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); e <= Math.floor(Math.log10(max) + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) {
    ticks.push(min, max);
  }
  return ticks;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(0).replace("e+", "e");
  return Number.isInteger(v) ? String(v) : String(Number(v.toPrecision(3)));
}

interface Scale {
  (v: number): number;
  ticks: number[];
}

function makeScale(
  values: number[],
  pixelLo: number,
  pixelHi: number,
  log: boolean,
  lo?: number,
  hi?: number
): Scale {
  let min = lo ?? Math.min(...values);
  let max = hi ?? Math.max(...values);
  if (log) {
    const positives = values.filter((v) => v > 0);
    min = lo ?? Math.min(...positives);
    max = hi ?? Math.max(...positives);
    const fn = ((v: number) =>
      pixelLo +
      ((Math.log10(v) - Math.log10(min)) / (Math.log10(max) - Math.log10(min) || 1)) *
        (pixelHi - pixelLo)) as Scale;
    fn.ticks = logTicks(min, max);
    return fn;
  }
  if (min === max) {
    min -= 1;
    max += 1;
  } else {
    const pad = (max - min) * 0.05;
    if (lo === undefined) min -= pad;
    if (hi === undefined) max += pad;
  }
  const fn = ((v: number) => pixelLo + ((v - min) / (max - min)) * (pixelHi - pixelLo)) as Scale;
  fn.ticks = niceTicks(min, max, 6);
  return fn;
}

export function renderChart(spec: ChartSpec): string {
  const left = spec.series.filter((s) => (s.axis ?? "left") === "left");
  const right = spec.series.filter((s) => s.axis === "right");
  const mr = right.length > 0 ? 64 : 24;
  const pw = W - ML - mr;
  const ph = H - MT - MB;

  const xs = spec.series.flatMap((s) => s.x);
  const xOf = makeScale(xs, ML, ML + pw, spec.logX ?? false);
  const yOf = makeScale(
    left.flatMap((s) => s.y),
    MT + ph,
    MT,
    spec.logY ?? false,
    spec.yMin,
    spec.yMax
  );
  const ryOf =
    right.length > 0
      ? makeScale(right.flatMap((s) => s.y), MT + ph, MT, false, spec.rightYMin, spec.rightYMax)
      : undefined;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#ffffff"/>\n`;
  s += `<text x="${ML}" y="20" font-size="13" font-weight="600" fill="#222">${esc(spec.title)}</text>\n`;
  if (spec.subtitle) {
    s += `<text x="${ML}" y="34" font-size="9" fill="#888">${esc(spec.subtitle)}</text>\n`;
  }
  s += `<defs><clipPath id="plot"><rect x="${ML}" y="${MT}" width="${pw}" height="${ph}"/></clipPath></defs>\n`;

  // grid + y ticks (left)
  for (const v of yOf.ticks) {
    const y = yOf(v);
    if (y < MT - 1 || y > MT + ph + 1) continue;
    s += `<line x1="${ML}" y1="${y.toFixed(1)}" x2="${ML + pw}" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.6"/>\n`;
    s += `<text x="${ML - 6}" y="${(y + 3).toFixed(1)}" text-anchor="end" font-size="9" fill="#555">${esc(fmtTick(v))}</text>\n`;
  }
  // x ticks
  for (const v of xOf.ticks) {
    const x = xOf(v);
    if (x < ML - 1 || x > ML + pw + 1) continue;
    s += `<line x1="${x.toFixed(1)}" y1="${MT + ph}" x2="${x.toFixed(1)}" y2="${MT + ph + 4}" stroke="#333" stroke-width="0.6"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${MT + ph + 16}" text-anchor="middle" font-size="9" fill="#555">${esc(fmtTick(v))}</text>\n`;
  }
  // right y ticks
  if (ryOf) {
    for (const v of ryOf.ticks) {
      const y = ryOf(v);
      if (y < MT - 1 || y > MT + ph + 1) continue;
      s += `<line x1="${ML + pw}" y1="${y.toFixed(1)}" x2="${ML + pw + 4}" y2="${y.toFixed(1)}" stroke="#333" stroke-width="0.6"/>\n`;
      s += `<text x="${ML + pw + 7}" y="${(y + 3).toFixed(1)}" text-anchor="start" font-size="9" fill="#555">${esc(fmtTick(v))}</text>\n`;
    }
  }

  // vertical markers
  for (const marker of spec.markers ?? []) {
    const x = xOf(marker.x);
    if (!(x >= ML && x <= ML + pw)) continue;
    const color = marker.color ?? "#9d4edd";
    s += `<line clip-path="url(#plot)" x1="${x.toFixed(1)}" y1="${MT}" x2="${x.toFixed(1)}" y2="${MT + ph}" stroke="${color}" stroke-width="0.9" stroke-dasharray="3,3" opacity="0.8"/>\n`;
    s += `<text x="${(x + 3).toFixed(1)}" y="${MT + 12}" font-size="8.5" fill="${color}">${esc(marker.label)}</text>\n`;
  }

  // data series (class="series" marks data polylines, distinct from axis lines)
  for (const sr of spec.series) {
    const scale = (sr.axis ?? "left") === "left" ? yOf : ryOf!;
    const pts = sr.x.map((x, i) => `${xOf(x).toFixed(2)},${scale(sr.y[i]).toFixed(2)}`).join(" ");
    s += `<polyline class="series" clip-path="url(#plot)" fill="none" stroke="${sr.color}" stroke-width="${sr.width ?? 1.6}"${sr.dash ? ` stroke-dasharray="${sr.dash}"` : ""} points="${pts}"/>\n`;
  }

  // frame + axis labels
  s += `<line x1="${ML}" y1="${MT}" x2="${ML}" y2="${MT + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `<line x1="${ML}" y1="${MT + ph}" x2="${ML + pw}" y2="${MT + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  if (ryOf) {
    s += `<line x1="${ML + pw}" y1="${MT}" x2="${ML + pw}" y2="${MT + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  }
  s += `<text x="${ML + pw / 2}" y="${H - 10}" text-anchor="middle" font-size="10" fill="#333">${esc(spec.xLabel)}${spec.logX ? " (log scale)" : ""}</text>\n`;
  s += `<text x="16" y="${MT + ph / 2}" text-anchor="middle" font-size="10" fill="#333" transform="rotate(-90,16,${MT + ph / 2})">${esc(spec.yLabel)}${spec.logY ? " (log scale)" : ""}</text>\n`;
  if (spec.rightYLabel && ryOf) {
    s += `<text x="${W - 12}" y="${MT + ph / 2}" text-anchor="middle" font-size="10" fill="#333" transform="rotate(90,${W - 12},${MT + ph / 2})">${esc(spec.rightYLabel)}</text>\n`;
  }

  // legend
  const lx = ML + 10;
  let ly = MT + 12;
  s += `<rect x="${lx - 6}" y="${ly - 10}" width="${Math.max(...spec.series.map((sr) => sr.label.length)) * 5.4 + 34}" height="${spec.series.length * 14 + 6}" rx="3" fill="#ffffff" fill-opacity="0.88" stroke="#ddd" stroke-width="0.5"/>\n`;
  for (const sr of spec.series) {
    s += `<line x1="${lx}" y1="${ly}" x2="${lx + 16}" y2="${ly}" stroke="${sr.color}" stroke-width="${sr.width ?? 1.6}"${sr.dash ? ` stroke-dasharray="${sr.dash}"` : ""}/>\n`;
    s += `<text x="${lx + 21}" y="${ly + 3}" font-size="9" fill="#333">${esc(sr.label)}</text>\n`;
    ly += 14;
  }

  s += "</svg>\n";
  return s;
}

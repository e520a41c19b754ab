/** Per-kind chart assembly from validated CSV rows. */

import type { Kind } from "./csv.js";
import { renderChart, type ChartSpec, type Series } from "./svg.js";

export interface AxisOptions {
  logX?: boolean; // overrides the kind's default when set
  title?: string;
}

const COL = {
  blue: "#4361ee",
  red: "#e63946",
  green: "#2d6a4f",
  gray: "#666666",
  orange: "#e07a1f",
};

function column(rows: number[][], j: number): number[] {
  return rows.map((r) => r[j]);
}

function fig1Chart(rows: number[][], opts: AxisOptions): ChartSpec {
  const delta = column(rows, 0);
  const series: Series[] = [
    { label: "subgaussian width", x: delta, y: column(rows, 1), color: COL.blue },
    { label: "chebyshev width", x: delta, y: column(rows, 2), color: COL.red },
    { label: "width ratio (cheb/subg)", x: delta, y: column(rows, 3), color: COL.green, dash: "5,3" },
  ];
  return {
    title: opts.title ?? "Confidence interval widths vs error threshold",
    subtitle: `unit scale (sigma=1, N=1), ${rows.length} grid points`,
    xLabel: "delta",
    yLabel: "half-width / ratio",
    logX: opts.logX ?? true,
    logY: true,
    series,
  };
}

function coverageChart(rows: number[][], opts: AxisOptions): ChartSpec {
  const x = column(rows, 0);
  const coverage = column(rows, 1);
  const stderr = column(rows, 2);
  const series: Series[] = [
    { label: "empirical coverage", x, y: coverage, color: COL.blue },
    { label: "+3 SE", x, y: coverage.map((c, i) => c + 3 * stderr[i]), color: COL.blue, width: 0.8, dash: "2,3" },
    { label: "-3 SE", x, y: coverage.map((c, i) => c - 3 * stderr[i]), color: COL.blue, width: 0.8, dash: "2,3" },
    { label: "nominal level", x, y: column(rows, 3), color: COL.gray, dash: "6,3" },
  ];
  return {
    title: opts.title ?? "Interval coverage",
    subtitle: `${rows.length} configurations`,
    xLabel: "K or delta",
    yLabel: "coverage frequency",
    logX: opts.logX ?? false,
    series,
  };
}

function unionChart(rows: number[][], opts: AxisOptions): ChartSpec {
  const x = column(rows, 0);
  const series: Series[] = [
    { label: "joint failure frequency", x, y: column(rows, 1), color: COL.red },
    { label: "union budget min(1, k*delta)", x, y: column(rows, 3), color: COL.gray, dash: "6,3" },
  ];
  const firstVacuous = rows.find((r) => r[4] !== 0);
  return {
    title: opts.title ?? "Union-bound blowup over hypothesis prefixes",
    subtitle: `${rows.length} prefix sizes`,
    xLabel: "number of hypotheses",
    yLabel: "joint failure frequency",
    logX: opts.logX ?? true,
    yMin: 0,
    series,
    markers: firstVacuous
      ? [{ x: firstVacuous[0], label: "vacuous from here (k >= 1/delta)", color: COL.orange }]
      : [],
  };
}

function gibbsChart(rows: number[][], opts: AxisOptions): ChartSpec {
  const gamma = column(rows, 0);
  const series: Series[] = [
    { label: "true risk, empirical-mean Gibbs", x: gamma, y: column(rows, 1), color: COL.red },
    { label: "true risk, median-of-means Gibbs", x: gamma, y: column(rows, 2), color: COL.blue },
    { label: "MoM win fraction", x: gamma, y: column(rows, 3), color: COL.green, dash: "4,3", axis: "right" },
  ];
  return {
    title: opts.title ?? "Gibbs posteriors: empirical-mean vs median-of-means risk estimates",
    subtitle: `${rows.length} gamma grid points`,
    xLabel: "gamma",
    yLabel: "aggregated true risk",
    rightYLabel: "win fraction",
    rightYMin: 0,
    rightYMax: 1.05,
    logX: opts.logX ?? true,
    series,
  };
}

const BUILDERS: Record<Kind, (rows: number[][], opts: AxisOptions) => ChartSpec> = {
  fig1: fig1Chart,
  coverage: coverageChart,
  union: unionChart,
  gibbs: gibbsChart,
};

export function buildChart(kind: Kind, rows: number[][], opts: AxisOptions = {}): string {
  return renderChart(BUILDERS[kind](rows, opts));
}

#!/usr/bin/env node
/**
 * plotviz — render experiment CSV artifacts into SVG figures.
 *
 * Usage:
 *   plotviz render --kind <fig1|coverage|union|gibbs> --in data.csv --out figure.svg
 *                  [--logx | --linear-x] [--title "..."]
 *
 * The input must match the declared schema header for its kind exactly.
 * Exit codes: 0 success, 2 usage/schema error, 3 I/O error.
 */

import { readFileSync, renameSync, writeFileSync } from "node:fs";
import { resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { buildChart, type AxisOptions } from "./charts.js";
import { KIND_HEADERS, SchemaError, isKind, parseCsv } from "./csv.js";

const USAGE =
  'usage: plotviz render --kind <fig1|coverage|union|gibbs> --in CSV --out SVG [--logx | --linear-x] [--title "..."]';

interface Args {
  kind: string;
  input: string;
  output: string;
  options: AxisOptions;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new SchemaError(`unknown command "${argv[0] ?? ""}"\n${USAGE}`);
  }
  let kind = "";
  let input = "";
  let output = "";
  const options: AxisOptions = {};
  for (let i = 1; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      const value = argv[++i];
      if (value === undefined) throw new SchemaError(`missing value for ${flag}\n${USAGE}`);
      return value;
    };
    switch (flag) {
      case "--kind":
        kind = next();
        break;
      case "--in":
        input = next();
        break;
      case "--out":
        output = next();
        break;
      case "--title":
        options.title = next();
        break;
      case "--logx":
        options.logX = true;
        break;
      case "--linear-x":
        options.logX = false;
        break;
      default:
        throw new SchemaError(`unknown flag "${flag}"\n${USAGE}`);
    }
  }
  if (!kind || !input || !output) {
    throw new SchemaError(`--kind, --in and --out are required\n${USAGE}`);
  }
  return { kind, input, output, options };
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
    if (!isKind(args.kind)) {
      throw new SchemaError(
        `unknown kind "${args.kind}"; expected one of ${Object.keys(KIND_HEADERS).join(", ")}`
      );
    }
  } catch (err) {
    console.error(`plotviz: ${(err as Error).message}`);
    return 2;
  }

  let text: string;
  try {
    text = readFileSync(args.input, "utf-8");
  } catch (err) {
    console.error(`plotviz: cannot read ${args.input}: ${(err as Error).message}`);
    return 3;
  }

  let svg: string;
  try {
    const rows = parseCsv(text, args.kind);
    svg = buildChart(args.kind, rows, args.options);
  } catch (err) {
    console.error(`plotviz: ${(err as Error).message}`);
    return 2;
  }

  try {
    const tmp = `${args.output}.tmp`;
    writeFileSync(tmp, svg);
    renameSync(tmp, args.output);
  } catch (err) {
    console.error(`plotviz: cannot write ${args.output}: ${(err as Error).message}`);
    return 3;
  }
  console.error(`plotviz: wrote ${args.output}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && fileURLToPath(import.meta.url) === resolve(process.argv[1]);
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}

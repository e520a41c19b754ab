/**
 * Strict CSV reading for the experiment artifacts.
 *
 * Every plot kind declares an exact header; anything else is rejected so a
 * figure can never silently render the wrong columns.
 */

export class SchemaError extends Error {}

export type Kind = "fig1" | "coverage" | "union" | "gibbs";

export const KIND_HEADERS: Record<Kind, string> = {
  fig1: "delta,width_subgaussian,width_chebyshev,ratio",
  coverage: "K_or_delta,coverage,stderr,nominal",
  union: "k_hyp,joint_failure,stderr,union_failure_bound,vacuous",
  gibbs: "gamma,risk_emp,risk_mom,win_fraction",
};

export function isKind(value: string): value is Kind {
  return value in KIND_HEADERS;
}

/** Parse a CSV body against the exact header declared for `kind`. */
export function parseCsv(text: string, kind: Kind): number[][] {
  const expected = KIND_HEADERS[kind];
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== expected) {
    throw new SchemaError(
      `header mismatch for kind "${kind}": expected "${expected}", got "${lines[0] ?? "<empty file>"}"`
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`empty CSV body: no data rows under "${expected}"`);
  }
  const width = expected.split(",").length;
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== width) {
      throw new SchemaError(`row ${i + 2}: expected ${width} columns, got ${cells.length}`);
    }
    return cells.map((cell, j) => {
      const value = Number(cell);
      if (!Number.isFinite(value)) {
        throw new SchemaError(`row ${i + 2}, column ${j + 1}: not a finite number: "${cell}"`);
      }
      return value;
    });
  });
}

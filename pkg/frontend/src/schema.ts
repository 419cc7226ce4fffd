// papaparse ships CommonJS; a default import is the only form that works
// both under node's ESM loader and under vitest.
import Papa from "papaparse";

/** Exact column set produced by the sweep CLI. */
export const REQUIRED_COLUMNS = [
  "config_id", "N", "dphi", "aspect", "phase", "dl_tilde", "dL_tilde",
  "pdark", "pmax", "zeta_opt", "e_opt", "informative", "w2_zero",
  "eta_max", "error_estimate", "status",
] as const;

export interface SweepRow {
  configId: string;
  n: number;
  dphi: number;
  aspect: number;
  phase: number;
  pdark: number;
  pmax: number;
  status: string;
}

export interface SweepData {
  /** Rows with status "ok", grouped by config_id, sorted by pdark. */
  series: Map<string, SweepRow[]>;
  /** Number of rows excluded because their status was not "ok". */
  excluded: number;
}

export class SchemaError extends Error {}

function toNumber(raw: string, column: string, line: number): number {
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new SchemaError(
      `row ${line}: column ${column} is not a finite number: "${raw}"`);
  }
  return v;
}

/** Parse and validate a sweep CSV; separates failed rows from usable ones. */
export function parseSweepCsv(text: string): SweepData {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`CSV parse error at row ${e.row}: ${e.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of REQUIRED_COLUMNS) {
    if (!fields.includes(col)) {
      throw new SchemaError(`missing required column: ${col}`);
    }
  }
  if (parsed.data.length === 0) {
    throw new SchemaError("CSV contains no data rows");
  }

  const series = new Map<string, SweepRow[]>();
  let excluded = 0;
  parsed.data.forEach((raw, i) => {
    const status = raw.status ?? "";
    if (status !== "ok") {
      excluded += 1;
      return;
    }
    const row: SweepRow = {
      configId: raw.config_id,
      n: toNumber(raw.N, "N", i + 2),
      dphi: toNumber(raw.dphi, "dphi", i + 2),
      aspect: toNumber(raw.aspect, "aspect", i + 2),
      phase: toNumber(raw.phase, "phase", i + 2),
      pdark: toNumber(raw.pdark, "pdark", i + 2),
      pmax: toNumber(raw.pmax, "pmax", i + 2),
      status,
    };
    if (row.pdark <= 0) {
      throw new SchemaError(
        `row ${i + 2}: pdark must be positive for a log axis`);
    }
    const list = series.get(row.configId) ?? [];
    list.push(row);
    series.set(row.configId, list);
  });
  for (const rows of series.values()) {
    rows.sort((a, b) => a.pdark - b.pdark);
  }
  if (series.size === 0) {
    throw new SchemaError("no usable rows (every row has a failure status)");
  }
  return { series, excluded };
}

/** Human-readable legend label from the row's configuration echo. */
export function legendLabel(row: SweepRow): string {
  const phase = row.phase === 0 ? "0" : row.phase.toFixed(3);
  return `N=${row.n}, Δφ=${row.dphi}, a=${row.aspect}, ` +
    `phase=${phase}`;
}

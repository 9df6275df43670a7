/**
 * Reader for the primary tool's CSV artifacts: '#' comment header with
 * the resolved configuration, then a column row, then numeric rows.
 */
import { readFileSync } from "node:fs";

export interface Table {
  config: Map<string, string>;
  columns: string[];
  rows: number[][];
}

export class SchemaError extends Error {}

export function parseCsvText(text: string): Table {
  const config = new Map<string, string>();
  const lines = text.split(/\r?\n/);
  let columns: string[] | null = null;
  const rows: number[][] = [];
  for (const line of lines) {
    if (line === "") continue;
    if (line.startsWith("#")) {
      const m = line.match(/^#\s*config:\s*([^=]+)=(.*)$/);
      if (m) config.set(m[1].trim(), m[2].trim());
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new SchemaError(
        `row has ${parts.length} fields, header has ${columns.length}: ${line}`,
      );
    }
    rows.push(parts.map(Number));
  }
  if (columns === null) {
    throw new SchemaError("no column header found (empty file?)");
  }
  return { config, columns, rows };
}

export function readCsv(path: string): Table {
  return parseCsvText(readFileSync(path, "utf8"));
}

/** Require the named columns; the error carries the full column diff. */
export function requireColumns(table: Table, required: string[], kind: string): void {
  const missing = required.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `input does not match the ${kind} schema\n` +
        `  missing columns: ${missing.join(", ")}\n` +
        `  found columns:   ${table.columns.join(", ")}`,
    );
  }
  if (table.rows.length === 0) {
    throw new SchemaError(`input has a valid ${kind} header but no data rows`);
  }
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) throw new SchemaError(`column ${name} not present`);
  return table.rows.map((r) => r[idx]);
}

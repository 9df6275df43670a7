/**
 * One figure per invocation:
 *
 *   node dist/cli.js --input <csv> --kind <kind> --output <png>
 *
 * Inputs are never modified.  Schema mismatches (and empty inputs)
 * exit nonzero with the column diff on stderr and write nothing.
 */
import { writeFileSync } from "node:fs";

import { readCsv, SchemaError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./figures.js";

export function main(argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      process.stderr.write(`error: expected --input/--kind/--output pairs, got ${key}\n`);
      return 2;
    }
    args.set(key.slice(2), argv[i + 1]);
  }
  const input = args.get("input");
  const kind = args.get("kind");
  const output = args.get("output");
  if (!input || !kind || !output) {
    process.stderr.write("usage: cli --input data.csv --kind <kind> --output fig.png\n");
    process.stderr.write(`kinds: ${FIGURE_KINDS.join(", ")}\n`);
    return 2;
  }
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    process.stderr.write(`error: unknown kind ${kind}; kinds: ${FIGURE_KINDS.join(", ")}\n`);
    return 2;
  }
  try {
    const table = readCsv(input);
    const canvas = renderFigure(kind as FigureKind, table);
    writeFileSync(output, canvas.toPng());
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  process.stdout.write(`${output}\n`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}

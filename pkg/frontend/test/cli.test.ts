import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";

const GOLDEN_DIR = join(__dirname, "..", "goldens");

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "flfig-"));
}

describe("figure cli", () => {
  it("renders a figure and reports the output path", () => {
    const dir = tmp();
    const out = join(dir, "spec.png");
    const code = main([
      "--input", join(GOLDEN_DIR, "modes.modes.csv"),
      "--kind", "spectrum",
      "--output", out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out).readUInt32BE(16)).toBe(640);
  });

  it("exits nonzero on schema mismatch and writes nothing", () => {
    const dir = tmp();
    const out = join(dir, "bad.png");
    const code = main([
      "--input", join(GOLDEN_DIR, "modes.modes.csv"),
      "--kind", "landauer_heatmap",
      "--output", out,
    ]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("exits nonzero on an empty csv and writes nothing", () => {
    const dir = tmp();
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "n,k,omega,norm\n");
    const out = join(dir, "empty.png");
    const code = main(["--input", empty, "--kind", "spectrum", "--output", out]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("rejects unknown kinds and missing flags", () => {
    expect(main(["--input", "x.csv", "--kind", "pie", "--output", "y.png"])).toBe(2);
    expect(main(["--input", "x.csv"])).toBe(2);
  });
});

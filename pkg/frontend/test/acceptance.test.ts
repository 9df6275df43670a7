/**
 * Release gate for the figure renderer: all four kinds render from the
 * checked-in golden CSVs, and the heatmap's zero-margin contour stays
 * within one grid cell of the thermal-equilibrium diagonal.
 */
import { describe, expect, it } from "vitest";

import { FIGURE_KINDS, heatGrid, renderFigure, zeroMarginContour } from "../src/figures.js";
import { goldenTable } from "./goldens.js";

describe("acceptance", () => {
  it("criterion 10: four kinds render; contour hugs the diagonal", () => {
    for (const kind of FIGURE_KINDS) {
      const png = renderFigure(kind, goldenTable(kind)).toPng();
      expect(png.length).toBeGreaterThan(1000);
    }
    const grid = heatGrid(goldenTable("landauer_heatmap"));
    const cell = grid.tds[1] - grid.tds[0];
    let worst = 0;
    for (const { tr, td } of zeroMarginContour(grid)) {
      worst = Math.max(worst, Math.abs(td - tr));
    }
    expect(worst).toBeLessThanOrEqual(cell * (1 + 1e-12));
    console.log(
      `[PASS] criterion 10 (figures): 4 kinds rendered, contour within ` +
        `${(worst / cell).toFixed(2)} cells of T_D=T_R`,
    );
  });
});

import { describe, expect, it } from "vitest";

import type { IssueCategory } from "../src/api.js";
import { drawMarker, legendEntries, MARKER_STYLES } from "../src/markers.js";
import { RecordingContext } from "./support.js";

const CATEGORIES = Object.keys(MARKER_STYLES) as IssueCategory[];

describe("marker styles", () => {
  it("gives each of the four categories its own shape and its own color", () => {
    expect(CATEGORIES).toHaveLength(4);
    const shapes = new Set(CATEGORIES.map((c) => MARKER_STYLES[c].shape));
    const colors = new Set(CATEGORIES.map((c) => MARKER_STYLES[c].color));
    expect(shapes.size).toBe(4);
    expect(colors.size).toBe(4);
  });

  it("legend covers every category with a human label", () => {
    const entries = legendEntries();
    expect(entries.map((e) => e.category).sort()).toEqual([...CATEGORIES].sort());
    for (const entry of entries) {
      expect(entry.label).not.toBe("");
      expect(entry.label).not.toBe(entry.category); // not the raw enum value
    }
  });
});

describe("drawMarker", () => {
  it("fills active markers in the category color", () => {
    const ctx = new RecordingContext();
    drawMarker(ctx, {
      category: "RiskyItem",
      status: "active",
      selected: false,
      x: 10,
      y: 10,
    });
    expect(ctx.fills).toHaveLength(1);
    expect(ctx.fills[0]!.style).toBe(MARKER_STYLES.RiskyItem.color);
    expect(ctx.fills[0]!.alpha).toBe(1);
  });

  it("draws dismissed markers hollow and faded, same shape", () => {
    const ctx = new RecordingContext();
    drawMarker(ctx, {
      category: "ObjectPosition",
      status: "dismissed",
      selected: false,
      x: 0,
      y: 0,
    });
    expect(ctx.fills).toHaveLength(0); // outline only
    expect(ctx.strokes).toHaveLength(1);
    expect(ctx.strokes[0]!.style).toBe(MARKER_STYLES.ObjectPosition.color);
    expect(ctx.strokes[0]!.alpha).toBeLessThan(1);
  });

  it("rings confirmed markers with a second outline", () => {
    const ctx = new RecordingContext();
    drawMarker(ctx, {
      category: "LackOfAssistiveItem",
      status: "confirmed",
      selected: false,
      x: 0,
      y: 0,
    });
    expect(ctx.fills).toHaveLength(1);
    // the fill's white edge plus the outer ring
    expect(ctx.strokes).toHaveLength(2);
    expect(ctx.strokes[1]!.style).toBe(MARKER_STYLES.LackOfAssistiveItem.color);
  });

  it("adds a selection halo on top of any status", () => {
    const ctx = new RecordingContext();
    drawMarker(ctx, {
      category: "ObjectDimension",
      status: "dismissed",
      selected: true,
      x: 5,
      y: 5,
    });
    const halo = ctx.strokes[ctx.strokes.length - 1]!;
    expect(halo.path[0]!.kind).toBe("arc");
    expect(halo.alpha).toBe(1);
  });
});

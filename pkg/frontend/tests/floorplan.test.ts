import { afterEach, beforeEach, describe, expect, it } from "vitest";

import type { Scene } from "../src/api.js";
import { FloorPlan } from "../src/floorplan.js";
import { installCanvasStub, RecordingContext, sampleDoc } from "./support.js";

const WALL_BLACK = "#111111";
const DOOR_YELLOW = "#eab308";

let stub: ReturnType<typeof installCanvasStub>;

beforeEach(() => {
  stub = installCanvasStub();
});

afterEach(() => {
  stub.restore();
});

function makePlan(): { plan: FloorPlan; ctx: RecordingContext } {
  const holder = document.createElement("div");
  document.body.appendChild(holder);
  const plan = new FloorPlan(holder);
  plan.resize(800, 600);
  return { plan, ctx: stub.contexts[stub.contexts.length - 1]! };
}

function segmentStrokes(ctx: RecordingContext, style: string) {
  return ctx.strokes.filter(
    (s) => s.style === style && s.path.some((p) => p.kind === "lineTo"),
  );
}

describe("floor plan rendering", () => {
  it("draws walls black, the door yellow, and the opening dashed", () => {
    const { plan, ctx } = makePlan();
    const { scene, issues } = sampleDoc();
    plan.setData(scene, issues, null);

    const walls = segmentStrokes(ctx, WALL_BLACK).filter((s) => s.dash.length === 0);
    expect(walls.length).toBeGreaterThanOrEqual(scene.walls.length);

    expect(segmentStrokes(ctx, DOOR_YELLOW)).toHaveLength(1);

    const dashed = ctx.strokes.filter((s) => s.dash.length > 0);
    expect(dashed).toHaveLength(1); // the single opening
    expect(dashed[0]!.style).toBe(WALL_BLACK);
  });

  it("puts the yellow door sub-segment on its wall, between offset and offset+width", () => {
    const { plan, ctx } = makePlan();
    const { scene } = sampleDoc();
    plan.setData(scene, [], null);

    // wall w0 runs (0,0)->(5,0); the door spans 1.0..1.9 along it
    const door = segmentStrokes(ctx, DOOR_YELLOW)[0]!;
    const move = door.path.find((p) => p.kind === "moveTo")!;
    const line = door.path.find((p) => p.kind === "lineTo")!;
    const [x0, y0] = plan.toScreen(1.0, 0);
    const [x1, y1] = plan.toScreen(1.9, 0);
    expect(move.args[0]).toBeCloseTo(x0, 6);
    expect(move.args[1]).toBeCloseTo(y0, 6);
    expect(line.args[0]).toBeCloseTo(x1, 6);
    expect(line.args[1]).toBeCloseTo(y1, 6);
  });

  it("labels objects and outlines their footprint", () => {
    const { plan, ctx } = makePlan();
    const { scene } = sampleDoc();
    plan.setData(scene, [], null);
    expect(ctx.texts).toContain("table");
    expect(ctx.strokes.some((s) => s.path[0]?.kind === "strokeRect")).toBe(true);
  });

  it("draws one marker per issue and counts them by category and status", () => {
    const { plan } = makePlan();
    const { scene, issues } = sampleDoc();
    issues[0]!.status = "dismissed";
    plan.setData(scene, issues, null);

    expect(plan.stats.markers).toBe(issues.length);
    expect(plan.stats.byCategory).toEqual({
      ObjectDimension: 2,
      ObjectPosition: 1,
      RiskyItem: 1,
      LackOfAssistiveItem: 1,
    });
    expect(plan.stats.byStatus).toEqual({ active: 4, dismissed: 1 });
  });

  it("hit-tests markers from canvas coordinates", () => {
    const { plan } = makePlan();
    const { scene, issues } = sampleDoc();
    plan.setData(scene, issues, null);

    const knife = issues.find((i) => i.category === "RiskyItem")!;
    const [x, y] = plan.toScreen(knife.anchor[0]!, knife.anchor[1]!);
    expect(plan.hitTest(x + 3, y - 2)).toBe(knife.id);
    expect(plan.hitTest(x + 200, y + 200)).toBeNull();
  });

  it("shows an origin crosshair for an empty scene instead of a blank canvas", () => {
    const { plan, ctx } = makePlan();
    const empty: Scene = { id: "empty", meta: {}, walls: [], elements: [], objects: [] };
    plan.setData(empty, [], null);

    expect(plan.stats.markers).toBe(0);
    const crosshair = ctx.strokes.filter((s) => s.style === "#94a3b8");
    expect(crosshair.length).toBeGreaterThan(0);
  });
});

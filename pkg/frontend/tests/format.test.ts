import { describe, expect, it } from "vitest";

import { formatMeasured, humanizeId } from "../src/format.js";

describe("formatMeasured", () => {
  it("shows centimeters and inches together", () => {
    // 25.6 in = 65.024 cm, shown to one decimal each
    const measured = { value: 25.6, unit: "in", cm: 65.024, meters: 0.65024 };
    expect(formatMeasured(measured)).toBe("65.0 cm / 25.6 in");
  });

  it("rounds rather than truncates", () => {
    const measured = { value: 33.07, unit: "in", cm: 83.9978, meters: 0.839978 };
    expect(formatMeasured(measured)).toBe("84.0 cm / 33.1 in");
  });
});

describe("humanizeId", () => {
  it("drops underscores from object ids", () => {
    expect(humanizeId("door_handle_2")).toBe("door handle 2");
  });
});

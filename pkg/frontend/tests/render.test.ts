// Track render model: lane rows never intersect, geometry follows the zoom
// window, list entries follow search.

import { describe, expect, it } from "vitest";
import { labelListEntries, trackBands } from "../src/render.js";
import { computeLayout } from "../src/layout.js";
import type { DatasetDoc } from "../src/types.js";

const dataset: DatasetDoc = {
  version: "feva/1",
  revision: 3,
  tracks: [
    { id: "T1", name: "actions", visible: true },
    { id: "T2", name: "hidden", visible: false },
  ],
  types: [
    { id: "Y1", name: "Jump", color: "#e6194b" },
    { id: "Y2", name: "Walk", color: "#3cb44b" },
  ],
  labels: [
    { id: "L1", track_id: "T1", type_id: "Y1", start: 1_000_000, end: 3_000_000, text: "jumping" },
    { id: "L2", track_id: "T1", type_id: "Y2", start: 2_000_000, end: 4_000_000, text: "" },
    { id: "L3", track_id: "T1", type_id: "Y1", start: 8_000_000, end: 8_000_000, text: "blip" },
    { id: "L4", track_id: "T2", type_id: "Y1", start: 0, end: 100, text: "never drawn" },
  ],
};

const window = { start: 0, end: 10_000_000 };

describe("trackBands", () => {
  it("hides invisible tracks and places overlaps on distinct lanes", () => {
    const bands = trackBands(dataset, window, null);
    expect(bands.length).toBe(1);
    const [band] = bands;
    expect(band.laneCount).toBe(2);
    const l1 = band.rects.find((r) => r.labelId === "L1")!;
    const l2 = band.rects.find((r) => r.labelId === "L2")!;
    expect(l1.lane).not.toBe(l2.lane);
    // overlapping time ranges may not visually intersect on one lane
    expect(l1.x1).toBeGreaterThan(l2.x0);
  });

  it("maps times into window fractions", () => {
    const [band] = trackBands(dataset, window, null);
    const l1 = band.rects.find((r) => r.labelId === "L1")!;
    expect(l1.x0).toBeCloseTo(0.1, 9);
    expect(l1.x1).toBeCloseTo(0.3, 9);
  });

  it("gives point labels a visible sliver and uses the type name for empty text", () => {
    const [band] = trackBands(dataset, window, "L3");
    const point = band.rects.find((r) => r.labelId === "L3")!;
    expect(point.point).toBe(true);
    expect(point.x1).toBeGreaterThan(point.x0);
    expect(point.selected).toBe(true);
    const l2 = band.rects.find((r) => r.labelId === "L2")!;
    expect(l2.text).toBe("Walk");
  });

  it("clips labels to the window and drops ones fully outside", () => {
    const tight = { start: 2_500_000, end: 3_500_000 };
    const [band] = trackBands(dataset, tight, null);
    expect(band.rects.map((r) => r.labelId).sort()).toEqual(["L1", "L2"]);
    const l1 = band.rects.find((r) => r.labelId === "L1")!;
    expect(l1.x0).toBe(0);
  });
});

describe("labelListEntries", () => {
  it("searches text and type name case-insensitively, start-ordered", () => {
    // L4 matches through its type name (Jump) even though its text does not
    expect(labelListEntries(dataset, "JUMP").map((e) => e.id)).toEqual(["L4", "L1", "L3"]);
    expect(labelListEntries(dataset, "walk").map((e) => e.id)).toEqual(["L2"]);
    expect(labelListEntries(dataset, "").map((e) => e.id)).toEqual(["L4", "L1", "L2", "L3"]);
    expect(labelListEntries(dataset, "blip").map((e) => e.id)).toEqual(["L3"]);
  });
});

describe("computeLayout", () => {
  it("places the regions per the screen contract", () => {
    const layout = computeLayout(1280, 800);
    expect(layout.toolbar.y).toBe(0);
    expect(layout.video.x).toBeGreaterThan(layout.labelList.x);
    expect(layout.cameraSelector.x + layout.cameraSelector.w).toBe(1280);
    expect(layout.globalTimeline.y).toBeGreaterThan(layout.video.y);
    // the gutter separates the two timelines
    expect(layout.timelineGutter.y).toBe(layout.globalTimeline.y + layout.globalTimeline.h);
    expect(layout.localTimeline.y).toBe(layout.timelineGutter.y + layout.timelineGutter.h);
    expect(layout.tracks.y + layout.tracks.h).toBe(800);
    // nothing overlaps vertically in the stacked bands
    expect(layout.video.y + layout.video.h).toBeLessThanOrEqual(layout.globalTimeline.y);
  });
});

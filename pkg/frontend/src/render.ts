// Pure render model for label tracks: labels + lane assignment + zoom
// window -> positioned rectangles. The DOM layer just maps these to pixels,
// which keeps geometry testable without a browser.

import { assignLanes, type LaneAssignment } from "./lanes.js";
import type { DatasetDoc, LabelDoc } from "./types.js";
import type { Window } from "./zoom.js";

export const LANE_HEIGHT = 22;
export const LANE_GAP = 2;
export const TRACK_HEADER_H = 18;
export const POINT_LABEL_MIN_FRACTION = 0.004; // rendered width of an instant

export interface LabelRect {
  labelId: string;
  trackId: string;
  lane: number;
  // horizontal extent as fractions of the window width, clipped to [0, 1]
  x0: number;
  x1: number;
  color: string;
  text: string;
  point: boolean;
  selected: boolean;
}

export interface TrackBand {
  trackId: string;
  name: string;
  laneCount: number;
  heightPx: number;
  rects: LabelRect[];
}

export function trackBands(
  dataset: DatasetDoc,
  window: Window,
  selectedId: string | null,
): TrackBand[] {
  const colors = new Map(dataset.types.map((t) => [t.id, t.color]));
  const names = new Map(dataset.types.map((t) => [t.id, t.name]));
  const span = Math.max(1, window.end - window.start);
  const bands: TrackBand[] = [];
  for (const track of dataset.tracks) {
    if (!track.visible) continue;
    const labels = dataset.labels.filter((l) => l.track_id === track.id);
    const assignment: LaneAssignment = assignLanes(
      labels.map((l) => ({ id: l.id, start: l.start, end: l.end })),
    );
    const rects: LabelRect[] = [];
    for (const label of labels) {
      const rect = labelRect(label, assignment, window, span, colors, names, selectedId);
      if (rect) rects.push(rect);
    }
    bands.push({
      trackId: track.id,
      name: track.name,
      laneCount: Math.max(assignment.laneCount, 1),
      heightPx: TRACK_HEADER_H + Math.max(assignment.laneCount, 1) * (LANE_HEIGHT + LANE_GAP),
      rects,
    });
  }
  return bands;
}

function labelRect(
  label: LabelDoc,
  assignment: LaneAssignment,
  window: Window,
  span: number,
  colors: Map<string, string>,
  names: Map<string, string>,
  selectedId: string | null,
): LabelRect | null {
  if (label.end < window.start || label.start > window.end) return null;
  let x0 = (label.start - window.start) / span;
  let x1 = (label.end - window.start) / span;
  const point = label.start === label.end;
  if (point) x1 = x0 + POINT_LABEL_MIN_FRACTION;
  x0 = Math.max(0, x0);
  x1 = Math.min(1, Math.max(x1, x0));
  return {
    labelId: label.id,
    trackId: label.track_id,
    lane: assignment.lanes.get(label.id) ?? 0,
    x0,
    x1,
    color: colors.get(label.type_id) ?? "#888888",
    text: label.text || names.get(label.type_id) || label.type_id,
    point,
    selected: label.id === selectedId,
  };
}

// Label list entries: search results in start order, ready for the sidebar.
export function labelListEntries(dataset: DatasetDoc, query: string) {
  const needle = query.toLowerCase();
  const names = new Map(dataset.types.map((t) => [t.id, t.name]));
  return dataset.labels
    .filter((l) => {
      const text = (l.text ?? "").toLowerCase();
      const typeName = (names.get(l.type_id) ?? "").toLowerCase();
      return needle === "" || text.includes(needle) || typeName.includes(needle);
    })
    .sort((a, b) => a.start - b.start || (a.id < b.id ? -1 : 1))
    .map((l) => ({
      id: l.id,
      start: l.start,
      end: l.end,
      text: l.text || names.get(l.type_id) || l.type_id,
      typeName: names.get(l.type_id) ?? l.type_id,
    }));
}

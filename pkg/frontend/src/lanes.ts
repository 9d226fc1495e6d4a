// Lane packing for track rendering, mirroring the engine: greedy first-fit
// over (start, end, id)-sorted labels, half-open overlap, point labels
// occupying one microsecond. Overlapping labels land on distinct lanes and
// the lane count equals the maximum overlap depth.

export interface LaneInterval {
  id: string;
  start: number;
  end: number;
}

export interface LaneAssignment {
  lanes: Map<string, number>;
  laneCount: number;
}

function occupiedEnd(start: number, end: number): number {
  return end > start ? end : start + 1;
}

export function assignLanes(intervals: LaneInterval[]): LaneAssignment {
  const sorted = [...intervals].sort(
    (a, b) => a.start - b.start || a.end - b.end || (a.id < b.id ? -1 : a.id > b.id ? 1 : 0),
  );
  const laneLastEnd: number[] = [];
  const lanes = new Map<string, number>();
  for (const item of sorted) {
    const occupied = occupiedEnd(item.start, item.end);
    let placed = false;
    for (let lane = 0; lane < laneLastEnd.length; lane++) {
      if (laneLastEnd[lane] <= item.start) {
        laneLastEnd[lane] = occupied;
        lanes.set(item.id, lane);
        placed = true;
        break;
      }
    }
    if (!placed) {
      lanes.set(item.id, laneLastEnd.length);
      laneLastEnd.push(occupied);
    }
  }
  return { lanes, laneCount: laneLastEnd.length };
}

export function maxOverlapDepth(intervals: LaneInterval[]): number {
  const events: Array<[number, number]> = [];
  for (const item of intervals) {
    events.push([item.start, 1]);
    events.push([occupiedEnd(item.start, item.end), -1]);
  }
  events.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  let depth = 0;
  let best = 0;
  for (const [, step] of events) {
    depth += step;
    if (depth > best) best = depth;
  }
  return best;
}

"""Label organizer: pack each track's labels into display lanes.

Greedy first-fit over labels sorted by (start, end, id) uses the minimum
number of lanes (the maximum overlap depth) and never puts two overlapping
labels on one lane. Intervals are half-open, so back-to-back labels chain on
a single lane; a point label occupies just its instant and can share a lane
with an interval ending exactly there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Tuple

from .model import Dataset, TimePoint

Interval = Tuple[str, TimePoint, TimePoint]  # (id, start, end), start <= end


def _occupied_end(start: TimePoint, end: TimePoint) -> TimePoint:
    # Point labels hold their instant: treat [t, t] as [t, t+1) for conflicts.
    return end if end > start else start + 1


@dataclass(frozen=True)
class LaneAssignment:
    lanes: Mapping[str, int]  # label id -> 0-based lane index
    lane_count: int

    def __post_init__(self):
        object.__setattr__(self, "lanes", dict(self.lanes))


def assign_lanes(labels: Iterable[Interval]) -> LaneAssignment:
    """First-fit greedy lane packing; deterministic under input reordering."""
    items = sorted(labels, key=lambda it: (it[1], it[2], it[0]))
    lane_last_end: list = []
    out = {}
    for label_id, start, end in items:
        if end < start:
            raise ValueError(f"inverted interval for {label_id!r}")
        occupied = _occupied_end(start, end)
        for lane, last_end in enumerate(lane_last_end):
            if last_end <= start:
                lane_last_end[lane] = occupied
                out[label_id] = lane
                break
        else:
            out[label_id] = len(lane_last_end)
            lane_last_end.append(occupied)
    return LaneAssignment(out, len(lane_last_end))


def max_overlap_depth(labels: Iterable[Interval]) -> int:
    """Maximum number of labels simultaneously active at any instant."""
    events = []
    for _, start, end in labels:
        if end < start:
            raise ValueError("inverted interval")
        events.append((start, 1))
        events.append((_occupied_end(start, end), -1))
    events.sort(key=lambda ev: (ev[0], ev[1]))  # closes before opens at ties
    depth = best = 0
    for _, step in events:
        depth += step
        best = max(best, depth)
    return best


def track_lanes(d: Dataset, track_id: str) -> LaneAssignment:
    """Lane assignment for one track's labels."""
    return assign_lanes((l.id, l.start, l.end) for l in d.labels if l.track_id == track_id)

"""Shared builders, generators, and independent oracles for the test suite."""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import List, Optional, Tuple

from feva.annotator import (
    Create,
    Delete,
    Edit,
    Move,
    Resize,
    SetAttr,
    SetText,
    SetTrack,
    SetType,
)
from feva.model import Dataset, FrameRate, Label, LabelType, Track

SECOND = 1_000_000


def small_dataset(n_tracks: int = 1, n_types: int = 1, revision: int = 0) -> Dataset:
    tracks = tuple(Track(id=f"T{i+1}", name=f"track {i+1}") for i in range(n_tracks))
    types = tuple(
        LabelType(id=f"Y{i+1}", name=f"kind {i+1}", color="#4363d8") for i in range(n_types)
    )
    return Dataset(revision=revision, tracks=tracks, types=types)


def random_dataset(rng: random.Random, n_labels: int, duration: int = 60 * SECOND) -> Dataset:
    base = small_dataset(n_tracks=rng.randint(1, 3), n_types=rng.randint(1, 3))
    labels = []
    for i in range(n_labels):
        start = rng.randrange(0, duration)
        end = min(duration, start + rng.randrange(0, 5 * SECOND))
        if rng.random() < 0.1:
            end = start
        attributes = {}
        if rng.random() < 0.3:
            attributes["rating"] = rng.randint(1, 5)
        if rng.random() < 0.2:
            attributes["note"] = rng.choice(["ok", "check again", "unsure"])
        labels.append(
            Label(
                id=f"L{i+1}",
                track_id=rng.choice(base.tracks).id,
                type_id=rng.choice(base.types).id,
                start=start,
                end=end,
                text=rng.choice(["", "jump", "walk left", "eats apple", "yawns"]),
                attributes=attributes,
            )
        )
    return Dataset(
        revision=rng.randrange(0, 50),
        tracks=base.tracks,
        types=base.types,
        labels=tuple(labels),
    )


def random_edit(rng: random.Random, d: Dataset, duration: int) -> Optional[Edit]:
    """One random valid edit against the current dataset, or None."""
    ids = [l.id for l in d.labels]
    choices = ["create"] if not ids else [
        "create", "delete", "move", "resize", "set_text", "set_type", "set_attr", "set_track",
    ]
    kind = rng.choice(choices)
    if kind == "create":
        start = rng.randrange(0, duration)
        end = min(duration, start + rng.randrange(0, 3 * SECOND))
        return Create(rng.choice(d.tracks).id, rng.choice(d.types).id, start, end,
                      text=rng.choice(["", "x", "long note"]))
    target = rng.choice(ids)
    label = d.label(target)
    if kind == "delete":
        return Delete(target)
    if kind == "move":
        return Move(target, rng.randrange(-duration, duration))
    if kind == "resize":
        if rng.random() < 0.5:
            return Resize(target, "start", rng.randrange(0, label.end + 1))
        return Resize(target, "end", rng.randrange(label.start, duration + 1))
    if kind == "set_text":
        return SetText(target, rng.choice(["", "renamed", "two words"]))
    if kind == "set_type":
        return SetType(target, rng.choice(d.types).id)
    if kind == "set_attr":
        if rng.random() < 0.3 and label.attributes:
            return SetAttr(target, rng.choice(sorted(label.attributes)), None)
        return SetAttr(target, rng.choice(["rating", "note"]), rng.choice([1, 2.5, "yes"]))
    return SetTrack(target, rng.choice(d.tracks).id)


# --- independent oracles -----------------------------------------------------


def nearest_frame_exhaustive(t: int, fps: FrameRate, search_radius: int = 4) -> int:
    """Nearest frame boundary by brute-force scan around t (exact Fractions).

    Exact midpoints resolve to the later frame, matching
    round-half-away-from-zero on nonnegative times.
    """
    approx = int(Fraction(t * fps.num, fps.den * SECOND))
    best = None
    for i in range(max(0, approx - search_radius), approx + search_radius + 1):
        instant = Fraction(i * fps.den * SECOND, fps.num)
        key = (abs(instant - t), -instant)
        if best is None or key < best[0]:
            best = (key, instant)
    # round the exact rational boundary to integer microseconds, half away from zero
    num, den = best[1].numerator, best[1].denominator
    return (2 * num + den) // (2 * den)


def min_lanes_exhaustive(intervals: List[Tuple[str, int, int]]) -> int:
    """Smallest number of lanes over every possible assignment (backtracking)."""
    if not intervals:
        return 0

    def conflicts(a, b):
        a_end = a[2] if a[2] > a[1] else a[1] + 1
        b_end = b[2] if b[2] > b[1] else b[1] + 1
        return a[1] < b_end and b[1] < a_end

    best = [len(intervals)]

    def place(i, lanes):
        if len(lanes) >= best[0]:
            return
        if i == len(intervals):
            best[0] = len(lanes)
            return
        item = intervals[i]
        for lane in lanes:
            if not any(conflicts(item, other) for other in lane):
                lane.append(item)
                place(i + 1, lanes)
                lane.pop()
        lanes.append([item])
        place(i + 1, lanes)
        lanes.pop()

    place(0, [])
    return best[0]


SRT_TIME = r"(\d{2}):(\d{2}):(\d{2}),(\d{3})"
_SRT_BLOCK = re.compile(rf"(\d+)\n{SRT_TIME} --> {SRT_TIME}\n(.*?)\n(?:\n|\Z)", re.DOTALL)


def parse_srt(text: str) -> List[Tuple[int, int, int, str]]:
    """Independent SRT reader: [(index, start_ms, end_ms, text)]."""
    out = []
    for m in _SRT_BLOCK.finditer(text):
        h1, m1, s1, ms1 = (int(x) for x in m.groups()[1:5])
        h2, m2, s2, ms2 = (int(x) for x in m.groups()[5:9])
        out.append(
            (
                int(m.group(1)),
                ((h1 * 60 + m1) * 60 + s1) * 1000 + ms1,
                ((h2 * 60 + m2) * 60 + s2) * 1000 + ms2,
                m.group(10),
            )
        )
    return out

"""Core value types and frame-accurate time arithmetic.

All times are integer microseconds on the shared project timeline (no floats
in stored times). Frame rates are reduced rationals so NTSC-style rates such
as 30000/1001 stay exact; frame/time conversions use integer rational
arithmetic with round-half-away-from-zero.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Union

TimePoint = int  # microseconds from timeline zero
AttrValue = Union[str, int, float]

US_PER_SECOND = 1_000_000
FORMAT_VERSION = "feva/1"

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


def div_round(num: int, den: int) -> int:
    """Integer num/den rounded half away from zero. den must be positive."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((2 * -num + den) // (2 * den))


def clamp(t: int, lo: int, hi: int) -> int:
    return lo if t < lo else hi if t > hi else t


@dataclass(frozen=True)
class FrameRate:
    """Frames per second as a reduced rational num/den."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError(f"frame rate must be positive, got {self.num}/{self.den}")
        g = math.gcd(self.num, self.den)
        object.__setattr__(self, "num", self.num // g)
        object.__setattr__(self, "den", self.den // g)

    @property
    def fps(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"


def frame_index(t: TimePoint, fps: FrameRate) -> int:
    """Nearest frame number for a timeline instant."""
    return div_round(t * fps.num, fps.den * US_PER_SECOND)


def frame_to_time(index: int, fps: FrameRate) -> TimePoint:
    """Timeline instant of a frame number."""
    return div_round(index * fps.den * US_PER_SECOND, fps.num)


def snap_to_frame(t: TimePoint, fps: FrameRate) -> TimePoint:
    """Round an instant to the nearest frame boundary. Idempotent."""
    return frame_to_time(frame_index(t, fps), fps)


def frame_step(t: TimePoint, fps: FrameRate, delta_frames: int, duration: TimePoint) -> TimePoint:
    """Move whole frames from the frame nearest t, clamped to [0, duration]."""
    stepped = frame_to_time(frame_index(t, fps) + delta_frames, fps)
    return clamp(stepped, 0, duration)


@dataclass(frozen=True)
class SpatialPayload:
    """Optional spatial attachment: nothing, a point, or a bounding box.

    Coordinates are normalized to [0, 1]: point is (x, y), bbox is (x, y, w, h).
    """

    kind: str = "none"  # none | point | bbox
    coords: tuple = ()

    def __post_init__(self):
        arity = {"none": 0, "point": 2, "bbox": 4}
        if self.kind not in arity:
            raise ValueError(f"unknown spatial kind {self.kind!r}")
        if len(self.coords) != arity[self.kind]:
            raise ValueError(f"{self.kind} payload needs {arity[self.kind]} coords")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))


NO_SPATIAL = SpatialPayload()


@dataclass(frozen=True)
class LabelType:
    id: str
    name: str
    color: str = "#888888"
    extra: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "extra", dict(self.extra))


@dataclass(frozen=True)
class Track:
    id: str
    name: str
    visible: bool = True
    extra: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "extra", dict(self.extra))


@dataclass(frozen=True)
class Label:
    """One temporal event: a half-open interval on the shared timeline.

    start == end is a legal point label; it overlaps nothing but its own
    instant. Labels live on the project-global clock, not per-source time.
    """

    id: str
    track_id: str
    type_id: str
    start: TimePoint
    end: TimePoint
    text: str = ""
    spatial: SpatialPayload = NO_SPATIAL
    attributes: Mapping[str, AttrValue] = field(default_factory=dict)
    extra: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "attributes", dict(self.attributes))
        object.__setattr__(self, "extra", dict(self.extra))

    @property
    def is_point(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class Dataset:
    """A project's full annotation state.

    ``revision`` increments by exactly 1 per committed mutation and backs
    optimistic concurrency on the HTTP edit endpoint.
    """

    version: str = FORMAT_VERSION
    revision: int = 0
    tracks: tuple = ()
    types: tuple = ()
    labels: tuple = ()
    extra: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tracks", tuple(self.tracks))
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "extra", dict(self.extra))

    def label(self, label_id: str) -> Optional[Label]:
        for lbl in self.labels:
            if lbl.id == label_id:
                return lbl
        return None

    def track(self, track_id: str) -> Optional[Track]:
        for trk in self.tracks:
            if trk.id == track_id:
                return trk
        return None

    def type(self, type_id: str) -> Optional[LabelType]:
        for typ in self.types:
            if typ.id == type_id:
                return typ
        return None


@dataclass(frozen=True)
class VideoSource:
    """One camera / media file sharing the project timeline.

    ``offset`` shifts this source relative to the shared clock; local time is
    computed on demand as t - offset.
    """

    id: str
    uri: str
    fps: FrameRate
    duration: TimePoint
    offset: int = 0
    width: int = 0
    height: int = 0

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("source duration must be positive")

    def to_local(self, t: TimePoint) -> TimePoint:
        """Map a timeline instant into this source's local time, clamped."""
        return clamp(t - self.offset, 0, self.duration)


@dataclass(frozen=True)
class Project:
    id: str
    name: str
    sources: tuple
    primary_source_id: str
    dataset_refs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "dataset_refs", tuple(self.dataset_refs))
        if not self.sources:
            raise ValueError("project needs at least one source")
        ids = [s.id for s in self.sources]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate source id")
        if self.primary_source_id not in ids:
            raise ValueError("primary_source_id not among sources")

    def source(self, source_id: str) -> Optional[VideoSource]:
        for src in self.sources:
            if src.id == source_id:
                return src
        return None

    @property
    def primary_source(self) -> VideoSource:
        return self.source(self.primary_source_id)


@dataclass(frozen=True)
class Violation:
    entity_id: str
    rule: str
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(self.violations))

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_dataset(d: Dataset, duration: Optional[TimePoint] = None) -> ValidationReport:
    """Check every dataset invariant; empty report means the dataset is clean.

    Violations name the entity and the broken rule instead of raising, so
    loaders and the HTTP layer can surface all problems at once.
    """
    out = []

    seen_tracks = set()
    for trk in d.tracks:
        if trk.id in seen_tracks:
            out.append(Violation(trk.id, "unique_id", "duplicate track id"))
        seen_tracks.add(trk.id)

    seen_types = set()
    for typ in d.types:
        if typ.id in seen_types:
            out.append(Violation(typ.id, "unique_id", "duplicate type id"))
        seen_types.add(typ.id)
        if not typ.name:
            out.append(Violation(typ.id, "name_nonempty"))
        if not _COLOR_RE.match(typ.color):
            out.append(Violation(typ.id, "color_format", typ.color))

    if d.revision < 0:
        out.append(Violation("dataset", "revision_nonneg", str(d.revision)))

    seen_labels = set()
    for lbl in d.labels:
        if lbl.id in seen_labels:
            out.append(Violation(lbl.id, "unique_id", "duplicate label id"))
        seen_labels.add(lbl.id)
        if lbl.start < 0:
            out.append(Violation(lbl.id, "nonneg_time", f"start={lbl.start}"))
        if lbl.end < lbl.start:
            out.append(Violation(lbl.id, "start_le_end", f"{lbl.start}..{lbl.end}"))
        if duration is not None and lbl.end > duration:
            out.append(Violation(lbl.id, "end_le_duration", f"end={lbl.end}"))
        if lbl.track_id not in seen_tracks:
            out.append(Violation(lbl.id, "track_exists", lbl.track_id))
        if lbl.type_id not in seen_types:
            out.append(Violation(lbl.id, "type_exists", lbl.type_id))
        out.extend(_check_spatial(lbl))
        for key, value in lbl.attributes.items():
            if not isinstance(value, (str, int, float)) or isinstance(value, bool):
                out.append(Violation(lbl.id, "attr_value_type", key))

    return ValidationReport(tuple(out))


def _check_spatial(lbl: Label) -> Iterable[Violation]:
    sp = lbl.spatial
    if sp.kind == "none":
        return
    if any(c < 0.0 or c > 1.0 for c in sp.coords):
        yield Violation(lbl.id, "spatial_range", repr(sp.coords))
    elif sp.kind == "bbox":
        x, y, w, h = sp.coords
        if x + w > 1.0 or y + h > 1.0:
            yield Violation(lbl.id, "spatial_range", "bbox exceeds unit square")

"""Label mutations: speed-label timing math and the edit/inverse algebra.

Every edit application returns the exact inverse edit, which is what the
history module stores. Inverses restore the dataset field-for-field except
the revision counter, which moves forward on every committed mutation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Tuple, Union

from .errors import (
    DuplicateLabelId,
    InvalidInterval,
    LabelNotFound,
    TrackNotFound,
    TypeNotFound,
)
from .model import (
    NO_SPATIAL,
    AttrValue,
    Dataset,
    FrameRate,
    Label,
    SpatialPayload,
    TimePoint,
    clamp,
    div_round,
    frame_step,
)
from .transport import TransportState

START = "start"
END = "end"

_ID_RE = re.compile(r"^L(\d+)$")


@dataclass(frozen=True)
class ReactionConfig:
    """Reaction-time compensation settings.

    ``delta_r_us`` is the configured lag between perceiving an event and
    pressing the mark key; marks are shifted back by it to recover intended
    times. Scaling by |rate| converts the wall-clock lag into media time.
    """

    delta_r_us: int = 250_000
    compensate_only_while_playing: bool = True
    scale_by_rate: bool = True
    snap_marks_to_frame: bool = False

    def __post_init__(self):
        if not 0 <= self.delta_r_us <= 2_000_000:
            raise ValueError("delta_r_us outside sanity range [0, 2000000]")


@dataclass(frozen=True)
class SpeedLabelState:
    """Pending-mark state: at most one open start per session.

    ``cancelled`` flags that a track switch discarded a pending start, so a
    UI can tell the user instead of silently dropping the mark.
    """

    active_track_id: Optional[str] = None
    active_type_id: Optional[str] = None
    pending_start: Optional[TimePoint] = None
    cancelled: bool = False


# --- Edits ------------------------------------------------------------------


@dataclass(frozen=True)
class Create:
    """Add a label. ``id`` of None means "allocate the next sequential id".

    ``index`` pins the insertion position in the label list; deletions record
    it so their inverses restore the original ordering exactly.
    """

    track_id: str
    type_id: str
    start: TimePoint
    end: TimePoint
    id: Optional[str] = None
    text: str = ""
    spatial: SpatialPayload = NO_SPATIAL
    attributes: Mapping[str, AttrValue] = field(default_factory=dict)
    index: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "attributes", dict(self.attributes))


@dataclass(frozen=True)
class Delete:
    id: str


@dataclass(frozen=True)
class Move:
    """Shift a label by signed microseconds; clamps at timeline bounds while
    preserving the label's length."""

    id: str
    delta: int


@dataclass(frozen=True)
class Resize:
    id: str
    edge: str  # start | end
    time: TimePoint


@dataclass(frozen=True)
class SetText:
    id: str
    text: str


@dataclass(frozen=True)
class SetType:
    id: str
    type_id: str


@dataclass(frozen=True)
class SetAttr:
    """Set one attribute; value None removes the key."""

    id: str
    key: str
    value: Optional[AttrValue]


@dataclass(frozen=True)
class SetTrack:
    id: str
    track_id: str


Edit = Union[Create, Delete, Move, Resize, SetText, SetType, SetAttr, SetTrack]


def next_label_id(d: Dataset) -> str:
    """Next id in the L<number> sequence; deterministic for a given dataset."""
    highest = 0
    taken = set()
    for lbl in d.labels:
        taken.add(lbl.id)
        m = _ID_RE.match(lbl.id)
        if m:
            highest = max(highest, int(m.group(1)))
    candidate = highest + 1
    while f"L{candidate}" in taken:
        candidate += 1
    return f"L{candidate}"


def _find(d: Dataset, label_id: str) -> Tuple[int, Label]:
    for i, lbl in enumerate(d.labels):
        if lbl.id == label_id:
            return i, lbl
    raise LabelNotFound(label_id)


def _swap(d: Dataset, index: int, lbl: Label) -> Dataset:
    labels = d.labels[:index] + (lbl,) + d.labels[index + 1 :]
    return replace(d, labels=labels, revision=d.revision + 1)


def apply_edit(d: Dataset, e: Edit, duration: Optional[TimePoint] = None) -> Tuple[Dataset, Edit]:
    """Apply one edit; returns (new dataset, exact inverse).

    Resulting labels always satisfy 0 <= start <= end (<= duration when one
    is given). Move clamps its delta instead of failing; Resize past the
    opposite edge or the timeline is an error.
    """
    if isinstance(e, Create):
        if d.track(e.track_id) is None:
            raise TrackNotFound(e.track_id)
        if d.type(e.type_id) is None:
            raise TypeNotFound(e.type_id)
        label_id = e.id if e.id is not None else next_label_id(d)
        if d.label(label_id) is not None:
            raise DuplicateLabelId(label_id)
        if not (0 <= e.start <= e.end) or (duration is not None and e.end > duration):
            raise InvalidInterval(f"{e.start}..{e.end}")
        lbl = Label(label_id, e.track_id, e.type_id, e.start, e.end, e.text, e.spatial, e.attributes)
        at = len(d.labels) if e.index is None else clamp(e.index, 0, len(d.labels))
        labels = d.labels[:at] + (lbl,) + d.labels[at:]
        return replace(d, labels=labels, revision=d.revision + 1), Delete(label_id)

    if isinstance(e, Delete):
        at, lbl = _find(d, e.id)
        labels = d.labels[:at] + d.labels[at + 1 :]
        inverse = Create(
            lbl.track_id,
            lbl.type_id,
            lbl.start,
            lbl.end,
            id=lbl.id,
            text=lbl.text,
            spatial=lbl.spatial,
            attributes=lbl.attributes,
            index=at,
        )
        return replace(d, labels=labels, revision=d.revision + 1), inverse

    if isinstance(e, Move):
        at, lbl = _find(d, e.id)
        low = -lbl.start
        high = (duration - lbl.end) if duration is not None else max(e.delta, low)
        actual = clamp(e.delta, low, high)
        moved = replace(lbl, start=lbl.start + actual, end=lbl.end + actual)
        return _swap(d, at, moved), Move(e.id, -actual)

    if isinstance(e, Resize):
        at, lbl = _find(d, e.id)
        if e.edge == START:
            if not (0 <= e.time <= lbl.end):
                raise InvalidInterval(f"start={e.time}")
            resized, old = replace(lbl, start=e.time), lbl.start
        elif e.edge == END:
            if e.time < lbl.start or (duration is not None and e.time > duration):
                raise InvalidInterval(f"end={e.time}")
            resized, old = replace(lbl, end=e.time), lbl.end
        else:
            raise InvalidInterval(f"unknown edge {e.edge!r}")
        return _swap(d, at, resized), Resize(e.id, e.edge, old)

    if isinstance(e, SetText):
        at, lbl = _find(d, e.id)
        return _swap(d, at, replace(lbl, text=e.text)), SetText(e.id, lbl.text)

    if isinstance(e, SetType):
        if d.type(e.type_id) is None:
            raise TypeNotFound(e.type_id)
        at, lbl = _find(d, e.id)
        return _swap(d, at, replace(lbl, type_id=e.type_id)), SetType(e.id, lbl.type_id)

    if isinstance(e, SetAttr):
        at, lbl = _find(d, e.id)
        attrs = dict(lbl.attributes)
        old = attrs.get(e.key)
        if e.value is None:
            attrs.pop(e.key, None)
        else:
            attrs[e.key] = e.value
        return _swap(d, at, replace(lbl, attributes=attrs)), SetAttr(e.id, e.key, old)

    if isinstance(e, SetTrack):
        if d.track(e.track_id) is None:
            raise TrackNotFound(e.track_id)
        at, lbl = _find(d, e.id)
        return _swap(d, at, replace(lbl, track_id=e.track_id)), SetTrack(e.id, lbl.track_id)

    raise TypeError(f"not an edit: {e!r}")


# --- Speed labeling ---------------------------------------------------------


def reaction_compensate(t_press: TimePoint, cfg: ReactionConfig, transport: TransportState) -> TimePoint:
    """Shift a pressed mark back by the configured reaction time.

    When paused (and compensation is play-only) the user saw the exact frame,
    so the press time is already the intended time.
    """
    if cfg.compensate_only_while_playing and not transport.playing:
        return t_press
    if cfg.scale_by_rate:
        rate = transport.rate if transport.rate > 0 else -transport.rate
        lag = div_round(cfg.delta_r_us * rate.numerator, rate.denominator)
    else:
        lag = cfg.delta_r_us
    t = clamp(t_press - lag, 0, transport.duration)
    if cfg.snap_marks_to_frame:
        t = frame_step(t, transport.fps, 0, transport.duration)
    return t


def mark_times(
    speed: SpeedLabelState, transport: TransportState, cfg: ReactionConfig
) -> Tuple[SpeedLabelState, Optional[Tuple[TimePoint, TimePoint]]]:
    """One press of the mark key.

    First press opens a pending start; second press closes it and yields the
    (start, end) to commit. Marks made during reverse play arrive in offset
    order and are normalized by swapping; forward-play underflow from
    clamping degrades to a point label.
    """
    t = reaction_compensate(transport.position, cfg, transport)
    if speed.pending_start is None:
        return replace(speed, pending_start=t, cancelled=False), None
    start, end = speed.pending_start, t
    if end < start:
        if transport.rate < 0:
            start, end = end, start
        else:
            end = start
    return replace(speed, pending_start=None, cancelled=False), (start, end)


def fine_tune_edit(
    d: Dataset,
    label_id: str,
    edge: str,
    delta_frames: int,
    fps: FrameRate,
    duration: TimePoint,
) -> Optional[Resize]:
    """The Resize realizing a whole-frame nudge of one label edge.

    Clamped at the timeline bounds and at the opposite edge (an edge never
    crosses its partner). None when clamping makes the nudge a no-op.
    """
    _, lbl = _find(d, label_id)
    current = lbl.start if edge == START else lbl.end
    target = frame_step(current, fps, delta_frames, duration)
    if edge == START:
        target = min(target, lbl.end)
    else:
        target = max(target, lbl.start)
    if target == current:
        return None
    return Resize(label_id, edge, target)


def fine_tune(
    d: Dataset,
    label_id: str,
    edge: str,
    delta_frames: int,
    fps: FrameRate,
    duration: TimePoint,
) -> Tuple[Dataset, Optional[Edit]]:
    """Nudge one label edge by whole frames; clamped so start stays <= end.

    Returns (dataset, inverse); inverse is None when clamping made the nudge
    a no-op, in which case the dataset (and its revision) are unchanged.
    """
    edit = fine_tune_edit(d, label_id, edge, delta_frames, fps, duration)
    if edit is None:
        return d, None
    return apply_edit(d, edit, duration)

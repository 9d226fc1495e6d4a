"""Search, type filtering, and playhead lookup over labels.

Plain linear scans: datasets are desk-scale. Results are ordered by
(start, id) so they are stable under label-list reordering.
"""

from __future__ import annotations

from typing import List

from .errors import TrackNotFound, TypeNotFound
from .model import Dataset, TimePoint


def _ordered_ids(labels) -> List[str]:
    return [l.id for l in sorted(labels, key=lambda l: (l.start, l.id))]


def search(d: Dataset, text: str) -> List[str]:
    """Labels whose text or type name contains ``text``, case-insensitively.

    The empty query matches everything.
    """
    needle = text.casefold()
    type_names = {t.id: t.name.casefold() for t in d.types}
    hits = [
        l
        for l in d.labels
        if needle in l.text.casefold() or needle in type_names.get(l.type_id, "")
    ]
    return _ordered_ids(hits)


def filter_by_type(d: Dataset, type_id: str) -> List[str]:
    if d.type(type_id) is None:
        raise TypeNotFound(type_id)
    return _ordered_ids(l for l in d.labels if l.type_id == type_id)


def labels_at(d: Dataset, track_id: str, t: TimePoint) -> List[str]:
    """Labels on a track covering instant t (half-open), plus point labels at t."""
    if d.track(track_id) is None:
        raise TrackNotFound(track_id)
    hits = [
        l
        for l in d.labels
        if l.track_id == track_id and (l.start <= t < l.end or (l.is_point and l.start == t))
    ]
    return _ordered_ids(hits)

"""Durable formats: native dataset JSON, VIA import, SRT and cut-list export.

The native serializer is byte-deterministic (fixed key order, two-space
indent, trailing newline) so dataset files diff cleanly under version
control. Unknown fields in loaded documents are preserved opaquely and
re-emitted on save, sorted after the known keys.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Tuple

from .annotator import (
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
from .errors import DatasetInvalid, MalformedDocument, MalformedEdit, UnsupportedVersion
from .model import (
    FORMAT_VERSION,
    NO_SPATIAL,
    Dataset,
    FrameRate,
    Label,
    LabelType,
    Project,
    SpatialPayload,
    TimePoint,
    Track,
    VideoSource,
    div_round,
    validate_dataset,
)

US_PER_SECOND = 1_000_000

DEFAULT_MIN_CAPTION_US = 500_000

_TRACK_KEYS = ("id", "name", "visible")
_TYPE_KEYS = ("id", "name", "color")
_LABEL_KEYS = ("id", "track_id", "type_id", "start", "end", "text", "spatial", "attributes")
_TOP_KEYS = ("version", "revision", "tracks", "types", "labels")


def _dump(doc: Any) -> bytes:
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _parse(data) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"not UTF-8: {exc}") from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(str(exc)) from exc


def _require(obj: Mapping, key: str, kinds, where: str):
    if key not in obj:
        raise MalformedDocument(f"{where}: missing {key!r}")
    value = obj[key]
    # bool subclasses int; a bare True is never a valid count or time
    if isinstance(value, bool) or not isinstance(value, kinds):
        raise MalformedDocument(f"{where}: bad type for {key!r}")
    return value


def _extras(obj: Mapping, known: Sequence[str]) -> dict:
    return {k: obj[k] for k in sorted(obj) if k not in known}


def _with_extras(doc: dict, extra: Mapping[str, Any]) -> dict:
    for key in sorted(extra):
        doc.setdefault(key, extra[key])
    return doc


# --- native dataset format ----------------------------------------------------


def dataset_to_document(d: Dataset) -> dict:
    return _with_extras(
        {
            "version": d.version,
            "revision": d.revision,
            "tracks": [_track_doc(t) for t in d.tracks],
            "types": [_type_doc(t) for t in d.types],
            "labels": [_label_doc(l) for l in d.labels],
        },
        d.extra,
    )


def _track_doc(t: Track) -> dict:
    return _with_extras({"id": t.id, "name": t.name, "visible": t.visible}, t.extra)


def _type_doc(t: LabelType) -> dict:
    return _with_extras({"id": t.id, "name": t.name, "color": t.color}, t.extra)


def _label_doc(l: Label) -> dict:
    doc = {
        "id": l.id,
        "track_id": l.track_id,
        "type_id": l.type_id,
        "start": l.start,
        "end": l.end,
    }
    if l.text:
        doc["text"] = l.text
    if l.spatial.kind != "none":
        doc["spatial"] = {"kind": l.spatial.kind, "coords": list(l.spatial.coords)}
    if l.attributes:
        doc["attributes"] = {k: l.attributes[k] for k in sorted(l.attributes)}
    return _with_extras(doc, l.extra)


def save_dataset(d: Dataset) -> bytes:
    """Serialize to the native format. Deterministic bytes for equal datasets."""
    return _dump(dataset_to_document(d))


def dataset_from_document(doc: Any) -> Dataset:
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be an object")
    version = _require(doc, "version", str, "dataset")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(version)
    revision = _require(doc, "revision", int, "dataset")
    tracks = [_track_from(t) for t in _require(doc, "tracks", list, "dataset")]
    types = [_type_from(t) for t in _require(doc, "types", list, "dataset")]
    labels = [_label_from(l) for l in _require(doc, "labels", list, "dataset")]
    return Dataset(
        version=version,
        revision=revision,
        tracks=tuple(tracks),
        types=tuple(types),
        labels=tuple(labels),
        extra=_extras(doc, _TOP_KEYS),
    )


def _track_from(obj) -> Track:
    if not isinstance(obj, dict):
        raise MalformedDocument("track must be an object")
    return Track(
        id=_require(obj, "id", str, "track"),
        name=_require(obj, "name", str, "track"),
        visible=bool(obj.get("visible", True)),
        extra=_extras(obj, _TRACK_KEYS),
    )


def _type_from(obj) -> LabelType:
    if not isinstance(obj, dict):
        raise MalformedDocument("type must be an object")
    return LabelType(
        id=_require(obj, "id", str, "type"),
        name=_require(obj, "name", str, "type"),
        color=str(obj.get("color", "#888888")),
        extra=_extras(obj, _TYPE_KEYS),
    )


def _label_from(obj) -> Label:
    if not isinstance(obj, dict):
        raise MalformedDocument("label must be an object")
    label_id = _require(obj, "id", str, "label")
    spatial = NO_SPATIAL
    if "spatial" in obj:
        sp = obj["spatial"]
        if not isinstance(sp, dict):
            raise MalformedDocument(f"label {label_id}: spatial must be an object")
        try:
            spatial = SpatialPayload(str(sp.get("kind", "none")), tuple(sp.get("coords", ())))
        except (TypeError, ValueError) as exc:
            raise MalformedDocument(f"label {label_id}: {exc}") from exc
    attributes = obj.get("attributes", {})
    if not isinstance(attributes, dict):
        raise MalformedDocument(f"label {label_id}: attributes must be an object")
    return Label(
        id=label_id,
        track_id=_require(obj, "track_id", str, f"label {label_id}"),
        type_id=_require(obj, "type_id", str, f"label {label_id}"),
        start=_require(obj, "start", int, f"label {label_id}"),
        end=_require(obj, "end", int, f"label {label_id}"),
        text=str(obj.get("text", "")),
        spatial=spatial,
        attributes=attributes,
        extra=_extras(obj, _LABEL_KEYS),
    )


def load_dataset(data) -> Dataset:
    """Parse and validate a native document; invalid datasets never load."""
    d = dataset_from_document(_parse(data))
    report = validate_dataset(d)
    if not report.ok:
        raise DatasetInvalid(report.violations)
    return d


# --- VIA-3 project import -----------------------------------------------------

_PALETTE = (
    "#e6194b",
    "#3cb44b",
    "#d4a017",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#46f0f0",
    "#f032e6",
    "#808000",
    "#008080",
)


def import_via_detailed(data) -> Tuple[Dataset, List[str]]:
    """Import a VIA-3 project document; returns (dataset, warnings).

    Each temporal segment (two-element z pair, seconds) becomes a label;
    single-element z markers become point labels. One track per VIA view,
    label types synthesized from each segment's first attribute value.
    Reversed time pairs are normalized by swapping and reported as warnings.
    """
    doc = _parse(data)
    if not isinstance(doc, dict):
        raise MalformedDocument("VIA project must be an object")
    warnings: List[str] = []

    attrs = doc.get("attribute", {})
    files = doc.get("file", {})
    views = doc.get("view", {})
    metadata = doc.get("metadata", {})
    if not all(isinstance(x, dict) for x in (attrs, files, views, metadata)):
        raise MalformedDocument("VIA sections must be objects")

    vid_order = [str(v) for v in doc.get("vid_list", [])] or sorted(views, key=_via_sort_key)
    tracks = []
    for vid in vid_order:
        view = views.get(vid, {})
        fids = view.get("fid_list", []) if isinstance(view, dict) else []
        names = [files[str(f)].get("fname", "") for f in fids if str(f) in files]
        name = ", ".join(n for n in names if n) or f"timeline {vid}"
        tracks.append(Track(id=f"via_{vid}", name=name))
    track_ids = {t.id for t in tracks}

    type_ids: dict = {}  # type name -> id
    types: List[LabelType] = []
    labels: List[Label] = []

    for mid in sorted(metadata, key=_via_sort_key):
        seg = metadata[mid]
        if not isinstance(seg, dict):
            raise MalformedDocument(f"metadata {mid} must be an object")
        z = seg.get("z", [])
        if not isinstance(z, list) or not z or len(z) > 2:
            continue  # spatial-only or malformed rows are not temporal segments
        try:
            times = [_seconds_to_us(float(v)) for v in z]
        except (TypeError, ValueError):
            warnings.append(f"metadata {mid}: non-numeric time, skipped")
            continue
        start, end = (times[0], times[-1])
        if end < start:
            warnings.append(f"metadata {mid}: reversed times, swapped")
            start, end = end, start
        if start < 0:
            warnings.append(f"metadata {mid}: negative time clamped")
            start, end = max(start, 0), max(end, 0)

        vid = str(seg.get("vid", ""))
        track_id = f"via_{vid}"
        if track_id not in track_ids:
            tracks.append(Track(id=track_id, name=f"timeline {vid}"))
            track_ids.add(track_id)

        av = seg.get("av", {})
        av = av if isinstance(av, dict) else {}
        type_name, attributes = _via_attributes(av, attrs)
        if type_name not in type_ids:
            type_ids[type_name] = f"type_{len(type_ids) + 1}"
            types.append(
                LabelType(
                    id=type_ids[type_name],
                    name=type_name,
                    color=_PALETTE[len(types) % len(_PALETTE)],
                )
            )
        labels.append(
            Label(
                id=str(mid),
                track_id=track_id,
                type_id=type_ids[type_name],
                start=start,
                end=end,
                attributes=attributes,
            )
        )

    dataset = Dataset(tracks=tuple(tracks), types=tuple(types), labels=tuple(labels))
    report = validate_dataset(dataset)
    if not report.ok:
        raise DatasetInvalid(report.violations)
    return dataset, warnings


def import_via(data) -> Dataset:
    return import_via_detailed(data)[0]


def _via_sort_key(key: str):
    key = str(key)
    return (0, int(key), key) if key.isdigit() else (1, 0, key)


def _seconds_to_us(seconds: float) -> TimePoint:
    scaled = seconds * US_PER_SECOND
    return int(math.floor(scaled + 0.5)) if scaled >= 0 else -int(math.floor(-scaled + 0.5))


def _via_attributes(av: Mapping, attrs: Mapping) -> Tuple[str, dict]:
    """Map a VIA av dict to (type name, label attributes).

    The first attribute (by numeric id) names the type; its value is resolved
    through the attribute's options table when present. Remaining attributes
    land in Label.attributes keyed by attribute name.
    """
    type_name = "event"
    attributes: dict = {}
    for n, aid in enumerate(sorted(av, key=_via_sort_key)):
        spec = attrs.get(str(aid), {})
        spec = spec if isinstance(spec, dict) else {}
        options = spec.get("options", {})
        raw = av[aid]
        value = options.get(str(raw), raw) if isinstance(options, dict) else raw
        value = value if isinstance(value, (str, int, float)) else str(value)
        if n == 0:
            type_name = str(value) or "event"
        else:
            attributes[str(spec.get("aname", aid))] = value
    return type_name, attributes


# --- SRT export -----------------------------------------------------------------


def _srt_timestamp(us: TimePoint) -> str:
    ms = div_round(us, 1000)
    h, rem = divmod(ms, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"


def _caption_text(label: Label, type_names: Mapping[str, str]) -> str:
    lines = [ln.strip() for ln in label.text.replace("\r", "").split("\n")]
    lines = [ln for ln in lines if ln]  # blank lines would end the cue early
    return "\n".join(lines) or type_names.get(label.type_id, label.type_id)


def export_srt(
    d: Dataset,
    track_ids: Optional[Iterable[str]] = None,
    min_caption_us: int = DEFAULT_MIN_CAPTION_US,
    duration: Optional[TimePoint] = None,
) -> str:
    """Render labels as SRT captions, 1-based indices in start order.

    Zero-length labels are widened to ``min_caption_us`` (clamped to the
    video end when a duration is given); labels with empty text fall back to
    their type name.
    """
    wanted = set(track_ids) if track_ids is not None else None
    type_names = {t.id: t.name for t in d.types}
    chosen = [l for l in d.labels if wanted is None or l.track_id in wanted]
    chosen.sort(key=lambda l: (l.start, l.id))
    blocks = []
    for n, label in enumerate(chosen, start=1):
        end = label.end
        if end == label.start:
            end = label.start + min_caption_us
        if duration is not None:
            end = min(end, duration)
        blocks.append(
            f"{n}\n{_srt_timestamp(label.start)} --> {_srt_timestamp(end)}\n"
            f"{_caption_text(label, type_names)}\n"
        )
    return "\n".join(blocks)


# --- cut-list export --------------------------------------------------------------

CUTLIST_HEADER = ("kind", "start_us", "end_us", "label_id", "type", "text")


def export_cutlist(d: Dataset, source: VideoSource) -> str:
    """Clip/frame extraction table for an external media processor.

    Times are source-local (timeline minus the source offset, clamped to the
    source). Interval labels become ``clip`` rows, point labels ``frame``
    rows with an empty end column.
    """
    type_names = {t.id: t.name for t in d.types}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CUTLIST_HEADER)
    for label in sorted(d.labels, key=lambda l: (l.start, l.id)):
        start = source.to_local(label.start)
        if label.is_point:
            writer.writerow(["frame", start, "", label.id, type_names.get(label.type_id, ""), label.text])
        else:
            end = source.to_local(label.end)
            writer.writerow(["clip", start, end, label.id, type_names.get(label.type_id, ""), label.text])
    return buf.getvalue()


# --- edit wire codec ----------------------------------------------------------------

_EDIT_OPS = {
    "create": Create,
    "delete": Delete,
    "move": Move,
    "resize": Resize,
    "set_text": SetText,
    "set_type": SetType,
    "set_attr": SetAttr,
    "set_track": SetTrack,
}


def edit_to_wire(e: Edit) -> dict:
    if isinstance(e, Create):
        doc = {
            "op": "create",
            "track_id": e.track_id,
            "type_id": e.type_id,
            "start": e.start,
            "end": e.end,
        }
        if e.id is not None:
            doc["id"] = e.id
        if e.text:
            doc["text"] = e.text
        if e.spatial.kind != "none":
            doc["spatial"] = {"kind": e.spatial.kind, "coords": list(e.spatial.coords)}
        if e.attributes:
            doc["attributes"] = {k: e.attributes[k] for k in sorted(e.attributes)}
        if e.index is not None:
            doc["index"] = e.index
        return doc
    if isinstance(e, Delete):
        return {"op": "delete", "id": e.id}
    if isinstance(e, Move):
        return {"op": "move", "id": e.id, "delta": e.delta}
    if isinstance(e, Resize):
        return {"op": "resize", "id": e.id, "edge": e.edge, "time": e.time}
    if isinstance(e, SetText):
        return {"op": "set_text", "id": e.id, "text": e.text}
    if isinstance(e, SetType):
        return {"op": "set_type", "id": e.id, "type_id": e.type_id}
    if isinstance(e, SetAttr):
        return {"op": "set_attr", "id": e.id, "key": e.key, "value": e.value}
    if isinstance(e, SetTrack):
        return {"op": "set_track", "id": e.id, "track_id": e.track_id}
    raise TypeError(f"not an edit: {e!r}")


def edit_from_wire(obj) -> Edit:
    if not isinstance(obj, dict):
        raise MalformedEdit("edit must be an object")
    op = obj.get("op")
    if op not in _EDIT_OPS:
        raise MalformedEdit(f"unknown op {op!r}")
    try:
        if op == "create":
            spatial = NO_SPATIAL
            if "spatial" in obj:
                spatial = SpatialPayload(obj["spatial"].get("kind", "none"), tuple(obj["spatial"].get("coords", ())))
            return Create(
                track_id=obj["track_id"],
                type_id=obj["type_id"],
                start=int(obj["start"]),
                end=int(obj["end"]),
                id=obj.get("id"),
                text=str(obj.get("text", "")),
                spatial=spatial,
                attributes=obj.get("attributes", {}),
                index=obj.get("index"),
            )
        if op == "delete":
            return Delete(obj["id"])
        if op == "move":
            return Move(obj["id"], int(obj["delta"]))
        if op == "resize":
            return Resize(obj["id"], obj["edge"], int(obj["time"]))
        if op == "set_text":
            return SetText(obj["id"], str(obj["text"]))
        if op == "set_type":
            return SetType(obj["id"], obj["type_id"])
        if op == "set_attr":
            return SetAttr(obj["id"], obj["key"], obj.get("value"))
        return SetTrack(obj["id"], obj["track_id"])
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedEdit(f"{op}: {exc}") from exc


# --- project files -------------------------------------------------------------------


def project_to_document(p: Project) -> dict:
    return {
        "id": p.id,
        "name": p.name,
        "primary_source_id": p.primary_source_id,
        "sources": [
            {
                "id": s.id,
                "uri": s.uri,
                "fps": {"num": s.fps.num, "den": s.fps.den},
                "duration": s.duration,
                "offset": s.offset,
                "width": s.width,
                "height": s.height,
            }
            for s in p.sources
        ],
        "dataset_refs": list(p.dataset_refs),
    }


def save_project(p: Project) -> bytes:
    return _dump(project_to_document(p))


def load_project(data) -> Project:
    doc = _parse(data)
    if not isinstance(doc, dict):
        raise MalformedDocument("project must be an object")
    sources = []
    for src in _require(doc, "sources", list, "project"):
        if not isinstance(src, dict):
            raise MalformedDocument("source must be an object")
        fps = src.get("fps", {})
        if not isinstance(fps, dict):
            raise MalformedDocument("source fps must be an object")
        try:
            sources.append(
                VideoSource(
                    id=_require(src, "id", str, "source"),
                    uri=_require(src, "uri", str, "source"),
                    fps=FrameRate(int(fps.get("num", 30)), int(fps.get("den", 1))),
                    duration=_require(src, "duration", int, "source"),
                    offset=int(src.get("offset", 0)),
                    width=int(src.get("width", 0)),
                    height=int(src.get("height", 0)),
                )
            )
        except ValueError as exc:
            raise MalformedDocument(str(exc)) from exc
    try:
        return Project(
            id=_require(doc, "id", str, "project"),
            name=_require(doc, "name", str, "project"),
            sources=tuple(sources),
            primary_source_id=_require(doc, "primary_source_id", str, "project"),
            dataset_refs=tuple(str(r) for r in doc.get("dataset_refs", [])),
        )
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from exc

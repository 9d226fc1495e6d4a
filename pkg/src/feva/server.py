"""HTTP service: projects, datasets, edit batches, media streaming, thumbnails.

Plain request/response JSON mirroring the native file schema; no push
channel (single-annotator scope). Dataset writes are serialized per dataset
id and guarded by an optimistic revision check, so a stale tab gets a 409
instead of clobbering newer edits. Byte-range streaming and frame extraction
keep the engine free of codec dependencies: ranges slice files directly and
thumbnails shell out to a configurable external command template.
"""

from __future__ import annotations

import json
import os
import re
import shlex
import subprocess
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from . import persistence
from .annotator import Create, apply_edit, next_label_id
from .errors import FevaError
from .keymap import UserConfig, load_config, save_config
from .model import (
    Dataset,
    FrameRate,
    LabelType,
    Project,
    Track,
    VideoSource,
    clamp,
    frame_index,
)

_RANGE_RE = re.compile(r"^bytes=(\d*)-(\d*)$")

DEFAULT_TRACKS = (Track("T1", "events"),)
DEFAULT_TYPES = (LabelType("Y1", "event", "#4363d8"),)


def handle_range_request(path: Path, range_header: Optional[str]) -> Tuple[int, Dict[str, str], bytes]:
    """Serve a file slice per the HTTP byte-range rules.

    Returns (status, headers, body): 200 full body without a Range header
    (or with one we ignore, e.g. multi-range), 206 with the exact requested
    slice, 416 with the total size when the range is unsatisfiable, 404 when
    the file is missing.
    """
    if not path.is_file():
        return 404, {"content-type": "application/json"}, b'{"error": "not_found"}'
    size = path.stat().st_size
    headers = {"accept-ranges": "bytes", "content-type": _content_type(path)}

    first = last = None
    if range_header:
        m = _RANGE_RE.match(range_header.strip())
        if m and (m.group(1) or m.group(2)):
            a, b = m.group(1), m.group(2)
            if a and b:
                first, last = int(a), min(int(b), size - 1)
            elif a:
                first, last = int(a), size - 1
            else:  # suffix form: last N bytes
                n = int(b)
                if n == 0:
                    first, last = size, size - 1  # forced unsatisfiable
                else:
                    first, last = max(size - n, 0), size - 1
            if first >= size or first > last:
                headers["content-range"] = f"bytes */{size}"
                return 416, headers, b""

    if first is None:
        with path.open("rb") as fh:
            body = fh.read()
        headers["content-length"] = str(size)
        return 200, headers, body

    with path.open("rb") as fh:
        fh.seek(first)
        body = fh.read(last - first + 1)
    headers["content-range"] = f"bytes {first}-{last}/{size}"
    headers["content-length"] = str(len(body))
    return 206, headers, body


def _content_type(path: Path) -> str:
    import mimetypes

    guess, _ = mimetypes.guess_type(str(path))
    return guess or "application/octet-stream"


@dataclass
class AppState:
    """Server-side storage: one directory of projects, datasets, and config.

    Layout under ``data_root``: projects/<id>.json, datasets/<id>.json,
    config.json, cache/thumbs/. Media files live under ``media_root``.
    """

    data_root: Path
    media_root: Path
    extractor_template: Optional[str] = None
    _datasets: Dict[str, Dataset] = field(default_factory=dict)
    _locks: Dict[str, threading.Lock] = field(default_factory=dict)
    _guard: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        self.data_root = Path(self.data_root)
        self.media_root = Path(self.media_root)
        (self.data_root / "projects").mkdir(parents=True, exist_ok=True)
        (self.data_root / "datasets").mkdir(parents=True, exist_ok=True)
        (self.data_root / "cache" / "thumbs").mkdir(parents=True, exist_ok=True)

    # --- projects ---------------------------------------------------------

    def project_path(self, project_id: str) -> Path:
        return self.data_root / "projects" / f"{_safe_name(project_id)}.json"

    def list_projects(self) -> List[Project]:
        out = []
        for path in sorted((self.data_root / "projects").glob("*.json")):
            out.append(persistence.load_project(path.read_bytes()))
        return out

    def load_project(self, project_id: str) -> Optional[Project]:
        path = self.project_path(project_id)
        if not path.is_file():
            return None
        return persistence.load_project(path.read_bytes())

    def save_project(self, project: Project) -> None:
        _atomic_write(self.project_path(project.id), persistence.save_project(project))

    def find_source(self, source_id: str) -> Optional[VideoSource]:
        for project in self.list_projects():
            source = project.source(source_id)
            if source is not None:
                return source
        return None

    # --- datasets ---------------------------------------------------------

    def dataset_path(self, dataset_id: str) -> Path:
        return self.data_root / "datasets" / f"{_safe_name(dataset_id)}.json"

    def dataset_lock(self, dataset_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(dataset_id, threading.Lock())

    def load_dataset(self, dataset_id: str) -> Optional[Dataset]:
        with self._guard:
            cached = self._datasets.get(dataset_id)
        if cached is not None:
            return cached
        path = self.dataset_path(dataset_id)
        if not path.is_file():
            return None
        dataset = persistence.load_dataset(path.read_bytes())
        with self._guard:
            self._datasets[dataset_id] = dataset
        return dataset

    def store_dataset(self, dataset_id: str, dataset: Dataset) -> None:
        _atomic_write(self.dataset_path(dataset_id), persistence.save_dataset(dataset))
        with self._guard:
            self._datasets[dataset_id] = dataset

    # --- config -----------------------------------------------------------

    def load_user_config(self) -> UserConfig:
        path = self.data_root / "config.json"
        return load_config(path.read_bytes() if path.is_file() else None)

    def store_user_config(self, cfg: UserConfig) -> None:
        _atomic_write(self.data_root / "config.json", save_config(cfg))

    # --- thumbnails ---------------------------------------------------------

    def thumbnail(self, source: VideoSource, t: int, width: int) -> Tuple[int, bytes, str]:
        """(status, body, detail). Extraction is cached per (source, frame, width)."""
        if not self.extractor_template:
            return 501, b"", "no frame extractor configured"
        frame = frame_index(clamp(t, 0, source.duration), source.fps)
        cached = self.data_root / "cache" / "thumbs" / f"{_safe_name(source.id)}_{frame}_{width}.img"
        if cached.is_file():
            return 200, cached.read_bytes(), ""
        seconds = clamp(t, 0, source.duration) / 1_000_000
        mapping = {
            "input": str(self.media_root / source.uri),
            "time": f"{seconds:.6f}",
            "width": str(width),
            "output": str(cached),
        }
        argv = [_substitute(token, mapping) for token in shlex.split(self.extractor_template)]
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=60)
        except (OSError, subprocess.TimeoutExpired) as exc:
            return 502, b"", str(exc)
        if proc.returncode != 0 or not cached.is_file():
            return 502, b"", proc.stderr.decode("utf-8", "replace")[:500]
        return 200, cached.read_bytes(), ""


def _substitute(token: str, mapping: Dict[str, str]) -> str:
    for key, value in mapping.items():
        token = token.replace("{%s}" % key, value)
    return token


def _safe_name(name: str) -> str:
    if not re.match(r"^[A-Za-z0-9._-]+$", name) or ".." in name:
        raise FevaError(f"unsafe identifier {name!r}")
    return name


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _error(status: int, code: str, **extra) -> JSONResponse:
    return JSONResponse({"error": code, **extra}, status_code=status)


def create_app(state: AppState, ui_root: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="feva", docs_url=None, redoc_url=None)
    app.state.engine = state

    @app.get("/api/projects")
    def list_projects():
        return [persistence.project_to_document(p) for p in state.list_projects()]

    @app.post("/api/projects")
    async def create_project(request: Request):
        body = await _json_body(request)
        if body is None or not isinstance(body, dict):
            return _error(400, "malformed_document")
        try:
            project, dataset_id = _new_project(body)
        except (FevaError, ValueError, KeyError, TypeError) as exc:
            return _error(400, "malformed_document", detail=str(exc))
        if state.load_project(project.id) is not None:
            return _error(409, "conflict", detail="project exists")
        state.save_project(project)
        state.store_dataset(
            dataset_id, Dataset(tracks=DEFAULT_TRACKS, types=DEFAULT_TYPES)
        )
        return persistence.project_to_document(project)

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        project = state.load_project(project_id)
        if project is None:
            return _error(404, "not_found")
        return persistence.project_to_document(project)

    @app.get("/api/projects/{project_id}/datasets/{dataset_id}")
    def get_dataset(project_id: str, dataset_id: str):
        dataset = _project_dataset(state, project_id, dataset_id)
        if dataset is None:
            return _error(404, "not_found")
        return Response(persistence.save_dataset(dataset), media_type="application/json")

    @app.put("/api/projects/{project_id}/datasets/{dataset_id}")
    async def put_dataset(project_id: str, dataset_id: str, request: Request):
        if _project_dataset(state, project_id, dataset_id) is None:
            return _error(404, "not_found")
        raw = await request.body()
        try:
            dataset = persistence.load_dataset(raw)
        except FevaError as exc:
            return _error(422, exc.code, detail=exc.detail)
        with state.dataset_lock(dataset_id):
            state.store_dataset(dataset_id, dataset)
        return {"revision": dataset.revision}

    @app.post("/api/projects/{project_id}/datasets/{dataset_id}/edits")
    async def post_edits(project_id: str, dataset_id: str, request: Request):
        project = state.load_project(project_id)
        if project is None or dataset_id not in project.dataset_refs:
            return _error(404, "not_found")
        body = await _json_body(request)
        if not isinstance(body, dict) or "base_revision" not in body or "edits" not in body:
            return _error(400, "malformed_document")
        duration = project.primary_source.duration
        with state.dataset_lock(dataset_id):
            dataset = state.load_dataset(dataset_id)
            if dataset is None:
                return _error(404, "not_found")
            if body["base_revision"] != dataset.revision:
                return _error(409, "conflict", revision=dataset.revision)
            working = dataset
            results = []
            for step, wire in enumerate(body["edits"]):
                try:
                    edit = persistence.edit_from_wire(wire)
                    if isinstance(edit, Create) and edit.id is None:
                        edit = replace(edit, id=next_label_id(working))
                    working, _ = apply_edit(working, edit, duration)
                except FevaError as exc:
                    return _error(422, exc.code, step=step, detail=exc.detail)
                results.append(_edit_result(working, edit))
            state.store_dataset(dataset_id, working)
        return {"revision": working.revision, "results": results}

    @app.get("/media/{source_id}/thumb")
    def get_thumbnail(source_id: str, t: int = 0, w: int = 320):
        source = state.find_source(source_id)
        if source is None:
            return _error(404, "not_found")
        if w <= 0:
            return _error(400, "malformed_document", detail="width must be positive")
        status, body, detail = state.thumbnail(source, t, w)
        if status != 200:
            return _error(status, "extractor_unavailable" if status == 501 else "extractor_failed", detail=detail)
        return Response(body, media_type="image/jpeg")

    @app.get("/media/{source_id}")
    def get_media(source_id: str, request: Request):
        source = state.find_source(source_id)
        if source is None:
            return _error(404, "not_found")
        path = (state.media_root / source.uri).resolve()
        if state.media_root.resolve() not in path.parents and path != state.media_root.resolve():
            return _error(404, "not_found")
        status, headers, body = handle_range_request(path, request.headers.get("range"))
        return Response(body, status_code=status, headers=headers)

    @app.get("/api/config")
    def get_config():
        return Response(save_config(state.load_user_config()), media_type="application/json")

    @app.put("/api/config")
    async def put_config(request: Request):
        raw = await request.body()
        try:
            cfg = load_config(raw)
        except FevaError as exc:
            return _error(422, exc.code, detail=exc.detail)
        state.store_user_config(cfg)
        return Response(save_config(cfg), media_type="application/json")

    if ui_root is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_root), html=True), name="ui")

    return app


async def _json_body(request: Request):
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        return None


def _project_dataset(state: AppState, project_id: str, dataset_id: str) -> Optional[Dataset]:
    project = state.load_project(project_id)
    if project is None or dataset_id not in project.dataset_refs:
        return None
    return state.load_dataset(dataset_id)


def _edit_result(dataset: Dataset, edit) -> dict:
    result = {"op": persistence.edit_to_wire(edit)["op"]}
    label_id = getattr(edit, "id", None)
    if label_id:
        result["label_id"] = label_id
        label = dataset.label(label_id)
        if label is not None:
            result["start"] = label.start
            result["end"] = label.end
    return result


def _new_project(body: dict) -> Tuple[Project, str]:
    project_id = _safe_name(str(body.get("id") or re.sub(r"[^A-Za-z0-9._-]+", "-", body["name"]).strip("-")))
    sources = []
    for src in body["sources"]:
        fps = src.get("fps", {"num": 30, "den": 1})
        sources.append(
            VideoSource(
                id=str(src["id"]),
                uri=str(src["uri"]),
                fps=FrameRate(int(fps["num"]), int(fps.get("den", 1))),
                duration=int(src["duration"]),
                offset=int(src.get("offset", 0)),
                width=int(src.get("width", 0)),
                height=int(src.get("height", 0)),
            )
        )
    dataset_id = f"{project_id}-labels"
    project = Project(
        id=project_id,
        name=str(body["name"]),
        sources=tuple(sources),
        primary_source_id=str(body.get("primary_source_id", sources[0].id if sources else "")),
        dataset_refs=(dataset_id,),
    )
    return project, dataset_id

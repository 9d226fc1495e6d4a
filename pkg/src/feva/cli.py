"""Command-line entry points: serve, convert, validate, replay.

Exit codes: 0 success, 1 operational failure (bad input file, failed
validation, replay error), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import persistence
from .errors import FevaError
from .keymap import load_config
from .model import FrameRate, VideoSource, validate_dataset
from .replay import replay_script

CONVERSIONS = {
    ("via", "feva"),
    ("feva", "feva"),
    ("feva", "srt"),
    ("feva", "cutlist"),
    ("via", "srt"),
    ("via", "cutlist"),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FevaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="feva", description="event video annotation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=int(os.environ.get("FEVA_PORT", "8765")))
    serve.add_argument("--host", default=os.environ.get("FEVA_HOST", "127.0.0.1"))
    serve.add_argument("--data-root", default=os.environ.get("FEVA_DATA_ROOT", "./feva-data"))
    serve.add_argument("--media-root", default=os.environ.get("FEVA_MEDIA_ROOT", "./media"))
    serve.add_argument(
        "--extractor",
        default=os.environ.get("FEVA_EXTRACTOR"),
        help="frame extractor command template with {input} {time} {width} {output}",
    )
    serve.add_argument(
        "--ui-root",
        default=os.environ.get("FEVA_UI_ROOT"),
        help="directory of built web UI files to serve at / (e.g. frontend/dist)",
    )
    serve.set_defaults(func=cmd_serve)

    convert = sub.add_parser("convert", help="convert between annotation formats")
    convert.add_argument("input", type=Path)
    convert.add_argument("output", type=Path)
    convert.add_argument("--from", dest="src", required=True, choices=["feva", "via"])
    convert.add_argument("--to", dest="dst", required=True, choices=["feva", "srt", "cutlist"])
    convert.add_argument("--project", type=Path, help="project file supplying the cut-list source")
    convert.add_argument("--source-id", help="which project source the cut-list targets")
    convert.set_defaults(func=cmd_convert)

    validate = sub.add_parser("validate", help="validate a native dataset file")
    validate.add_argument("dataset", type=Path)
    validate.set_defaults(func=cmd_validate)

    replay = sub.add_parser("replay", help="replay an interaction script headlessly")
    replay.add_argument("--script", type=Path, required=True)
    replay.add_argument("--project", type=Path, required=True)
    replay.add_argument("--dataset", type=Path, help="starting dataset (default: empty with one track/type)")
    replay.add_argument("--config", type=Path, help="user config (keymap, reaction, presets)")
    replay.add_argument("--setup", type=Path, help="uncounted prelude script")
    replay.add_argument("--out", type=Path, help="write the final dataset here")
    replay.add_argument("--report", action="store_true", help="print the event log as JSON")
    replay.set_defaults(func=cmd_replay)

    return parser


def cmd_serve(args, parser) -> int:
    import uvicorn

    from .server import AppState, create_app

    state = AppState(
        data_root=Path(args.data_root),
        media_root=Path(args.media_root),
        extractor_template=args.extractor,
    )
    ui_root = Path(args.ui_root) if args.ui_root else None
    if ui_root is not None and not ui_root.is_dir():
        print(f"error: --ui-root {ui_root} is not a directory", file=sys.stderr)
        return 1
    uvicorn.run(create_app(state, ui_root=ui_root), host=args.host, port=args.port, log_level="info")
    return 0


def cmd_convert(args, parser) -> int:
    if (args.src, args.dst) not in CONVERSIONS:
        parser.error(f"cannot convert {args.src} -> {args.dst}")
    raw = args.input.read_bytes()
    if args.src == "via":
        dataset, warnings = persistence.import_via_detailed(raw)
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)
    else:
        dataset = persistence.load_dataset(raw)

    if args.dst == "feva":
        args.output.write_bytes(persistence.save_dataset(dataset))
    elif args.dst == "srt":
        duration = _cutlist_source(args, dataset).duration if args.project else None
        args.output.write_text(persistence.export_srt(dataset, duration=duration), encoding="utf-8")
    else:
        args.output.write_text(
            persistence.export_cutlist(dataset, _cutlist_source(args, dataset)), encoding="utf-8"
        )
    return 0


def _cutlist_source(args, dataset) -> VideoSource:
    if args.project:
        project = persistence.load_project(args.project.read_bytes())
        source = project.source(args.source_id) if args.source_id else project.primary_source
        if source is None:
            raise FevaError(f"no source {args.source_id!r} in {args.project}")
        return source
    # no project context: a zero-offset stand-in spanning all labels
    horizon = max((l.end for l in dataset.labels), default=0) + 1
    return VideoSource(id="default", uri="", fps=FrameRate(30), duration=horizon)


def cmd_validate(args, parser) -> int:
    dataset = persistence.dataset_from_document(json.loads(args.dataset.read_bytes()))
    report = validate_dataset(dataset)
    if report.ok:
        print(f"{args.dataset}: ok ({len(dataset.labels)} labels, revision {dataset.revision})")
        return 0
    for violation in report.violations:
        detail = f" ({violation.detail})" if violation.detail else ""
        print(f"{args.dataset}: {violation.entity_id}: {violation.rule}{detail}")
    return 1


def cmd_replay(args, parser) -> int:
    project = persistence.load_project(args.project.read_bytes())
    dataset = persistence.load_dataset(args.dataset.read_bytes()) if args.dataset else _default_dataset()
    config = load_config(args.config.read_bytes() if args.config else None)
    setup = args.setup.read_text(encoding="utf-8") if args.setup else None

    result = replay_script(
        args.script.read_text(encoding="utf-8"), project, dataset, config, setup=setup
    )

    if args.out:
        args.out.write_bytes(persistence.save_dataset(result.dataset))
    if args.report:
        print(json.dumps({"input_count": result.input_count, "events": result.event_log}, indent=2))
    else:
        print(f"input_count: {result.input_count}")
        print(f"labels: {len(result.dataset.labels)}")
        print(f"revision: {result.dataset.revision}")
    return 0


def _default_dataset():
    from .server import DEFAULT_TRACKS, DEFAULT_TYPES
    from .model import Dataset

    return Dataset(tracks=DEFAULT_TRACKS, types=DEFAULT_TYPES)


if __name__ == "__main__":
    sys.exit(main())

"""Deterministic replay of interaction scripts against the headless engine.

A script is one input event per line (``key a``, ``wait 3000000``,
``dblclick timeline 5000000``...). ``wait`` advances the virtual clock and
does not count as an input; every other step counts exactly one. The count
of non-wait steps is the script's interaction cost, so keystroke budgets are
executable fixtures instead of hand tallies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .annotator import Create, END, START
from .errors import (
    FevaError,
    NothingToRedo,
    NothingToUndo,
    ReplayError,
)
from .keymap import Action, UserConfig
from .model import Dataset, Project, frame_step
from .session import Session

_TARGET_KINDS = ("track", "label", "timeline", "labellist")


@dataclass(frozen=True)
class InputEvent:
    kind: str  # key | click | dblclick | scroll | wait
    chord: Optional[str] = None
    target_kind: Optional[str] = None
    target: Optional[str] = None
    amount: int = 0

    @property
    def counts_as_input(self) -> bool:
        return self.kind != "wait"


@dataclass
class ReplayResult:
    dataset: Dataset
    input_count: int
    event_log: List[dict] = field(default_factory=list)
    session: Optional[Session] = None


def parse_script(text: str) -> Tuple[InputEvent, ...]:
    """Parse the line-oriented script format; blank lines and # comments skip."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "key" and len(args) == 1:
                events.append(InputEvent("key", chord=args[0]))
            elif kind == "wait" and len(args) == 1:
                amount = int(args[0])
                if amount < 0:
                    raise ValueError("negative wait")
                events.append(InputEvent("wait", amount=amount))
            elif kind == "scroll" and len(args) == 1:
                events.append(InputEvent("scroll", amount=int(args[0])))
            elif kind in ("click", "dblclick") and len(args) == 2 and args[0] in _TARGET_KINDS:
                events.append(InputEvent(kind, target_kind=args[0], target=args[1]))
            else:
                raise ValueError("unrecognized event")
        except ValueError as exc:
            raise ReplayError(len(events), f"line {lineno}: {exc} ({line!r})") from exc
    return tuple(events)


def replay_script(
    script,
    project: Project,
    dataset: Dataset,
    config: Optional[UserConfig] = None,
    setup=None,
) -> ReplayResult:
    """Drive a fresh session through a script; returns the outcome and cost.

    ``setup`` is an optional prelude script replayed first whose steps do not
    count (priming state for a task whose cost is being measured).
    """
    config = config or UserConfig()
    source = project.primary_source
    session = Session.start(dataset, source.duration, source.fps, config.reaction)

    log: List[dict] = []
    if setup is not None:
        setup_events = parse_script(setup) if isinstance(setup, str) else tuple(setup)
        session = _run(session, setup_events, config, log, counted=False)

    events = parse_script(script) if isinstance(script, str) else tuple(script)
    session = _run(session, events, config, log, counted=True)

    input_count = sum(1 for e in events if e.counts_as_input)
    return ReplayResult(dataset=session.dataset, input_count=input_count, event_log=log, session=session)


def _run(session: Session, events, config: UserConfig, log: List[dict], counted: bool) -> Session:
    for step, event in enumerate(events):
        before = session
        entry = {
            "step": step if counted else -1,
            "event": _format_event(event),
            "counted": counted and event.counts_as_input,
        }
        try:
            session = _apply_event(session, event, config)
        except (NothingToUndo, NothingToRedo) as exc:
            entry["warning"] = exc.code  # non-fatal by contract
        except ReplayError:
            raise
        except FevaError as exc:
            raise ReplayError(step, exc.code + (f": {exc.detail}" if exc.detail else "")) from exc
        entry["position"] = session.transport.position
        entry["revision"] = session.dataset.revision
        _describe_commit(before, session, entry)
        log.append(entry)
    return session


def _format_event(event: InputEvent) -> str:
    if event.kind == "key":
        return f"key {event.chord}"
    if event.kind == "wait":
        return f"wait {event.amount}"
    if event.kind == "scroll":
        return f"scroll {event.amount}"
    return f"{event.kind} {event.target_kind} {event.target}"


def _describe_commit(before: Session, after: Session, entry: dict) -> None:
    if after.dataset.revision <= before.dataset.revision or not after.history.undo_stack:
        return
    edit = after.history.undo_stack[-1][0]
    entry["edit"] = type(edit).__name__.lower()
    label_id = getattr(edit, "id", None) or after.selected_id
    if label_id is not None:
        entry["label_id"] = label_id
        label = after.dataset.label(label_id)
        if label is not None:
            entry["start"] = label.start
            entry["end"] = label.end


def _apply_event(session: Session, event: InputEvent, config: UserConfig) -> Session:
    if event.kind == "wait":
        return session.tick(event.amount)
    if event.kind == "scroll":
        return _nudge_playhead(session, event.amount)
    if event.kind == "key":
        action = config.keymap.resolve(event.chord)
        if action is None:
            raise FevaError(f"unbound chord {event.chord!r}")
        return _apply_action(session, action, config)
    return _apply_pointer(session, event)


def _apply_pointer(session: Session, event: InputEvent) -> Session:
    kind, target = event.target_kind, event.target
    if kind == "timeline":
        try:
            return session.seek(int(target))
        except ValueError:
            raise FevaError(f"timeline target must be microseconds, got {target!r}") from None
    if kind == "track":
        if session.dataset.track(target) is None:
            raise FevaError(f"no track {target!r}")
        session = session.set_active_track(target)
        if event.kind == "dblclick":
            # open a label at the playhead, one frame long by default
            position = session.transport.position
            end = frame_step(position, session.transport.fps, +1, session.transport.duration)
            session, edit = session.commit(
                Create(target, session.speed.active_type_id, position, max(end, position))
            )
            session = session.select(edit.id)
        return session
    if kind in ("label", "labellist"):
        label = session.dataset.label(target)
        if label is None:
            raise FevaError(f"no label {target!r}")
        session = session.select(target)
        if event.kind == "dblclick":
            session = session.seek(label.start)
        return session
    raise FevaError(f"unknown target kind {kind!r}")


def _nudge_playhead(session: Session, frames: int) -> Session:
    position = frame_step(
        session.transport.position, session.transport.fps, frames, session.transport.duration
    )
    return session.seek(position)


def _apply_action(session: Session, action: Action, config: UserConfig) -> Session:
    if action is Action.PLAY_PAUSE:
        return session.toggle_play()
    if action is Action.MARK:
        return session.mark()
    if action is Action.UNDO:
        return session.undo()
    if action is Action.REDO:
        return session.redo()
    if action is Action.FINE_TUNE_START_BACK:
        return session.fine_tune_selected(START, -1)
    if action is Action.FINE_TUNE_START_FWD:
        return session.fine_tune_selected(START, +1)
    if action is Action.FINE_TUNE_END_BACK:
        return session.fine_tune_selected(END, -1)
    if action is Action.FINE_TUNE_END_FWD:
        return session.fine_tune_selected(END, +1)
    if action is Action.STEP_BACK:
        return _nudge_playhead(session, -1)
    if action is Action.STEP_FWD:
        return _nudge_playhead(session, +1)
    if action is Action.BIG_STEP_BACK:
        return session.seek(session.transport.position - 1_000_000)
    if action is Action.BIG_STEP_FWD:
        return session.seek(session.transport.position + 1_000_000)
    if action is Action.RATE_UP:
        return _shift_rate(session, +1, config)
    if action is Action.RATE_DOWN:
        return _shift_rate(session, -1, config)
    if action is Action.DELETE_SELECTED:
        return session.delete_selected()
    if action is Action.SEARCH_FOCUS:
        return session  # focus is a UI concern; the input still counts
    if action is Action.CANCEL_MARK:
        return session.cancel_pending()
    raise FevaError(f"unhandled action {action}")


def _shift_rate(session: Session, direction: int, config: UserConfig) -> Session:
    ladder = sorted(config.rate_presets)
    rate = session.transport.rate
    if rate in ladder:
        index = ladder.index(rate)
    else:
        index = min(range(len(ladder)), key=lambda i: abs(ladder[i] - rate))
    index = max(0, min(len(ladder) - 1, index + direction))
    return session.set_rate(ladder[index], presets=tuple(ladder))

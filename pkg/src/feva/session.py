"""One annotator's working state: dataset, playback head, history, selection.

The session is an immutable value; every operation returns a new one. The
replay harness and any embedding UI drive the engine exclusively through
these methods, so edit streams are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

from . import history as history_ops
from . import transport as transport_ops
from .annotator import (
    Create,
    Delete,
    Edit,
    ReactionConfig,
    SpeedLabelState,
    apply_edit,
    fine_tune_edit,
    mark_times,
    next_label_id,
)
from .errors import NoActiveTrack, NoSelection
from .history import History
from .model import Dataset, FrameRate, TimePoint
from .transport import TransportState


@dataclass(frozen=True)
class Session:
    dataset: Dataset
    transport: TransportState
    history: History = History()
    speed: SpeedLabelState = SpeedLabelState()
    reaction: ReactionConfig = ReactionConfig()
    selected_id: Optional[str] = None

    @classmethod
    def start(
        cls,
        dataset: Dataset,
        duration: TimePoint,
        fps: FrameRate,
        reaction: ReactionConfig = ReactionConfig(),
    ) -> "Session":
        """New session positioned at zero; first track and type are active."""
        speed = SpeedLabelState(
            active_track_id=dataset.tracks[0].id if dataset.tracks else None,
            active_type_id=dataset.types[0].id if dataset.types else None,
        )
        return cls(
            dataset=dataset,
            transport=TransportState(duration=duration, fps=fps),
            speed=speed,
            reaction=reaction,
        )

    # --- edits ----------------------------------------------------------

    def commit(self, edit: Edit) -> Tuple["Session", Edit]:
        """Apply one edit through history; returns the resolved edit.

        Creates with id=None get their id allocated here so the recorded
        edit replays to the same id on redo.
        """
        if isinstance(edit, Create) and edit.id is None:
            edit = replace(edit, id=next_label_id(self.dataset))
        dataset, inverse = apply_edit(self.dataset, edit, self.transport.duration)
        hist = history_ops.record(self.history, edit, inverse)
        return replace(self, dataset=dataset, history=hist), edit

    def undo(self) -> "Session":
        hist, dataset = history_ops.undo(self.history, self.dataset, self.transport.duration)
        return replace(self, dataset=dataset, history=hist)

    def redo(self) -> "Session":
        hist, dataset = history_ops.redo(self.history, self.dataset, self.transport.duration)
        return replace(self, dataset=dataset, history=hist)

    # --- speed labeling ---------------------------------------------------

    def mark(self) -> "Session":
        """Press of the mark key: open a pending start, or commit the label."""
        if not self.speed.active_track_id or not self.speed.active_type_id:
            raise NoActiveTrack("set an active track and type before marking")
        speed, times = mark_times(self.speed, self.transport, self.reaction)
        session = replace(self, speed=speed)
        if times is None:
            return session
        start, end = times
        session, edit = session.commit(
            Create(self.speed.active_track_id, self.speed.active_type_id, start, end)
        )
        return replace(session, selected_id=edit.id)

    def set_active_track(self, track_id: str) -> "Session":
        """Switch the mark target; discards any pending start from another track."""
        speed = self.speed
        if speed.pending_start is not None and track_id != speed.active_track_id:
            speed = replace(speed, pending_start=None, cancelled=True)
        return replace(self, speed=replace(speed, active_track_id=track_id))

    def set_active_type(self, type_id: str) -> "Session":
        return replace(self, speed=replace(self.speed, active_type_id=type_id))

    def cancel_pending(self) -> "Session":
        return replace(self, speed=replace(self.speed, pending_start=None, cancelled=False))

    # --- selection-driven edits --------------------------------------------

    def select(self, label_id: Optional[str]) -> "Session":
        return replace(self, selected_id=label_id)

    def fine_tune_selected(self, edge: str, delta_frames: int) -> "Session":
        if self.selected_id is None:
            raise NoSelection("fine-tune needs a selected label")
        edit = fine_tune_edit(
            self.dataset,
            self.selected_id,
            edge,
            delta_frames,
            self.transport.fps,
            self.transport.duration,
        )
        if edit is None:
            return self  # clamped to a no-op; nothing to record
        session, _ = self.commit(edit)
        return session

    def delete_selected(self) -> "Session":
        if self.selected_id is None:
            raise NoSelection("delete needs a selected label")
        session, _ = self.commit(Delete(self.selected_id))
        return replace(session, selected_id=None)

    # --- transport ----------------------------------------------------------

    def tick(self, wall_delta: int) -> "Session":
        return replace(self, transport=transport_ops.tick(self.transport, wall_delta))

    def seek(self, t: TimePoint) -> "Session":
        return replace(self, transport=transport_ops.seek(self.transport, t))

    def toggle_play(self) -> "Session":
        return replace(self, transport=transport_ops.toggle_play(self.transport))

    def set_rate(self, rate, presets=transport_ops.DEFAULT_RATE_PRESETS) -> "Session":
        return replace(self, transport=transport_ops.set_rate(self.transport, rate, presets))

"""Session glue: commits through history, speed-label flow, selection."""

from __future__ import annotations

import pytest

from feva.annotator import Create, ReactionConfig
from feva.errors import NoActiveTrack, NoSelection
from feva.model import Dataset, FrameRate
from feva.session import Session
from .util import small_dataset

SECOND = 1_000_000


def fresh(dataset=None, delta_r=0) -> Session:
    return Session.start(
        dataset if dataset is not None else small_dataset(n_tracks=2),
        duration=60 * SECOND,
        fps=FrameRate(25),
        reaction=ReactionConfig(delta_r_us=delta_r),
    )


def test_start_activates_first_track_and_type():
    s = fresh()
    assert s.speed.active_track_id == "T1"
    assert s.speed.active_type_id == "Y1"


def test_mark_requires_active_track():
    s = Session.start(Dataset(), duration=SECOND, fps=FrameRate(25))
    with pytest.raises(NoActiveTrack):
        s.mark()


def test_mark_commit_selects_new_label_and_is_undoable():
    s = fresh().toggle_play().tick(2 * SECOND).mark().tick(SECOND).mark()
    assert s.selected_id == "L1"
    assert [(l.start, l.end) for l in s.dataset.labels] == [(2 * SECOND, 3 * SECOND)]
    undone = s.undo()
    assert undone.dataset.labels == ()
    redone = undone.redo()
    assert redone.dataset.labels[0].id == "L1"


def test_track_switch_cancels_pending_and_flags_it():
    s = fresh().mark()
    assert s.speed.pending_start is not None
    s = s.set_active_track("T2")
    assert s.speed.pending_start is None
    assert s.speed.cancelled
    s = s.mark()  # starts a new pair on T2; flag clears
    assert not s.speed.cancelled
    assert s.speed.pending_start is not None


def test_same_track_reactivation_keeps_pending():
    s = fresh().mark().set_active_track("T1")
    assert s.speed.pending_start is not None


def test_fine_tune_and_delete_need_selection():
    s = fresh()
    with pytest.raises(NoSelection):
        s.fine_tune_selected("start", -1)
    with pytest.raises(NoSelection):
        s.delete_selected()


def test_fine_tune_selected_commits_through_history():
    s = fresh().mark().tick(0).mark()  # point label at 0
    s = s.seek(10 * SECOND).mark().tick(0)  # pending discarded below
    s = s.cancel_pending()
    s = s.select("L1").fine_tune_selected("end", +1)
    assert s.dataset.label("L1").end == 40_000
    s = s.undo()
    assert s.dataset.label("L1").end == 0


def test_delete_selected_clears_selection():
    s = fresh().mark().mark()
    s = s.delete_selected()
    assert s.selected_id is None
    assert s.dataset.labels == ()


def test_commit_resolves_create_ids_for_exact_redo():
    s = fresh()
    s, edit = s.commit(Create("T1", "Y1", 0, SECOND))
    assert edit.id == "L1"
    recorded = s.history.undo_stack[-1][0]
    assert recorded.id == "L1"

"""Script replay: speed labeling end to end, interaction counts, determinism."""

from __future__ import annotations

import json

import pytest

from feva.annotator import ReactionConfig
from feva.errors import ReplayError
from feva.keymap import UserConfig, load_config
from feva.model import FrameRate, Project, VideoSource
from feva.persistence import save_dataset
from feva.replay import parse_script, replay_script
from feva.transport import tick
from .util import small_dataset

SECOND = 1_000_000


def project(duration=60 * SECOND, fps=FrameRate(30)) -> Project:
    return Project(
        id="P1",
        name="demo",
        sources=(VideoSource("S1", "bunny.mp4", fps, duration),),
        primary_source_id="S1",
    )


def cfg(delta_r=0) -> UserConfig:
    return UserConfig(reaction=ReactionConfig(delta_r_us=delta_r))


def test_parse_script_skips_comments_and_blanks():
    events = parse_script("# setup\n\nkey a\nwait 1000\nscroll -3\ndblclick timeline 5\n")
    assert [e.kind for e in events] == ["key", "wait", "scroll", "dblclick"]


def test_parse_script_rejects_junk():
    with pytest.raises(ReplayError):
        parse_script("warp 9")
    with pytest.raises(ReplayError):
        parse_script("wait -5")
    with pytest.raises(ReplayError):
        parse_script("click nowhere X")


def test_speed_label_during_playback():
    script = "key space\nwait 5000000\nkey a\nwait 3000000\nkey a\nkey space\n"
    out = replay_script(script, project(), small_dataset(), cfg())
    assert out.input_count == 4
    assert [(l.start, l.end) for l in out.dataset.labels] == [(5 * SECOND, 8 * SECOND)]
    assert not out.session.transport.playing


def test_speed_label_with_compensation():
    script = "key space\nwait 5000000\nkey a\nwait 3000000\nkey a\n"
    out = replay_script(script, project(), small_dataset(), cfg(delta_r=300_000))
    label = out.dataset.labels[0]
    assert (label.start, label.end) == (4_700_000, 7_700_000)
    # the committed times are echoed in the event log for UI reconciliation
    commit = [e for e in out.event_log if e.get("edit") == "create"]
    assert commit and (commit[0]["start"], commit[0]["end"]) == (4_700_000, 7_700_000)


def test_two_marks_while_paused_make_point_label():
    out = replay_script("key a\nkey a\n", project(), small_dataset(), cfg())
    assert out.input_count == 2
    label = out.dataset.labels[0]
    assert label.start == label.end == 0


def test_play_pause_single_input():
    out = replay_script("key space\n", project(), small_dataset(), cfg())
    assert out.input_count == 1
    assert out.session.transport.playing


def test_navigate_single_input():
    out = replay_script("dblclick timeline 5000000\n", project(), small_dataset(), cfg())
    assert out.input_count == 1
    assert out.session.transport.position == 5 * SECOND


def test_undo_redo_two_inputs_with_setup():
    out = replay_script(
        "key ctrl+z\nkey ctrl+y\n",
        project(),
        small_dataset(),
        cfg(),
        setup="key a\nkey a\n",
    )
    assert out.input_count == 2
    assert len(out.dataset.labels) == 1
    undo_entry = [e for e in out.event_log if e["event"] == "key ctrl+z"][0]
    assert undo_entry["revision"] > 0


def test_undo_on_empty_history_is_nonfatal():
    out = replay_script("key ctrl+z\n", project(), small_dataset(), cfg())
    assert out.event_log[0]["warning"] == "nothing_to_undo"
    assert out.input_count == 1


def test_unbound_chord_names_step():
    with pytest.raises(ReplayError) as err:
        replay_script("key space\nkey q\n", project(), small_dataset(), cfg())
    assert err.value.step == 1


def test_unresolvable_target_names_step():
    with pytest.raises(ReplayError) as err:
        replay_script("click label LX\n", project(), small_dataset(), cfg())
    assert err.value.step == 0


def test_dblclick_track_opens_one_frame_label():
    script = "dblclick timeline 1000000\ndblclick track T1\n"
    out = replay_script(script, project(fps=FrameRate(25)), small_dataset(), cfg())
    label = out.dataset.labels[0]
    assert (label.start, label.end) == (1_000_000, 1_040_000)
    assert out.session.selected_id == label.id


def test_fine_tune_selected_label_via_keys():
    script = "key a\nkey a\nkey rshift+right\nkey rshift+right\nkey lshift+left\n"
    out = replay_script(script, project(fps=FrameRate(25)), small_dataset(), cfg())
    label = out.dataset.labels[0]
    # two end-nudges forward, one start-nudge back (clamped at 0)
    assert (label.start, label.end) == (0, 80_000)
    assert out.input_count == 5


def test_scroll_scrubs_by_frames():
    out = replay_script("scroll 10\nscroll -4\n", project(fps=FrameRate(25)), small_dataset(), cfg())
    assert out.session.transport.position == 6 * 40_000


def test_rate_ladder_up_then_down():
    out = replay_script("key up\nkey up\nkey down\n", project(), small_dataset(), cfg())
    assert out.session.transport.rate == 2


def test_reverse_play_marks_normalize():
    script = (
        "dblclick timeline 8000000\nkey down\nkey down\nkey down\nkey space\n"
        "key a\nwait 3000000\nkey a\n"
    )
    out = replay_script(script, project(), small_dataset(), cfg())
    label = out.dataset.labels[0]
    assert (label.start, label.end) == (5 * SECOND, 8 * SECOND)


def test_track_switch_cancels_pending_mark():
    d = small_dataset(n_tracks=2)
    script = "key a\nclick track T2\nkey a\nkey a\n"
    out = replay_script(script, project(), d, cfg())
    # the pending start on T1 was discarded; only the T2 pair committed
    assert len(out.dataset.labels) == 1
    assert out.dataset.labels[0].track_id == "T2"


def test_replay_is_deterministic_bytes():
    script = "key space\nwait 5000000\nkey a\nwait 3000000\nkey a\nscroll -7\nkey a\nkey a\n"
    config = load_config(json.dumps({"reaction": {"delta_r_us": 250000}}).encode())
    one = replay_script(script, project(), small_dataset(), config)
    two = replay_script(script, project(), small_dataset(), config)
    assert save_dataset(one.dataset) == save_dataset(two.dataset)
    assert one.event_log == two.event_log


def test_event_log_times_match_engine_tick_math():
    config = cfg(delta_r=100_000)
    script = "key space\nwait 2500000\nkey a\nwait 1000000\nkey a\n"
    out = replay_script(script, project(), small_dataset(), config)
    start_session = tick(
        tick(out.session.transport.__class__(duration=60 * SECOND, fps=FrameRate(30), playing=True), 2_500_000),
        0,
    )
    assert start_session.position == 2_500_000
    label = out.dataset.labels[0]
    assert (label.start, label.end) == (2_400_000, 3_400_000)

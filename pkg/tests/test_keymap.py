"""Chord normalization, default bindings, config load/save."""

from __future__ import annotations

import json

import pytest

from feva.annotator import ReactionConfig
from feva.errors import DuplicateBinding, MalformedConfig
from feva.keymap import (
    Action,
    Keymap,
    UserConfig,
    default_keymap,
    load_config,
    normalize_chord,
    save_config,
)
from feva.transport import as_rate


def test_normalize_orders_modifiers_and_lowercases():
    assert normalize_chord("Ctrl+Z") == "ctrl+z"
    assert normalize_chord("shift + ctrl + a") == "ctrl+shift+a"
    assert normalize_chord("LShift+Left") == "lshift+left"
    assert normalize_chord("SPACE") == "space"


def test_normalize_rejects_unknown_parts():
    with pytest.raises(MalformedConfig):
        normalize_chord("hyper+x")
    with pytest.raises(MalformedConfig):
        normalize_chord("ctrl+wobble")
    with pytest.raises(MalformedConfig):
        normalize_chord("ctrl+")


def test_default_spacebar_plays():
    assert default_keymap().resolve("space") is Action.PLAY_PAUSE


def test_default_a_marks():
    assert default_keymap().resolve("a") is Action.MARK


def test_default_shift_arrows_fine_tune():
    km = default_keymap()
    assert km.resolve("lshift+left") is Action.FINE_TUNE_START_BACK
    assert km.resolve("lshift+right") is Action.FINE_TUNE_START_FWD
    assert km.resolve("rshift+left") is Action.FINE_TUNE_END_BACK
    assert km.resolve("rshift+right") is Action.FINE_TUNE_END_FWD


def test_default_undo_redo_conventions():
    km = default_keymap()
    assert km.resolve("ctrl+z") is Action.UNDO
    assert km.resolve("ctrl+y") is Action.REDO


def test_defaults_cover_every_action():
    assert set(default_keymap().bindings.values()) == set(Action)


def test_resolve_unbound_chord_is_none():
    assert default_keymap().resolve("ctrl+alt+q") is None
    assert default_keymap().resolve("!! not a chord !!") is None


def test_empty_config_gives_full_defaults():
    assert load_config(b"") == UserConfig()
    assert load_config(b"{}") == UserConfig()
    assert load_config(None) == UserConfig()


def test_rebinding_replaces_all_chords_for_the_action():
    cfg = load_config(json.dumps({"keymap": {"m": "mark"}}).encode())
    assert cfg.keymap.resolve("m") is Action.MARK
    assert cfg.keymap.resolve("a") is None
    assert cfg.keymap.resolve("space") is Action.PLAY_PAUSE  # untouched default


def test_duplicate_chord_rejected():
    raw = '{"keymap": {"space": "mark", "space": "undo"}}'
    with pytest.raises(DuplicateBinding):
        load_config(raw.encode())


def test_unknown_action_named_in_error():
    with pytest.raises(MalformedConfig) as err:
        load_config(json.dumps({"keymap": {"m": "teleport"}}).encode())
    assert "teleport" in str(err.value)


def test_unknown_chord_named_in_error():
    with pytest.raises(MalformedConfig) as err:
        load_config(json.dumps({"keymap": {"bogus+x": "mark"}}).encode())
    assert "bogus" in str(err.value)


def test_reaction_and_presets_sections():
    raw = json.dumps({
        "reaction": {"delta_r_us": 300000, "scale_by_rate": False},
        "transport": {"rate_presets": [-2, -1, "1/3", 0.5, 1, 2]},
    })
    cfg = load_config(raw.encode())
    assert cfg.reaction == ReactionConfig(delta_r_us=300000, scale_by_rate=False)
    assert as_rate("1/3") in cfg.rate_presets
    assert as_rate("1/2") in cfg.rate_presets


def test_reaction_rejects_unknown_keys_and_bad_values():
    with pytest.raises(MalformedConfig):
        load_config(json.dumps({"reaction": {"delta_r": 1}}).encode())
    with pytest.raises(MalformedConfig):
        load_config(json.dumps({"reaction": {"delta_r_us": 9_000_000}}).encode())
    with pytest.raises(MalformedConfig):
        load_config(json.dumps({"transport": {"rate_presets": [0]}}).encode())
    with pytest.raises(MalformedConfig):
        load_config(json.dumps({"surprise": {}}).encode())


def test_save_load_identity():
    cfg = load_config(json.dumps({
        "keymap": {"m": "mark", "p": "play_pause"},
        "reaction": {"delta_r_us": 125000},
        "transport": {"rate_presets": [-1, "1/3", 1, 2]},
    }).encode())
    assert load_config(save_config(cfg)) == cfg
    assert load_config(save_config(UserConfig())) == UserConfig()
    # canonical serialization is byte-stable
    assert save_config(load_config(save_config(cfg))) == save_config(cfg)


def test_keymap_resolve_is_pure_lookup():
    km = Keymap({"ctrl+x": Action.DELETE_SELECTED})
    assert km.resolve("Ctrl+X") is Action.DELETE_SELECTED
    assert km.resolve("x") is None

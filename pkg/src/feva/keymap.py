"""User-configurable key bindings plus the persisted user config.

A chord is "modifiers+key" normalized to lowercase with modifiers in a
canonical order ("ctrl+z", "lshift+left", "space"). Left and right shift are
distinct modifiers because each one targets a different label edge during
fine-tuning. Foot pedals need no special path: pedal events arrive as
synthetic chords.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Mapping, Optional, Tuple

from .annotator import ReactionConfig
from .errors import DuplicateBinding, MalformedConfig
from .transport import DEFAULT_RATE_PRESETS, as_rate


class Action(str, Enum):
    PLAY_PAUSE = "play_pause"
    MARK = "mark"
    UNDO = "undo"
    REDO = "redo"
    FINE_TUNE_START_BACK = "fine_tune_start_back"
    FINE_TUNE_START_FWD = "fine_tune_start_fwd"
    FINE_TUNE_END_BACK = "fine_tune_end_back"
    FINE_TUNE_END_FWD = "fine_tune_end_fwd"
    STEP_BACK = "step_back"
    STEP_FWD = "step_fwd"
    BIG_STEP_BACK = "big_step_back"
    BIG_STEP_FWD = "big_step_fwd"
    RATE_UP = "rate_up"
    RATE_DOWN = "rate_down"
    DELETE_SELECTED = "delete_selected"
    SEARCH_FOCUS = "search_focus"
    CANCEL_MARK = "cancel_mark"


_MODIFIER_ORDER = ("ctrl", "alt", "meta", "shift", "lshift", "rshift")

_NAMED_KEYS = frozenset(
    {
        "space", "enter", "tab", "escape", "backspace", "delete", "insert",
        "home", "end", "pageup", "pagedown", "left", "right", "up", "down",
        "minus", "plus", "comma", "period", "slash", "backslash",
    }
    | {f"f{i}" for i in range(1, 13)}
)


def normalize_chord(raw: str) -> str:
    """Canonical form of a chord string; raises MalformedConfig when invalid."""
    parts = [p.strip().lower() for p in raw.split("+")]
    if not parts or any(not p for p in parts):
        raise MalformedConfig(f"bad chord {raw!r}")
    *mods, key = parts
    for mod in mods:
        if mod not in _MODIFIER_ORDER:
            raise MalformedConfig(f"unknown modifier {mod!r} in chord {raw!r}")
    if len(set(mods)) != len(mods):
        raise MalformedConfig(f"repeated modifier in chord {raw!r}")
    if key in _MODIFIER_ORDER or not (key in _NAMED_KEYS or len(key) == 1):
        raise MalformedConfig(f"unknown key {key!r} in chord {raw!r}")
    ordered = [m for m in _MODIFIER_ORDER if m in mods]
    return "+".join(ordered + [key])


@dataclass(frozen=True)
class Keymap:
    bindings: Mapping[str, Action] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "bindings", dict(self.bindings))

    def resolve(self, chord: str) -> Optional[Action]:
        try:
            return self.bindings.get(normalize_chord(chord))
        except MalformedConfig:
            return None


_DEFAULT_BINDINGS: Tuple[Tuple[str, Action], ...] = (
    ("space", Action.PLAY_PAUSE),
    ("a", Action.MARK),
    ("ctrl+z", Action.UNDO),
    ("ctrl+y", Action.REDO),
    ("lshift+left", Action.FINE_TUNE_START_BACK),
    ("lshift+right", Action.FINE_TUNE_START_FWD),
    ("rshift+left", Action.FINE_TUNE_END_BACK),
    ("rshift+right", Action.FINE_TUNE_END_FWD),
    ("left", Action.STEP_BACK),
    ("right", Action.STEP_FWD),
    ("ctrl+left", Action.BIG_STEP_BACK),
    ("ctrl+right", Action.BIG_STEP_FWD),
    ("up", Action.RATE_UP),
    ("down", Action.RATE_DOWN),
    ("delete", Action.DELETE_SELECTED),
    ("ctrl+f", Action.SEARCH_FOCUS),
    ("escape", Action.CANCEL_MARK),
)


def default_keymap() -> Keymap:
    km = Keymap(dict(_DEFAULT_BINDINGS))
    missing = {a for a in Action} - set(km.bindings.values())
    assert not missing, f"default keymap leaves actions unbound: {missing}"
    return km


@dataclass(frozen=True)
class UserConfig:
    """Everything the user can persist: bindings, reaction timing, presets."""

    keymap: Keymap = field(default_factory=default_keymap)
    reaction: ReactionConfig = ReactionConfig()
    rate_presets: tuple = DEFAULT_RATE_PRESETS


def load_config(data=None) -> UserConfig:
    """Parse a config document; missing sections fall back to defaults.

    A keymap entry rebinds its action completely: the action loses its
    default chords. Chords listed twice are an error, as are unknown chords
    or action names.
    """
    if data is None or (isinstance(data, (bytes, str)) and not data.strip()):
        return UserConfig()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedConfig(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data, object_pairs_hook=_PairsDict)
    except json.JSONDecodeError as exc:
        raise MalformedConfig(str(exc)) from exc
    if not isinstance(doc, dict):
        raise MalformedConfig("config must be an object")

    unknown = set(doc) - {"keymap", "reaction", "transport"}
    if unknown:
        raise MalformedConfig(f"unknown section(s): {sorted(unknown)}")

    keymap_section = doc.get("keymap")
    if keymap_section is not None and not isinstance(keymap_section, _PairsDict):
        raise MalformedConfig("keymap section must be an object")
    keymap = _load_keymap(None if keymap_section is None else keymap_section.pairs)
    reaction = _load_reaction(doc.get("reaction"))
    presets = _load_presets(doc.get("transport"))
    return UserConfig(keymap=keymap, reaction=reaction, rate_presets=presets)


class _PairsDict(dict):
    """Dict that remembers its raw key/value pairs, duplicates included."""

    def __init__(self, pairs):
        super().__init__(pairs)
        self.pairs = list(pairs)


def _load_keymap(pairs) -> Keymap:
    if pairs is None:
        return default_keymap()
    seen = {}
    entries: List[Tuple[str, Action]] = []
    for raw_chord, raw_action in pairs:
        chord = normalize_chord(str(raw_chord))
        if chord in seen:
            raise DuplicateBinding(f"chord {raw_chord!r} bound twice")
        seen[chord] = True
        try:
            action = Action(str(raw_action))
        except ValueError as exc:
            raise MalformedConfig(f"unknown action {raw_action!r} for chord {raw_chord!r}") from exc
        entries.append((chord, action))

    rebound = {action for _, action in entries}
    merged = {
        chord: action
        for chord, action in _DEFAULT_BINDINGS
        if action not in rebound and chord not in seen
    }
    merged.update(entries)
    return Keymap(merged)


def _load_reaction(section) -> ReactionConfig:
    if section is None:
        return ReactionConfig()
    if not isinstance(section, dict):
        raise MalformedConfig("reaction section must be an object")
    defaults = ReactionConfig()
    known = {
        "delta_r_us": int,
        "compensate_only_while_playing": bool,
        "scale_by_rate": bool,
        "snap_marks_to_frame": bool,
    }
    unknown = set(section) - set(known)
    if unknown:
        raise MalformedConfig(f"unknown reaction key(s): {sorted(unknown)}")
    values = {}
    for key, kind in known.items():
        if key in section:
            if not isinstance(section[key], kind) or (kind is int and isinstance(section[key], bool)):
                raise MalformedConfig(f"reaction.{key} must be {kind.__name__}")
            values[key] = section[key]
        else:
            values[key] = getattr(defaults, key)
    try:
        return ReactionConfig(**values)
    except ValueError as exc:
        raise MalformedConfig(str(exc)) from exc


def _load_presets(section) -> tuple:
    if section is None:
        return DEFAULT_RATE_PRESETS
    if not isinstance(section, dict):
        raise MalformedConfig("transport section must be an object")
    unknown = set(section) - {"rate_presets"}
    if unknown:
        raise MalformedConfig(f"unknown transport key(s): {sorted(unknown)}")
    raw = section.get("rate_presets")
    if raw is None:
        return DEFAULT_RATE_PRESETS
    if not isinstance(raw, list) or not raw:
        raise MalformedConfig("rate_presets must be a nonempty list")
    presets = []
    for value in raw:
        try:
            rate = as_rate(value)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise MalformedConfig(f"bad rate preset {value!r}") from exc
        if rate == 0:
            raise MalformedConfig("rate preset 0 is not allowed")
        presets.append(rate)
    if len(set(presets)) != len(presets):
        raise MalformedConfig("duplicate rate preset")
    return tuple(presets)


def _preset_doc(rate: Fraction):
    if rate.denominator == 1:
        return rate.numerator
    as_float = float(rate)
    return as_float if Fraction(as_float) == rate else f"{rate.numerator}/{rate.denominator}"


def save_config(cfg: UserConfig) -> bytes:
    """Canonical config document; load(save(cfg)) == cfg."""
    doc = {
        "keymap": {c: cfg.keymap.bindings[c].value for c in sorted(cfg.keymap.bindings)},
        "reaction": {
            "delta_r_us": cfg.reaction.delta_r_us,
            "compensate_only_while_playing": cfg.reaction.compensate_only_while_playing,
            "scale_by_rate": cfg.reaction.scale_by_rate,
            "snap_marks_to_frame": cfg.reaction.snap_marks_to_frame,
        },
        "transport": {"rate_presets": [_preset_doc(r) for r in cfg.rate_presets]},
    }
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")

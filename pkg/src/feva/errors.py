"""Engine error hierarchy.

Every error carries a stable machine-readable ``code`` so the HTTP layer,
the CLI, and the replay harness can map failures without string matching.
"""

from __future__ import annotations


class FevaError(Exception):
    """Base class; ``code`` is a stable identifier, ``detail`` is free text."""

    code = "error"

    def __init__(self, detail: str = ""):
        self.detail = detail
        super().__init__(f"{self.code}: {detail}" if detail else self.code)


class InvalidRate(FevaError):
    code = "invalid_rate"


class NoActiveTrack(FevaError):
    code = "no_active_track"


class NoSelection(FevaError):
    code = "no_selection"


class LabelNotFound(FevaError):
    code = "label_not_found"


class TrackNotFound(FevaError):
    code = "track_not_found"


class TypeNotFound(FevaError):
    code = "type_not_found"


class InvalidInterval(FevaError):
    code = "invalid_interval"


class DuplicateLabelId(FevaError):
    code = "duplicate_label_id"


class NothingToUndo(FevaError):
    code = "nothing_to_undo"


class NothingToRedo(FevaError):
    code = "nothing_to_redo"


class MalformedDocument(FevaError):
    code = "malformed_document"


class UnsupportedVersion(FevaError):
    code = "unsupported_version"


class MalformedEdit(FevaError):
    code = "malformed_edit"


class DatasetInvalid(FevaError):
    """Raised when a loaded document parses but violates dataset invariants."""

    code = "dataset_invalid"

    def __init__(self, violations):
        self.violations = tuple(violations)
        detail = "; ".join(f"{v.entity_id}:{v.rule}" for v in self.violations)
        super().__init__(detail)


class MalformedConfig(FevaError):
    code = "malformed_config"


class DuplicateBinding(FevaError):
    code = "duplicate_binding"


class ReplayError(FevaError):
    """Script replay failure; names the offending step index (0-based)."""

    code = "replay_error"

    def __init__(self, step: int, detail: str):
        self.step = step
        super().__init__(f"step {step}: {detail}")

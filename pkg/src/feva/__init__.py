"""feva: a headless, deterministic event-video-annotation engine.

Speed labeling with reaction-time compensation, frame-accurate label
editing, non-overlapping lane layout, undo/redo, interchange formats, an
HTTP service, and a script-replay harness for interaction-count
benchmarking.
"""

from .annotator import (
    Create,
    Delete,
    Edit,
    Move,
    ReactionConfig,
    Resize,
    SetAttr,
    SetText,
    SetTrack,
    SetType,
    SpeedLabelState,
    apply_edit,
    fine_tune,
    reaction_compensate,
)
from .errors import FevaError
from .history import History, record, redo, undo
from .keymap import Action, Keymap, UserConfig, default_keymap, load_config, save_config
from .lanes import LaneAssignment, assign_lanes, max_overlap_depth
from .model import (
    Dataset,
    FrameRate,
    Label,
    LabelType,
    Project,
    SpatialPayload,
    TimePoint,
    Track,
    ValidationReport,
    VideoSource,
    frame_index,
    frame_step,
    frame_to_time,
    snap_to_frame,
    validate_dataset,
)
from .persistence import (
    export_cutlist,
    export_srt,
    import_via,
    load_dataset,
    load_project,
    save_dataset,
    save_project,
)
from .query import filter_by_type, labels_at, search
from .replay import InputEvent, ReplayResult, parse_script, replay_script
from .session import Session
from .transport import TransportState, seek, set_rate, tick, toggle_play, zoom_window

__version__ = "0.1.0"

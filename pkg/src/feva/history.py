"""Undo/redo over (edit, inverse) pairs.

Pairs, not snapshots: O(1) memory per edit, relying on the annotator to
emit exact inverses. Recording a new edit invalidates the redo stack.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .annotator import Edit, apply_edit
from .errors import NothingToRedo, NothingToUndo
from .model import Dataset, TimePoint

DEFAULT_CAPACITY = 1000


@dataclass(frozen=True)
class History:
    undo_stack: tuple = ()  # of (edit, inverse), oldest first
    redo_stack: tuple = ()
    capacity: int = DEFAULT_CAPACITY


def record(h: History, edit: Edit, inverse: Edit) -> History:
    """Push a committed edit; drops the oldest past capacity, clears redo."""
    stack = h.undo_stack + ((edit, inverse),)
    if len(stack) > h.capacity:
        stack = stack[len(stack) - h.capacity :]
    return replace(h, undo_stack=stack, redo_stack=())


def undo(h: History, d: Dataset, duration: Optional[TimePoint] = None) -> Tuple[History, Dataset]:
    if not h.undo_stack:
        raise NothingToUndo()
    pair = h.undo_stack[-1]
    new_d, _ = apply_edit(d, pair[1], duration)
    return replace(h, undo_stack=h.undo_stack[:-1], redo_stack=h.redo_stack + (pair,)), new_d


def redo(h: History, d: Dataset, duration: Optional[TimePoint] = None) -> Tuple[History, Dataset]:
    if not h.redo_stack:
        raise NothingToRedo()
    pair = h.redo_stack[-1]
    new_d, _ = apply_edit(d, pair[0], duration)
    return replace(h, redo_stack=h.redo_stack[:-1], undo_stack=h.undo_stack + (pair,)), new_d

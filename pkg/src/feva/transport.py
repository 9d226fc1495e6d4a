"""Virtual playback head: a pure, deterministic clock the annotator reacts to.

The transport never touches real time. Callers feed it wall-clock deltas (the
UI passes real elapsed time, tests pass synthetic time), which is what makes
speed labeling testable headlessly. Position advances exactly, as a rational,
so splitting one tick into many never drifts.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Tuple, Union

from .errors import InvalidRate
from .model import FrameRate, TimePoint, clamp, div_round

RateLike = Union[int, float, str, Fraction]

DEFAULT_RATE_PRESETS: tuple = (
    Fraction(-8),
    Fraction(-4),
    Fraction(-2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(4),
    Fraction(8),
)


def as_rate(value: RateLike) -> Fraction:
    """Normalize a playback-rate literal (int, float, "p/q", Fraction)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class TransportState:
    """Playback head state. All operations return new values.

    ``exact_position`` keeps sub-microsecond precision so tick sequences are
    additive; ``position`` is the rounded microsecond the rest of the engine
    sees.
    """

    duration: TimePoint
    fps: FrameRate
    exact_position: Fraction = Fraction(0)
    rate: Fraction = Fraction(1)
    playing: bool = False

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.rate == 0:
            raise ValueError("rate must be nonzero")
        exact = Fraction(self.exact_position)
        if exact < 0:
            exact = Fraction(0)
        elif exact > self.duration:
            exact = Fraction(self.duration)
        object.__setattr__(self, "exact_position", exact)

    @property
    def position(self) -> TimePoint:
        return div_round(self.exact_position.numerator, self.exact_position.denominator)


def tick(s: TransportState, wall_delta: int) -> TransportState:
    """Advance by elapsed wall microseconds; pauses when a bound is reached."""
    if wall_delta < 0:
        raise ValueError("wall_delta must be nonnegative")
    if not s.playing:
        return s
    exact = s.exact_position + wall_delta * s.rate
    playing = True
    if s.rate > 0 and exact >= s.duration:
        exact = Fraction(s.duration)
        playing = False
    elif s.rate < 0 and exact <= 0:
        exact = Fraction(0)
        playing = False
    return replace(s, exact_position=exact, playing=playing)


def seek(s: TransportState, t: TimePoint) -> TransportState:
    """Jump to an instant, clamped to [0, duration]. Play state unchanged."""
    return replace(s, exact_position=Fraction(clamp(t, 0, s.duration)))


def set_rate(s: TransportState, rate: RateLike, presets=DEFAULT_RATE_PRESETS) -> TransportState:
    value = as_rate(rate)
    if value not in presets:
        raise InvalidRate(f"{rate} not in presets")
    return replace(s, rate=value)


def toggle_play(s: TransportState) -> TransportState:
    return replace(s, playing=not s.playing)


def zoom_window(center: TimePoint, span: int, duration: TimePoint) -> Tuple[TimePoint, TimePoint]:
    """A window of exactly ``span`` containing ``center``, shifted at bounds.

    A span wider than the timeline degrades to the whole timeline.
    """
    if span <= 0:
        raise ValueError("span must be positive")
    if span > duration:
        return (0, duration)
    start = center - span // 2
    if start < 0:
        start = 0
    elif start + span > duration:
        start = duration - span
    return (start, start + span)

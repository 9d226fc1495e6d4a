"""Core model: frame arithmetic, rounding, and dataset validation."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feva.model import (
    Dataset,
    FrameRate,
    Label,
    LabelType,
    SpatialPayload,
    Track,
    div_round,
    frame_index,
    frame_step,
    frame_to_time,
    snap_to_frame,
    validate_dataset,
)
from .util import nearest_frame_exhaustive, small_dataset

FPS_CASES = [FrameRate(24), FrameRate(25), FrameRate(30), FrameRate(30000, 1001), FrameRate(60)]


def test_div_round_half_away_from_zero():
    assert div_round(1, 2) == 1
    assert div_round(-1, 2) == -1
    assert div_round(3, 2) == 2
    assert div_round(-3, 2) == -2
    assert div_round(7, 3) == 2
    assert div_round(10, 5) == 2
    with pytest.raises(ValueError):
        div_round(1, 0)


def test_frame_rate_reduces_to_canonical_form():
    assert FrameRate(60, 2) == FrameRate(30)
    ntsc = FrameRate(30000, 1001)
    assert (ntsc.num, ntsc.den) == (30000, 1001)
    with pytest.raises(ValueError):
        FrameRate(0)


def test_snap_zero():
    assert snap_to_frame(0, FrameRate(30)) == 0


def test_snap_rounds_to_nearest_frame():
    # frozen from the exhaustive nearest-frame oracle
    assert nearest_frame_exhaustive(2_016_000, FrameRate(25)) == 2_000_000
    assert snap_to_frame(2_016_000, FrameRate(25)) == 2_000_000


def test_snap_exact_ntsc_frame_is_fixed_point():
    ntsc = FrameRate(30000, 1001)
    # 30 * 1001e6 / 30000 is exactly 1_001_000 by rational arithmetic
    assert Fraction(30 * 1001 * 1_000_000, 30000) == 1_001_000
    assert snap_to_frame(1_001_000, ntsc) == 1_001_000
    assert frame_index(1_001_000, ntsc) == 30


@pytest.mark.parametrize("fps", FPS_CASES)
def test_snap_is_idempotent_and_within_half_frame(fps):
    rng = random.Random(7)
    half_frame = Fraction(fps.den * 1_000_000, 2 * fps.num)
    for _ in range(300):
        t = rng.randrange(0, 3_600_000_000)
        snapped = snap_to_frame(t, fps)
        assert snap_to_frame(snapped, fps) == snapped
        assert abs(snapped - t) <= half_frame
        assert snapped == nearest_frame_exhaustive(t, fps)


def test_frame_step_single_frame_back():
    assert frame_step(2_000_000, FrameRate(25), -1, 10_000_000) == 1_960_000


def test_frame_step_clamps_at_timeline_start():
    assert frame_step(0, FrameRate(25), -1, 10_000_000) == 0


def test_frame_step_ntsc_forward():
    # round(31 * 1001e6 / 30000) = round(1_034_366.67) = 1_034_367, by the
    # rational-arithmetic oracle below
    exact = Fraction(31 * 1001 * 1_000_000, 30000)
    assert div_round(exact.numerator, exact.denominator) == 1_034_367
    assert frame_step(1_001_000, FrameRate(30000, 1001), +1, 10_000_000) == 1_034_367


@pytest.mark.parametrize("fps", FPS_CASES)
def test_frame_round_trip_on_grid(fps):
    rng = random.Random(11)
    indices = [0, 1, 2, 999_999, 1_000_000] + [rng.randrange(0, 1_000_001) for _ in range(500)]
    for i in indices:
        assert frame_index(frame_to_time(i, fps), fps) == i


@given(st.integers(min_value=0, max_value=10**9), st.sampled_from(FPS_CASES))
def test_snap_idempotent_property(t, fps):
    snapped = snap_to_frame(t, fps)
    assert snap_to_frame(snapped, fps) == snapped


def test_validate_empty_dataset_is_clean():
    assert validate_dataset(Dataset()).ok


def test_validate_reports_inverted_interval():
    d = small_dataset()
    d = Dataset(
        tracks=d.tracks,
        types=d.types,
        labels=(Label("L1", "T1", "Y1", 5_000, 4_000),),
    )
    report = validate_dataset(d)
    assert [(v.entity_id, v.rule) for v in report.violations] == [("L1", "start_le_end")]


def test_validate_reports_dangling_type():
    d = small_dataset()
    d = Dataset(tracks=d.tracks, types=d.types, labels=(Label("L1", "T1", "nope", 0, 10),))
    report = validate_dataset(d)
    assert [(v.entity_id, v.rule) for v in report.violations] == [("L1", "type_exists")]


def test_validate_reports_duplicates_and_spatial_range():
    d = Dataset(
        tracks=(Track("T1", "a"), Track("T1", "b")),
        types=(LabelType("Y1", ""),),
        labels=(
            Label("L1", "T1", "Y1", 0, 10, spatial=SpatialPayload("bbox", (0.5, 0.5, 0.7, 0.1))),
            Label("L1", "T1", "Y1", 0, 0),
        ),
    )
    rules = {(v.entity_id, v.rule) for v in validate_dataset(d).violations}
    assert ("T1", "unique_id") in rules
    assert ("Y1", "name_nonempty") in rules
    assert ("L1", "spatial_range") in rules
    assert ("L1", "unique_id") in rules


def test_validate_duration_bound():
    d = small_dataset()
    d = Dataset(tracks=d.tracks, types=d.types, labels=(Label("L1", "T1", "Y1", 0, 99),))
    assert validate_dataset(d, duration=100).ok
    assert not validate_dataset(d, duration=50).ok


def test_spatial_payload_arity_checked():
    with pytest.raises(ValueError):
        SpatialPayload("point", (0.5,))
    with pytest.raises(ValueError):
        SpatialPayload("blob", ())
    assert SpatialPayload("bbox", (0, 0, 1, 1)).coords == (0.0, 0.0, 1.0, 1.0)

"""Regenerate tests/vectors.json from the engine.

The frontend mirrors the engine's frame/time and compensation math; these
frozen vectors pin the mirror to the real implementation. Run from the
frontend directory: python3 scripts/gen_vectors.py
"""

import json
import random
from fractions import Fraction
from pathlib import Path

from feva.annotator import ReactionConfig, reaction_compensate
from feva.model import FrameRate, frame_step, frame_to_time, snap_to_frame
from feva.transport import TransportState, zoom_window

OUT = Path(__file__).resolve().parent.parent / "tests" / "vectors.json"

rng = random.Random(20260810)
rates = [(24, 1), (25, 1), (30, 1), (30000, 1001), (60, 1)]
duration = 3_600_000_000

snap = []
step = []
for num, den in rates:
    fps = FrameRate(num, den)
    for _ in range(60):
        t = rng.randrange(0, duration)
        delta = rng.choice([-3, -1, 1, 3])
        snap.append({"t": t, "num": num, "den": den, "out": snap_to_frame(t, fps)})
        step.append(
            {
                "t": t,
                "num": num,
                "den": den,
                "delta": delta,
                "duration": duration,
                "out": frame_step(t, fps, delta, duration),
            }
        )
    step.append({"t": 0, "num": num, "den": den, "delta": -1, "duration": duration, "out": 0})
    snap.append({"t": 0, "num": num, "den": den, "out": 0})

compensate = []
for _ in range(120):
    press = rng.randrange(0, 60_000_000)
    delta_r = rng.choice([0, 100_000, 250_000, 300_000, 2_000_000])
    rate = rng.choice([Fraction(1), Fraction(1, 2), Fraction(2), Fraction(-1), Fraction(4)])
    playing = rng.random() < 0.8
    scale = rng.random() < 0.8
    cfg = ReactionConfig(delta_r_us=delta_r, scale_by_rate=scale)
    transport = TransportState(
        duration=60_000_000,
        fps=FrameRate(30),
        exact_position=Fraction(press),
        rate=rate,
        playing=playing,
    )
    compensate.append(
        {
            "press": press,
            "deltaR": delta_r,
            "rate": float(rate),
            "playing": playing,
            "scaleByRate": scale,
            "duration": 60_000_000,
            "out": reaction_compensate(press, cfg, transport),
        }
    )

zoom = []
for _ in range(60):
    dur = rng.randrange(1_000_000, 600_000_000)
    span = rng.randrange(1, dur + 30_000_000)
    center = rng.randrange(0, dur + 1)
    ws, we = zoom_window(center, span, dur)
    zoom.append({"center": center, "span": span, "duration": dur, "out": [ws, we]})

OUT.write_text(
    json.dumps(
        {"snap": snap, "frameStep": step, "compensate": compensate, "zoomWindow": zoom},
        indent=1,
    )
    + "\n"
)
print(f"wrote {OUT}")

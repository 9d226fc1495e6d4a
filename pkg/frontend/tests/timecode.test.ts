// The client time math must match the engine exactly; vectors.json is
// generated from the engine (scripts/gen_vectors.py) and pins every case.

import { describe, expect, it } from "vitest";
import vectors from "./vectors.json";
import {
  compensate,
  divRound,
  formatTimecode,
  frameIndex,
  frameStep,
  frameToTime,
  snapToFrame,
} from "../src/timecode.js";

describe("divRound", () => {
  it("rounds half away from zero", () => {
    expect(divRound(1, 2)).toBe(1);
    expect(divRound(-1, 2)).toBe(-1);
    expect(divRound(3, 2)).toBe(2);
    expect(divRound(-3, 2)).toBe(-2);
    expect(divRound(7, 3)).toBe(2);
  });
});

describe("engine vectors", () => {
  it("snapToFrame matches the engine on every vector", () => {
    for (const v of vectors.snap) {
      expect(snapToFrame(v.t, { num: v.num, den: v.den }), `t=${v.t} @${v.num}/${v.den}`).toBe(v.out);
    }
  });

  it("frameStep matches the engine on every vector", () => {
    for (const v of vectors.frameStep) {
      expect(
        frameStep(v.t, { num: v.num, den: v.den }, v.delta, v.duration),
        `t=${v.t} delta=${v.delta} @${v.num}/${v.den}`,
      ).toBe(v.out);
    }
  });

  it("compensate matches the engine on every vector", () => {
    for (const v of vectors.compensate) {
      const out = compensate(v.press, {
        deltaRUs: v.deltaR,
        playing: v.playing,
        rate: v.rate,
        duration: v.duration,
        scaleByRate: v.scaleByRate,
        compensateOnlyWhilePlaying: true,
      });
      expect(out, JSON.stringify(v)).toBe(v.out);
    }
  });
});

describe("frame round trips", () => {
  it("index(time(i)) is identity on the NTSC grid", () => {
    const ntsc = { num: 30000, den: 1001 };
    for (let i = 0; i < 5000; i += 7) {
      expect(frameIndex(frameToTime(i, ntsc), ntsc)).toBe(i);
    }
  });
});

describe("formatTimecode", () => {
  it("renders hours, minutes, seconds, millis, and the frame number", () => {
    expect(formatTimecode(4_700_000, { num: 25, den: 1 })).toBe("00:00:04.700 f118");
    expect(formatTimecode(0, { num: 30, den: 1 })).toBe("00:00:00.000 f0");
  });
});

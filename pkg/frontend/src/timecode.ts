// Frame/time arithmetic mirroring the engine: integer microseconds, reduced
// rational frame rates, round-half-away-from-zero. The values stay well
// under 2^53 (hours of footage times fps numerators), so plain numbers are
// exact here; tests/vectors.json pins this mirror to the engine's output.

import type { Fps } from "./types.js";

export const US_PER_SECOND = 1_000_000;

export function divRound(num: number, den: number): number {
  if (den <= 0) throw new Error("denominator must be positive");
  if (num >= 0) return Math.floor((2 * num + den) / (2 * den));
  return -Math.floor((2 * -num + den) / (2 * den));
}

export function clampUs(t: number, lo: number, hi: number): number {
  return t < lo ? lo : t > hi ? hi : t;
}

export function frameIndex(t: number, fps: Fps): number {
  return divRound(t * fps.num, fps.den * US_PER_SECOND);
}

export function frameToTime(index: number, fps: Fps): number {
  return divRound(index * fps.den * US_PER_SECOND, fps.num);
}

export function snapToFrame(t: number, fps: Fps): number {
  return frameToTime(frameIndex(t, fps), fps);
}

export function frameStep(t: number, fps: Fps, deltaFrames: number, duration: number): number {
  return clampUs(frameToTime(frameIndex(t, fps) + deltaFrames, fps), 0, duration);
}

export function frameDurationUs(fps: Fps): number {
  return (fps.den * US_PER_SECOND) / fps.num;
}

export interface CompensateOptions {
  deltaRUs: number;
  playing: boolean;
  rate: number;
  duration: number;
  scaleByRate: boolean;
  compensateOnlyWhilePlaying: boolean;
  snapToFps?: Fps;
}

// Shift a pressed mark back by the reaction time, exactly as the engine does.
export function compensate(pressUs: number, opts: CompensateOptions): number {
  if (opts.compensateOnlyWhilePlaying && !opts.playing) return pressUs;
  const lag = opts.scaleByRate ? Math.round(opts.deltaRUs * Math.abs(opts.rate)) : opts.deltaRUs;
  let t = clampUs(pressUs - lag, 0, opts.duration);
  if (opts.snapToFps) t = frameStep(t, opts.snapToFps, 0, opts.duration);
  return t;
}

export function formatTimecode(us: number, fps: Fps): string {
  const totalMs = divRound(Math.max(us, 0), 1000);
  const h = Math.floor(totalMs / 3_600_000);
  const m = Math.floor((totalMs % 3_600_000) / 60_000);
  const s = Math.floor((totalMs % 60_000) / 1000);
  const ms = totalMs % 1000;
  const frame = frameIndex(us, fps);
  const pad = (v: number, w: number) => String(v).padStart(w, "0");
  return `${pad(h, 2)}:${pad(m, 2)}:${pad(s, 2)}.${pad(ms, 3)} f${frame}`;
}

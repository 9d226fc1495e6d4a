// Media clocks. The video element's clock is ground truth for press
// timestamps: the engine-side transport is a model of it, and the UI
// resyncs every animation tick rather than integrating time itself.

import { clampUs, US_PER_SECOND } from "./timecode.js";

export interface MediaClock {
  timeUs(): number;
  playing(): boolean;
  rate(): number;
  durationUs(): number;
  play(): void;
  pause(): void;
  seekUs(t: number): void;
  setRate(rate: number): void;
}

export class VideoElementClock implements MediaClock {
  constructor(private video: HTMLVideoElement, private duration: number) {}

  timeUs(): number {
    return clampUs(Math.round(this.video.currentTime * US_PER_SECOND), 0, this.duration);
  }

  playing(): boolean {
    return !this.video.paused && !this.video.ended;
  }

  rate(): number {
    return this.video.playbackRate;
  }

  durationUs(): number {
    return this.duration;
  }

  play(): void {
    void this.video.play();
  }

  pause(): void {
    this.video.pause();
  }

  seekUs(t: number): void {
    this.video.currentTime = clampUs(t, 0, this.duration) / US_PER_SECOND;
  }

  setRate(rate: number): void {
    // the element cannot play in reverse; reverse rates fall back to paused
    // frame-stepping, matching the controls' behavior for negative presets
    this.video.playbackRate = Math.abs(rate);
  }
}

// Deterministic clock for tests and headless runs; mirrors the engine's
// transport semantics (clamp at bounds, auto-pause there).
export class FakeClock implements MediaClock {
  private positionUs = 0;
  private isPlaying = false;
  private currentRate = 1;

  constructor(private duration: number) {}

  advanceWallUs(wall: number): void {
    if (!this.isPlaying) return;
    const next = this.positionUs + wall * this.currentRate;
    if (this.currentRate > 0 && next >= this.duration) {
      this.positionUs = this.duration;
      this.isPlaying = false;
    } else if (this.currentRate < 0 && next <= 0) {
      this.positionUs = 0;
      this.isPlaying = false;
    } else {
      this.positionUs = Math.round(next);
    }
  }

  timeUs(): number {
    return this.positionUs;
  }

  playing(): boolean {
    return this.isPlaying;
  }

  rate(): number {
    return this.currentRate;
  }

  durationUs(): number {
    return this.duration;
  }

  play(): void {
    this.isPlaying = true;
  }

  pause(): void {
    this.isPlaying = false;
  }

  seekUs(t: number): void {
    this.positionUs = clampUs(t, 0, this.duration);
  }

  setRate(rate: number): void {
    if (rate === 0) throw new Error("rate must be nonzero");
    this.currentRate = rate;
  }
}

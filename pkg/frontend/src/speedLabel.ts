// Client-side speed-label state machine, mirroring the engine: first mark
// opens a pending start, second closes the pair. Reverse-play pairs swap;
// forward underflow from clamping degrades to a point label.

import { compensate } from "./timecode.js";
import type { MediaClock } from "./clock.js";
import type { ReactionConfigDoc } from "./types.js";

export interface MarkPair {
  start: number;
  end: number;
}

export class SpeedLabeler {
  pendingStart: number | null = null;

  constructor(private reaction: ReactionConfigDoc) {}

  setReaction(reaction: ReactionConfigDoc): void {
    this.reaction = reaction;
  }

  cancel(): void {
    this.pendingStart = null;
  }

  mark(clock: MediaClock): MarkPair | null {
    const t = compensate(clock.timeUs(), {
      deltaRUs: this.reaction.delta_r_us,
      playing: clock.playing(),
      rate: clock.rate(),
      duration: clock.durationUs(),
      scaleByRate: this.reaction.scale_by_rate,
      compensateOnlyWhilePlaying: this.reaction.compensate_only_while_playing,
    });
    if (this.pendingStart === null) {
      this.pendingStart = t;
      return null;
    }
    let start = this.pendingStart;
    let end = t;
    this.pendingStart = null;
    if (end < start) {
      if (clock.rate() < 0) {
        [start, end] = [end, start];
      } else {
        end = start;
      }
    }
    return { start, end };
  }
}

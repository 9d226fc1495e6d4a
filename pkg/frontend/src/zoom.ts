// Local-timeline zoom: a window of exactly `span` microseconds that always
// contains the playhead, shifting (never shrinking) at the timeline bounds.

export interface Window {
  start: number;
  end: number;
}

export const MIN_SPAN_US = 40_000; // one 25fps frame; zooming further is pointless

export function zoomWindow(center: number, span: number, duration: number): Window {
  if (span <= 0) throw new Error("span must be positive");
  if (span > duration) return { start: 0, end: duration };
  let start = center - Math.floor(span / 2);
  if (start < 0) start = 0;
  else if (start + span > duration) start = duration - span;
  return { start, end: start + span };
}

// Rescale the window around the playhead; factor > 1 zooms out.
export function zoomBy(current: Window, playhead: number, factor: number, duration: number): Window {
  const span = Math.max(MIN_SPAN_US, Math.min(duration, Math.round((current.end - current.start) * factor)));
  return zoomWindow(playhead, span, duration);
}

export function panTo(current: Window, playhead: number, duration: number): Window {
  const span = current.end - current.start;
  if (playhead >= current.start && playhead < current.end) return current;
  return zoomWindow(playhead, span, duration);
}

// Filmstrip density: thumbnails per window chosen from the zoom span so a
// strip stays readable at any scale.
export function filmstripSlots(span: number, stripWidthPx: number, thumbWidthPx = 96): number[] {
  const count = Math.max(1, Math.floor(stripWidthPx / thumbWidthPx));
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(Math.round(((i + 0.5) * span) / count));
  }
  return out;
}

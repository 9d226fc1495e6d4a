// Screen-region placement: toolbar across the top; label list left, video
// center, camera selector right in the middle band; global progress bar,
// a separating gutter, then the zoomed local timeline with filmstrip; label
// tracks across the bottom. The gutter between the two timelines is
// deliberate visual separation so they read as different instruments.

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface ScreenLayout {
  toolbar: Rect;
  labelList: Rect;
  video: Rect;
  cameraSelector: Rect;
  globalTimeline: Rect;
  timelineGutter: Rect;
  localTimeline: Rect;
  tracks: Rect;
}

export const TOOLBAR_H = 48;
export const GLOBAL_TIMELINE_H = 28;
export const TIMELINE_GUTTER_H = 10;
export const LOCAL_TIMELINE_H = 84;
export const LABEL_LIST_W = 260;
export const CAMERA_SELECTOR_W = 120;
export const TRACKS_MIN_H = 160;

export function computeLayout(width: number, height: number): ScreenLayout {
  const toolbar = { x: 0, y: 0, w: width, h: TOOLBAR_H };
  const tracksH = Math.max(TRACKS_MIN_H, Math.round(height * 0.25));
  const tracksY = height - tracksH;
  const localY = tracksY - LOCAL_TIMELINE_H;
  const gutterY = localY - TIMELINE_GUTTER_H;
  const globalY = gutterY - GLOBAL_TIMELINE_H;
  const videoH = Math.max(0, globalY - TOOLBAR_H);
  return {
    toolbar,
    labelList: { x: 0, y: TOOLBAR_H, w: LABEL_LIST_W, h: videoH },
    video: { x: LABEL_LIST_W, y: TOOLBAR_H, w: width - LABEL_LIST_W - CAMERA_SELECTOR_W, h: videoH },
    cameraSelector: { x: width - CAMERA_SELECTOR_W, y: TOOLBAR_H, w: CAMERA_SELECTOR_W, h: videoH },
    globalTimeline: { x: 0, y: globalY, w: width, h: GLOBAL_TIMELINE_H },
    timelineGutter: { x: 0, y: gutterY, w: width, h: TIMELINE_GUTTER_H },
    localTimeline: { x: 0, y: localY, w: width, h: LOCAL_TIMELINE_H },
    tracks: { x: 0, y: tracksY, w: width, h: tracksH },
  };
}

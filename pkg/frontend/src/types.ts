// Wire types mirroring the server's JSON documents. All times are integer
// microseconds on the shared project timeline.

export interface Fps {
  num: number;
  den: number;
}

export interface VideoSourceDoc {
  id: string;
  uri: string;
  fps: Fps;
  duration: number;
  offset: number;
  width: number;
  height: number;
}

export interface ProjectDoc {
  id: string;
  name: string;
  primary_source_id: string;
  sources: VideoSourceDoc[];
  dataset_refs: string[];
}

export interface TrackDoc {
  id: string;
  name: string;
  visible: boolean;
}

export interface LabelTypeDoc {
  id: string;
  name: string;
  color: string;
}

export interface SpatialDoc {
  kind: "none" | "point" | "bbox";
  coords: number[];
}

export interface LabelDoc {
  id: string;
  track_id: string;
  type_id: string;
  start: number;
  end: number;
  text?: string;
  spatial?: SpatialDoc;
  attributes?: Record<string, string | number>;
}

export interface DatasetDoc {
  version: string;
  revision: number;
  tracks: TrackDoc[];
  types: LabelTypeDoc[];
  labels: LabelDoc[];
}

export interface ReactionConfigDoc {
  delta_r_us: number;
  compensate_only_while_playing: boolean;
  scale_by_rate: boolean;
  snap_marks_to_frame: boolean;
}

export interface UserConfigDoc {
  keymap: Record<string, string>;
  reaction: ReactionConfigDoc;
  transport: { rate_presets: Array<number | string> };
}

export type EditDoc =
  | { op: "create"; track_id: string; type_id: string; start: number; end: number; id?: string; text?: string }
  | { op: "delete"; id: string }
  | { op: "move"; id: string; delta: number }
  | { op: "resize"; id: string; edge: "start" | "end"; time: number }
  | { op: "set_text"; id: string; text: string }
  | { op: "set_type"; id: string; type_id: string }
  | { op: "set_attr"; id: string; key: string; value: string | number | null }
  | { op: "set_track"; id: string; track_id: string };

export interface EditResult {
  op: string;
  label_id?: string;
  start?: number;
  end?: number;
}

export interface EditBatchResponse {
  revision: number;
  results: EditResult[];
}

export interface ConflictResponse {
  error: "conflict";
  revision: number;
}

// The headless core of the annotation surface: keyboard pipeline, optimistic
// local state, server reconciliation. The DOM shell (main.ts) and the tests
// drive exactly this class, so every keyboard behavior is testable without
// a browser.
//
// Times discipline: the client never invents times. Press timestamps come
// from the media clock, mark/fine-tune targets are computed with the same
// integer arithmetic the engine uses, and every committed value is compared
// against the server echo; the event log records both sides.

import { ApiClient } from "./api.js";
import type { MediaClock } from "./clock.js";
import { EditQueue } from "./editQueue.js";
import { KeymapClient } from "./chords.js";
import { SpeedLabeler } from "./speedLabel.js";
import { frameStep, clampUs } from "./timecode.js";
import { trackBands, type TrackBand } from "./render.js";
import { zoomBy, panTo, zoomWindow, type Window } from "./zoom.js";
import type {
  DatasetDoc,
  EditBatchResponse,
  EditDoc,
  Fps,
  LabelDoc,
  ProjectDoc,
  UserConfigDoc,
  VideoSourceDoc,
} from "./types.js";

export interface LogEntry {
  kind: string;
  [key: string]: string | number | boolean | null;
}

export interface ControllerHooks {
  onDatasetChanged?(): void;
  onToast?(message: string): void;
  onSearchFocus?(): void;
  onSourceChanged?(source: VideoSourceDoc): void;
}

export class AnnotationController {
  dataset: DatasetDoc;
  selectedId: string | null = null;
  activeTrackId: string | null;
  activeTypeId: string | null;
  window: Window;
  currentSource: VideoSourceDoc;
  readonly eventLog: LogEntry[] = [];

  private labeler: SpeedLabeler;
  private keymap: KeymapClient;
  private queue: EditQueue;
  private undoStack: EditDoc[][] = [];
  private redoStack: EditDoc[][] = [];
  private presets: number[];
  private tempCounter = 0;

  constructor(
    private api: ApiClient,
    private project: ProjectDoc,
    private datasetId: string,
    dataset: DatasetDoc,
    private config: UserConfigDoc,
    public clock: MediaClock,
    private hooks: ControllerHooks = {},
  ) {
    this.dataset = structuredClone(dataset);
    this.activeTrackId = dataset.tracks[0]?.id ?? null;
    this.activeTypeId = dataset.types[0]?.id ?? null;
    this.labeler = new SpeedLabeler(config.reaction);
    this.keymap = new KeymapClient(config.keymap);
    this.presets = config.transport.rate_presets.map(parseRate).sort((a, b) => a - b);
    this.currentSource =
      project.sources.find((s) => s.id === project.primary_source_id) ?? project.sources[0];
    this.window = zoomWindow(0, Math.min(10_000_000, this.duration), this.duration);
    this.queue = new EditQueue(api, project.id, datasetId, dataset.revision, {
      onCommitted: (response, sent) => this.reconcile(response, sent),
      onConflict: (revision) => void this.reloadAfterConflict(revision),
      onError: (error) => this.hooks.onToast?.(String(error)),
    });
  }

  get duration(): number {
    return this.currentSource.duration;
  }

  get fps(): Fps {
    return this.currentSource.fps;
  }

  label(id: string): LabelDoc | undefined {
    return this.dataset.labels.find((l) => l.id === id);
  }

  bands(): TrackBand[] {
    return trackBands(this.dataset, this.window, this.selectedId);
  }

  drain(): Promise<void> {
    return this.queue.drain();
  }

  // --- keyboard pipeline ---------------------------------------------------

  pressChord(chord: string): void {
    const action = this.keymap.resolve(chord);
    if (action === null) return; // unbound chords are ignored silently
    this.applyAction(action);
  }

  applyAction(action: string): void {
    switch (action) {
      case "play_pause":
        this.clock.playing() ? this.clock.pause() : this.clock.play();
        break;
      case "mark":
        this.mark();
        break;
      case "undo":
        this.undo();
        break;
      case "redo":
        this.redo();
        break;
      case "fine_tune_start_back":
        this.fineTune("start", -1);
        break;
      case "fine_tune_start_fwd":
        this.fineTune("start", +1);
        break;
      case "fine_tune_end_back":
        this.fineTune("end", -1);
        break;
      case "fine_tune_end_fwd":
        this.fineTune("end", +1);
        break;
      case "step_back":
        this.clock.seekUs(frameStep(this.clock.timeUs(), this.fps, -1, this.duration));
        break;
      case "step_fwd":
        this.clock.seekUs(frameStep(this.clock.timeUs(), this.fps, +1, this.duration));
        break;
      case "big_step_back":
        this.clock.seekUs(clampUs(this.clock.timeUs() - 1_000_000, 0, this.duration));
        break;
      case "big_step_fwd":
        this.clock.seekUs(clampUs(this.clock.timeUs() + 1_000_000, 0, this.duration));
        break;
      case "rate_up":
        this.shiftRate(+1);
        break;
      case "rate_down":
        this.shiftRate(-1);
        break;
      case "delete_selected":
        this.deleteSelected();
        break;
      case "search_focus":
        this.hooks.onSearchFocus?.();
        break;
      case "cancel_mark":
        this.labeler.cancel();
        break;
      default:
        break;
    }
    this.window = panTo(this.window, this.clock.timeUs(), this.duration);
  }

  // --- speed labeling --------------------------------------------------------

  mark(): void {
    if (!this.activeTrackId || !this.activeTypeId) {
      this.hooks.onToast?.("pick a track and label type first");
      return;
    }
    const pair = this.labeler.mark(this.clock);
    if (pair === null) {
      this.eventLog.push({ kind: "mark_pending", start: this.labeler.pendingStart });
      return;
    }
    const tempId = `tmp-${++this.tempCounter}`;
    const label: LabelDoc = {
      id: tempId,
      track_id: this.activeTrackId,
      type_id: this.activeTypeId,
      start: pair.start,
      end: pair.end,
      text: "",
    };
    this.dataset.labels.push(label);
    this.eventLog.push({ kind: "mark", tempId, start: pair.start, end: pair.end });
    this.pushUndo([{ op: "delete", id: tempId }]);
    this.selectedId = tempId;
    this.queue.push({
      op: "create",
      track_id: label.track_id,
      type_id: label.type_id,
      start: pair.start,
      end: pair.end,
    });
    this.hooks.onDatasetChanged?.();
  }

  setActiveTrack(trackId: string): void {
    if (this.labeler.pendingStart !== null && trackId !== this.activeTrackId) {
      this.labeler.cancel();
      this.hooks.onToast?.("pending mark discarded (track switch)");
    }
    this.activeTrackId = trackId;
  }

  setActiveType(typeId: string): void {
    this.activeTypeId = typeId;
  }

  // --- edits -------------------------------------------------------------------

  fineTune(edge: "start" | "end", deltaFrames: number): void {
    if (this.selectedId === null) return;
    const label = this.label(this.selectedId);
    if (!label) return;
    const current = edge === "start" ? label.start : label.end;
    let target = frameStep(current, this.fps, deltaFrames, this.duration);
    target = edge === "start" ? Math.min(target, label.end) : Math.max(target, label.start);
    if (target === current) return;
    this.applyLocal({ op: "resize", id: label.id, edge, time: target });
    this.pushUndo([{ op: "resize", id: label.id, edge, time: current }]);
    this.eventLog.push({ kind: "fine_tune", labelId: label.id, edge, time: target });
    this.queue.push({ op: "resize", id: label.id, edge, time: target });
    this.hooks.onDatasetChanged?.();
  }

  deleteSelected(): void {
    if (this.selectedId === null) return;
    const label = this.label(this.selectedId);
    if (!label) return;
    this.applyLocal({ op: "delete", id: label.id });
    this.pushUndo([
      {
        op: "create",
        track_id: label.track_id,
        type_id: label.type_id,
        start: label.start,
        end: label.end,
        id: label.id,
        text: label.text,
      },
    ]);
    this.queue.push({ op: "delete", id: label.id });
    this.selectedId = null;
    this.hooks.onDatasetChanged?.();
  }

  undo(): void {
    const inverses = this.undoStack.pop();
    if (!inverses) return;
    const redo: EditDoc[] = [];
    for (const inverse of inverses) {
      const back = this.applyLocal(inverse);
      if (back) redo.push(back);
      this.queue.push(inverse);
    }
    this.redoStack.push(redo);
    this.hooks.onDatasetChanged?.();
  }

  redo(): void {
    const edits = this.redoStack.pop();
    if (!edits) return;
    const undo: EditDoc[] = [];
    for (const edit of edits) {
      const back = this.applyLocal(edit);
      if (back) undo.push(back);
      this.queue.push(edit);
    }
    this.undoStack.push(undo);
    this.hooks.onDatasetChanged?.();
  }

  // Apply an edit to the local snapshot, returning its inverse.
  private applyLocal(edit: EditDoc): EditDoc | null {
    const labels = this.dataset.labels;
    switch (edit.op) {
      case "create": {
        const id = edit.id ?? `tmp-${++this.tempCounter}`;
        labels.push({
          id,
          track_id: edit.track_id,
          type_id: edit.type_id,
          start: edit.start,
          end: edit.end,
          text: edit.text ?? "",
        });
        return { op: "delete", id };
      }
      case "delete": {
        const at = labels.findIndex((l) => l.id === edit.id);
        if (at < 0) return null;
        const label = labels[at];
        labels.splice(at, 1);
        return {
          op: "create",
          track_id: label.track_id,
          type_id: label.type_id,
          start: label.start,
          end: label.end,
          id: label.id,
          text: label.text,
        };
      }
      case "resize": {
        const label = this.label(edit.id);
        if (!label) return null;
        const old = edit.edge === "start" ? label.start : label.end;
        if (edit.edge === "start") label.start = edit.time;
        else label.end = edit.time;
        return { op: "resize", id: edit.id, edge: edit.edge, time: old };
      }
      case "move": {
        const label = this.label(edit.id);
        if (!label) return null;
        label.start += edit.delta;
        label.end += edit.delta;
        return { op: "move", id: edit.id, delta: -edit.delta };
      }
      case "set_text": {
        const label = this.label(edit.id);
        if (!label) return null;
        const old = label.text ?? "";
        label.text = edit.text;
        return { op: "set_text", id: edit.id, text: old };
      }
      default:
        return null;
    }
  }

  private pushUndo(inverses: EditDoc[]): void {
    this.undoStack.push(inverses);
    this.redoStack = [];
  }

  // --- server reconciliation -----------------------------------------------------

  private reconcile(response: EditBatchResponse, sent: EditDoc[]): void {
    for (let i = 0; i < sent.length; i++) {
      const sentEdit = sent[i];
      const result = response.results[i];
      if (!result) continue;
      if (sentEdit.op === "create" && !("id" in sentEdit && sentEdit.id) && result.label_id) {
        this.adoptServerId(result.label_id, sentEdit);
      }
      if (result.label_id !== undefined && result.start !== undefined && result.end !== undefined) {
        this.eventLog.push({
          kind: "server_commit",
          op: result.op,
          labelId: result.label_id,
          start: result.start,
          end: result.end,
          revision: response.revision,
        });
      }
    }
    this.hooks.onDatasetChanged?.();
  }

  // Rewrite one optimistic temp id to the server-allocated id everywhere.
  private adoptServerId(serverId: string, sentEdit: EditDoc & { op: "create" }): void {
    const temp = this.dataset.labels.find(
      (l) =>
        l.id.startsWith("tmp-") &&
        l.track_id === sentEdit.track_id &&
        l.start === sentEdit.start &&
        l.end === sentEdit.end,
    );
    if (!temp) return;
    const tempId = temp.id;
    temp.id = serverId;
    if (this.selectedId === tempId) this.selectedId = serverId;
    const rewrite = (edits: EditDoc[][]) => {
      for (const group of edits) {
        for (const edit of group) {
          if ("id" in edit && edit.id === tempId) edit.id = serverId;
        }
      }
    };
    rewrite(this.undoStack);
    rewrite(this.redoStack);
    for (const entry of this.eventLog) {
      if (entry.tempId === tempId) entry.labelId = serverId;
    }
  }

  private async reloadAfterConflict(revision: number): Promise<void> {
    this.hooks.onToast?.(`edits conflicted with revision ${revision}; reloading`);
    this.dataset = structuredClone(await this.api.getDataset(this.project.id, this.datasetId));
    this.queue.resync(this.dataset.revision);
    this.undoStack = [];
    this.redoStack = [];
    this.eventLog.push({ kind: "conflict_reload", revision: this.dataset.revision });
    this.hooks.onDatasetChanged?.();
  }

  // --- transport & view ------------------------------------------------------------

  private shiftRate(direction: number): void {
    const current = this.clock.rate();
    let index = this.presets.findIndex((p) => p === current);
    if (index < 0) {
      index = this.presets.reduce(
        (best, p, i) => (Math.abs(p - current) < Math.abs(this.presets[best] - current) ? i : best),
        0,
      );
    }
    const next = this.presets[Math.max(0, Math.min(this.presets.length - 1, index + direction))];
    this.clock.setRate(next);
  }

  seek(t: number): void {
    this.clock.seekUs(clampUs(t, 0, this.duration));
    this.window = panTo(this.window, this.clock.timeUs(), this.duration);
  }

  zoom(factor: number): void {
    this.window = zoomBy(this.window, this.clock.timeUs(), factor, this.duration);
  }

  select(labelId: string | null): void {
    this.selectedId = labelId;
  }

  jumpToLabel(labelId: string): void {
    const label = this.label(labelId);
    if (!label) return;
    this.select(labelId);
    this.seek(label.start);
  }

  switchCamera(sourceId: string): void {
    const source = this.project.sources.find((s) => s.id === sourceId);
    if (!source || source.id === this.currentSource.id) return;
    const position = this.clock.timeUs(); // instant switch: same timeline position
    this.currentSource = source;
    this.hooks.onSourceChanged?.(source);
    this.clock.seekUs(position);
    this.eventLog.push({ kind: "camera_switch", sourceId, position });
  }
}

export function parseRate(value: number | string): number {
  if (typeof value === "number") return value;
  if (value.includes("/")) {
    const [num, den] = value.split("/");
    return Number(num) / Number(den);
  }
  return Number(value);
}

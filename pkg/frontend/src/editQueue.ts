// Optimistic edit batching: at most one in-flight batch per dataset; later
// keystrokes queue locally and ship together once the previous batch is
// acknowledged. Keystroke latency therefore never waits on the network. A
// revision conflict (another tab won) drops the queue and asks the owner to
// reload and resync.

import { ApiClient, ConflictError } from "./api.js";
import type { EditBatchResponse, EditDoc } from "./types.js";

export interface QueueCallbacks {
  onCommitted(response: EditBatchResponse, sent: EditDoc[]): void;
  onConflict(serverRevision: number): void;
  onError(error: unknown): void;
}

export class EditQueue {
  private pending: EditDoc[] = [];
  private inFlight = false;
  private revision: number;

  constructor(
    private api: ApiClient,
    private projectId: string,
    private datasetId: string,
    baseRevision: number,
    private callbacks: QueueCallbacks,
  ) {
    this.revision = baseRevision;
  }

  get baseRevision(): number {
    return this.revision;
  }

  // after a conflict the owner reloads the dataset and resyncs the queue
  resync(revision: number): void {
    this.pending = [];
    this.revision = revision;
  }

  push(edit: EditDoc): void {
    this.pending.push(edit);
    void this.flush();
  }

  // resolves when nothing is queued or in flight (tests, shutdown)
  async drain(): Promise<void> {
    while (this.inFlight || this.pending.length > 0) {
      await new Promise((resolve) => setTimeout(resolve, 5));
    }
  }

  private async flush(): Promise<void> {
    if (this.inFlight || this.pending.length === 0) return;
    this.inFlight = true;
    const batch = this.pending;
    this.pending = [];
    try {
      const response = await this.api.postEdits(this.projectId, this.datasetId, this.revision, batch);
      this.revision = response.revision;
      this.callbacks.onCommitted(response, batch);
    } catch (error) {
      if (error instanceof ConflictError) {
        this.pending = [];
        this.callbacks.onConflict(error.revision);
      } else {
        this.callbacks.onError(error);
      }
    } finally {
      this.inFlight = false;
      if (this.pending.length > 0) void this.flush();
    }
  }
}

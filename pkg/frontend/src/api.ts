// Typed client for the annotation server. All state mutations flow through
// POST .../edits; everything else is plain reads.

import type {
  DatasetDoc,
  EditBatchResponse,
  EditDoc,
  ProjectDoc,
  UserConfigDoc,
} from "./types.js";

export class ConflictError extends Error {
  constructor(public revision: number) {
    super(`revision conflict; server at ${revision}`);
  }
}

export class ApiError extends Error {
  constructor(public status: number, public code: string, detail?: string) {
    super(`${status} ${code}${detail ? `: ${detail}` : ""}`);
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      if (response.status === 409) throw new ConflictError(body.revision ?? -1);
      throw new ApiError(response.status, body.error ?? "error", body.detail);
    }
    return body as T;
  }

  listProjects(): Promise<ProjectDoc[]> {
    return this.json("/api/projects");
  }

  getProject(id: string): Promise<ProjectDoc> {
    return this.json(`/api/projects/${id}`);
  }

  getDataset(projectId: string, datasetId: string): Promise<DatasetDoc> {
    return this.json(`/api/projects/${projectId}/datasets/${datasetId}`);
  }

  postEdits(
    projectId: string,
    datasetId: string,
    baseRevision: number,
    edits: EditDoc[],
  ): Promise<EditBatchResponse> {
    return this.json(`/api/projects/${projectId}/datasets/${datasetId}/edits`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ base_revision: baseRevision, edits }),
    });
  }

  getConfig(): Promise<UserConfigDoc> {
    return this.json("/api/config");
  }

  putConfig(config: UserConfigDoc): Promise<UserConfigDoc> {
    return this.json("/api/config", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  mediaUrl(sourceId: string): string {
    return `${this.base}/media/${sourceId}`;
  }

  thumbUrl(sourceId: string, tUs: number, widthPx: number): string {
    return `${this.base}/media/${sourceId}/thumb?t=${tUs}&w=${widthPx}`;
  }
}

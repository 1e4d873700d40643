/**
 * Typed client for the room-audit review service.
 *
 * The UI owns no data: everything it shows comes from these endpoints, and
 * every review decision goes back through them.  Mutations are funnelled
 * through a FIFO queue so at most one POST is in flight at a time — the
 * server serializes writers anyway, and ordering the requests client-side
 * keeps optimistic state and server state from interleaving.
 */

export type IssueStatus = "active" | "confirmed" | "dismissed";

export type IssueCategory =
  | "ObjectDimension"
  | "ObjectPosition"
  | "RiskyItem"
  | "LackOfAssistiveItem";

export interface Measured {
  value: number; // inches, as the rubrics compare
  unit: string;
  cm: number;
  meters: number;
}

export interface RubricInfo {
  name: string;
  communities: string[];
  note: string | null;
  description: string | null;
  suggestions: string[];
  sources: { label?: string; url?: string }[];
}

export interface Issue {
  id: string;
  rubric_id: string;
  category: IssueCategory;
  subject_ids: string[];
  anchor: number[]; // [x, y, z] world meters
  message: string;
  status: IssueStatus;
  measured: Measured | null;
  rubric: RubricInfo;
}

export interface Wall {
  id: string;
  start: [number, number];
  end: [number, number];
  height: number;
}

export interface WallElement {
  id: string;
  kind: "door" | "opening" | "window";
  wall_id: string;
  offset: number;
  width: number;
  sill: number;
  height: number;
}

export interface SceneObject {
  id: string;
  category: string;
  center: number[];
  half_extents: number[];
  yaw: number;
  provenance: string;
  confidence?: number;
}

export interface Scene {
  id: string;
  meta: Record<string, unknown>;
  walls: Wall[];
  elements: WallElement[];
  objects: SceneObject[];
}

export interface Summary {
  total: number;
  by_category: Record<string, number>;
  by_status: Record<string, number>;
}

/** A non-2xx response, with the server's detail string when the body carried one. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body && typeof body.detail === "string") {
        detail = body.detail;
      }
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  private fetchImpl: FetchLike;

  constructor(
    readonly base = "",
    fetchImpl?: FetchLike,
  ) {
    // bind so a bare `fetch` keeps its window receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  getScene(): Promise<Scene> {
    return this.get<Scene>("/api/scene");
  }

  getIssues(): Promise<Issue[]> {
    return this.get<Issue[]>("/api/issues");
  }

  getSummary(): Promise<Summary> {
    return this.get<Summary>("/api/summary");
  }

  confirm(issueId: string): Promise<Issue> {
    return this.post<Issue>(`/api/issues/${encodeURIComponent(issueId)}/confirm`);
  }

  dismiss(issueId: string): Promise<Issue> {
    return this.post<Issue>(`/api/issues/${encodeURIComponent(issueId)}/dismiss`);
  }

  private async get<T>(path: string): Promise<T> {
    return asJson<T>(await this.fetchImpl(this.base + path));
  }

  private async post<T>(path: string): Promise<T> {
    return asJson<T>(await this.fetchImpl(this.base + path, { method: "POST" }));
  }
}

/**
 * FIFO queue holding mutations to one at a time.
 *
 * `enqueue` resolves/rejects with the task's own outcome; a failed task
 * never blocks the ones queued behind it.
 */
export class MutationQueue {
  private tail: Promise<void> = Promise.resolve();
  private pending = 0;

  get size(): number {
    return this.pending;
  }

  enqueue<T>(task: () => Promise<T>): Promise<T> {
    this.pending += 1;
    const result = this.tail.then(task);
    this.tail = result.then(
      () => {
        this.pending -= 1;
      },
      () => {
        this.pending -= 1;
      },
    );
    return result;
  }
}

/**
 * Test doubles: a recording 2D context (jsdom ships no canvas backend) and
 * an in-memory stand-in for the review service.
 *
 * The fake service mirrors the real endpoints' contract — same routes, same
 * status codes, same transition rules (active may become confirmed or
 * dismissed, repeats are no-ops, everything else is 409) — and persists
 * statuses in the report document it was given.  Handing the same document
 * to a new instance models a service restart over the same report file.
 */

import type { FetchLike, Issue, IssueStatus, Scene, Summary } from "../src/api.js";

// ---------------------------------------------------------------------------
// canvas

export interface RecordedStroke {
  style: string;
  lineWidth: number;
  dash: number[];
  alpha: number;
  path: { kind: string; args: number[] }[];
}

export class RecordingContext {
  fillStyle: string | CanvasGradient | CanvasPattern = "#000000";
  strokeStyle: string | CanvasGradient | CanvasPattern = "#000000";
  lineWidth = 1;
  globalAlpha = 1;
  font = "";
  textAlign = "";

  strokes: RecordedStroke[] = [];
  fills: { style: string; alpha: number }[] = [];
  texts: string[] = [];

  private dash: number[] = [];
  private path: { kind: string; args: number[] }[] = [];

  setTransform(): void {}
  clearRect(): void {}
  fillRect(): void {}
  save(): void {}
  restore(): void {}
  translate(): void {}
  rotate(): void {}

  setLineDash(segments: number[]): void {
    this.dash = [...segments];
  }

  beginPath(): void {
    this.path = [];
  }

  moveTo(x: number, y: number): void {
    this.path.push({ kind: "moveTo", args: [x, y] });
  }

  lineTo(x: number, y: number): void {
    this.path.push({ kind: "lineTo", args: [x, y] });
  }

  arc(x: number, y: number, r: number): void {
    this.path.push({ kind: "arc", args: [x, y, r] });
  }

  rect(x: number, y: number, w: number, h: number): void {
    this.path.push({ kind: "rect", args: [x, y, w, h] });
  }

  closePath(): void {
    this.path.push({ kind: "closePath", args: [] });
  }

  stroke(): void {
    this.strokes.push({
      style: String(this.strokeStyle),
      lineWidth: this.lineWidth,
      dash: [...this.dash],
      alpha: this.globalAlpha,
      path: [...this.path],
    });
  }

  fill(): void {
    this.fills.push({ style: String(this.fillStyle), alpha: this.globalAlpha });
  }

  strokeRect(): void {
    this.strokes.push({
      style: String(this.strokeStyle),
      lineWidth: this.lineWidth,
      dash: [...this.dash],
      alpha: this.globalAlpha,
      path: [{ kind: "strokeRect", args: [] }],
    });
  }

  fillText(text: string): void {
    this.texts.push(text);
  }
}

/** Route every canvas's 2d context to a RecordingContext for one test. */
export function installCanvasStub(): { contexts: RecordingContext[]; restore: () => void } {
  const contexts: RecordingContext[] = [];
  const proto = HTMLCanvasElement.prototype as unknown as {
    getContext: (kind: string) => unknown;
  };
  const original = proto.getContext;
  proto.getContext = function (this: HTMLCanvasElement, kind: string) {
    if (kind !== "2d") {
      return null;
    }
    const holder = this as HTMLCanvasElement & { __ctx?: RecordingContext };
    if (holder.__ctx === undefined) {
      holder.__ctx = new RecordingContext();
      contexts.push(holder.__ctx);
    }
    return holder.__ctx;
  };
  return {
    contexts,
    restore: () => {
      proto.getContext = original;
    },
  };
}

// ---------------------------------------------------------------------------
// sample data

export interface ReportDoc {
  scene: Scene;
  issues: Issue[];
}

function makeIssue(partial: {
  id: string;
  rubric_id: string;
  category: Issue["category"];
  anchor: number[];
  message: string;
  measured?: number; // inches
  name?: string;
  suggestions?: string[];
}): Issue {
  const inches = partial.measured;
  return {
    id: partial.id,
    rubric_id: partial.rubric_id,
    category: partial.category,
    subject_ids: [partial.id.split(":")[1] ?? "obj"],
    anchor: partial.anchor,
    message: partial.message,
    status: "active",
    measured:
      inches === undefined
        ? null
        : { value: inches, unit: "in", cm: inches * 2.54, meters: inches * 0.0254 },
    rubric: {
      name: partial.name ?? partial.rubric_id,
      communities: ["Wheelchair"],
      note: null,
      description: "Why this matters, in one sentence.",
      suggestions: partial.suggestions ?? ["Adjust it."],
      sources: [{ label: "Guideline", url: "https://example.org/guideline" }],
    },
  };
}

/** A 5 m x 4 m room with one door, one opening, a table, and five issues. */
export function sampleDoc(): ReportDoc {
  const scene: Scene = {
    id: "sample-room",
    meta: {},
    walls: [
      { id: "w0", start: [0, 0], end: [5, 0], height: 2.6 },
      { id: "w1", start: [5, 0], end: [5, 4], height: 2.6 },
      { id: "w2", start: [5, 4], end: [0, 4], height: 2.6 },
      { id: "w3", start: [0, 4], end: [0, 0], height: 2.6 },
    ],
    elements: [
      { id: "d0", kind: "door", wall_id: "w0", offset: 1.0, width: 0.9, sill: 0, height: 2.0 },
      { id: "o0", kind: "opening", wall_id: "w2", offset: 2.0, width: 1.2, sill: 0, height: 2.0 },
    ],
    objects: [
      {
        id: "table_1",
        category: "table",
        center: [2.5, 2.0, 0.475],
        half_extents: [0.8, 0.5, 0.475],
        yaw: 0,
        provenance: "fused_detection",
      },
    ],
  };
  const issues: Issue[] = [
    makeIssue({
      id: "table.dim_height:table_1",
      rubric_id: "table.dim_height",
      category: "ObjectDimension",
      anchor: [2.5, 2.0, 0.95],
      message: "Warning: Table too high!",
      measured: 37.4,
      name: "Table height",
    }),
    makeIssue({
      id: "bed.dim_height:bed_1",
      rubric_id: "bed.dim_height",
      category: "ObjectDimension",
      anchor: [1.0, 3.2, 0.61],
      message: "Warning: Bed too high!",
      measured: 24.0,
      name: "Bed height",
    }),
    makeIssue({
      id: "lightswitch.pos_height:switch_1",
      rubric_id: "lightswitch.pos_height",
      category: "ObjectPosition",
      anchor: [0.05, 1.5, 1.5],
      message: "Warning: Light switch is unreachable!",
      measured: 59.1,
      name: "Light switch height",
    }),
    makeIssue({
      id: "knives.existenceornot:knife_1",
      rubric_id: "knives.existenceornot",
      category: "RiskyItem",
      anchor: [4.2, 0.8, 0.9],
      message: "Warning: Knife detected!",
      name: "Knife present",
    }),
    makeIssue({
      id: "grabbar_existence_toilet.existenceornot:toilet_1",
      rubric_id: "grabbar_existence_toilet.existenceornot",
      category: "LackOfAssistiveItem",
      anchor: [4.5, 3.5, 0.4],
      message: "Warning: No grab bar detected near toilet!",
      name: "Grab bar near toilet",
      suggestions: ["Add a toilet grab bar."],
    }),
  ];
  return { scene, issues };
}

// ---------------------------------------------------------------------------
// fake service

const FINAL_STATUSES: IssueStatus[] = ["confirmed", "dismissed"];

/**
 * One "process" serving a report document over the wire shape of the real
 * service.  Construct a second instance over the same document to model a
 * restart; the document plays the part of the report file on disk.
 */
export class FakeService {
  requestLog: string[] = [];
  inFlight = 0;
  maxInFlight = 0;
  failNextPost = false;
  /** When set, POST handling waits on this before touching the document. */
  postGate: Promise<void> | null = null;

  constructor(private doc: ReportDoc) {}

  get fetch(): FetchLike {
    return (input, init) => this.handle(input, init);
  }

  summary(): Summary {
    const byCategory: Record<string, number> = {};
    const byStatus: Record<string, number> = {};
    for (const issue of this.doc.issues) {
      byCategory[issue.category] = (byCategory[issue.category] ?? 0) + 1;
      byStatus[issue.status] = (byStatus[issue.status] ?? 0) + 1;
    }
    return { total: this.doc.issues.length, by_category: byCategory, by_status: byStatus };
  }

  private async handle(input: string, init?: RequestInit): Promise<Response> {
    this.requestLog.push(`${init?.method ?? "GET"} ${input}`);
    this.inFlight += 1;
    this.maxInFlight = Math.max(this.maxInFlight, this.inFlight);
    try {
      if (init?.method === "POST") {
        if (this.postGate !== null) {
          await this.postGate;
        }
        return this.handlePost(input);
      }
      return this.handleGet(input);
    } finally {
      this.inFlight -= 1;
    }
  }

  private respond(status: number, body: unknown): Response {
    // round-trip through JSON: real responses never share references
    const wire = JSON.stringify(body);
    return {
      ok: status >= 200 && status < 300,
      status,
      statusText: String(status),
      json: async () => JSON.parse(wire) as unknown,
    } as unknown as Response;
  }

  private handleGet(path: string): Response {
    switch (path) {
      case "/api/scene":
        return this.respond(200, this.doc.scene);
      case "/api/issues":
        return this.respond(200, this.doc.issues);
      case "/api/summary":
        return this.respond(200, this.summary());
      default:
        return this.respond(404, { detail: `no route ${path}` });
    }
  }

  private handlePost(path: string): Response {
    if (this.failNextPost) {
      this.failNextPost = false;
      return this.respond(500, { detail: "injected failure" });
    }
    const match = /^\/api\/issues\/(.+)\/(confirm|dismiss)$/.exec(path);
    if (match === null) {
      return this.respond(404, { detail: `no route ${path}` });
    }
    const issueId = decodeURIComponent(match[1]!);
    const target: IssueStatus = match[2] === "confirm" ? "confirmed" : "dismissed";
    const issue = this.doc.issues.find((i) => i.id === issueId);
    if (issue === undefined) {
      return this.respond(404, { detail: `no issue '${issueId}'` });
    }
    if (issue.status !== target) {
      if (FINAL_STATUSES.includes(issue.status)) {
        return this.respond(409, {
          detail: `cannot change issue ${issueId} from ${issue.status} to ${target}`,
        });
      }
      issue.status = target;
    }
    return this.respond(200, issue);
  }
}

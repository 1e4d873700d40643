/**
 * Application shell: fetch, view state, and the review workflow.
 *
 * State here is a plain projection of the API responses plus transient view
 * state (selection, filters, pan/zoom) — a hard refresh reproduces the same
 * content.  Review decisions apply optimistically: the issue flips locally,
 * the POST goes through the FIFO mutation queue, and on failure the local
 * change rolls back and the error surfaces as a toast.  After a mutation
 * settles the summary is re-fetched, so the header counts and the plan's
 * markers always agree with the server.
 */

import { ApiClient, ApiError, MutationQueue } from "./api.js";
import type { Issue, IssueCategory, IssueStatus, Scene, Summary } from "./api.js";
import { DetailPanel } from "./detail.js";
import { FloorPlan } from "./floorplan.js";
import { STATUS_LABELS } from "./format.js";
import { IssueList, type ReviewAction } from "./list.js";
import { legendEntries } from "./markers.js";

const ALL_CATEGORIES: IssueCategory[] = [
  "ObjectDimension",
  "ObjectPosition",
  "RiskyItem",
  "LackOfAssistiveItem",
];
const ALL_STATUSES: IssueStatus[] = ["active", "confirmed", "dismissed"];

function isTextInputLike(target: EventTarget | null): boolean {
  return (
    target instanceof HTMLInputElement ||
    target instanceof HTMLTextAreaElement ||
    target instanceof HTMLSelectElement ||
    (target instanceof HTMLElement && target.isContentEditable)
  );
}

export class App {
  readonly api: ApiClient;
  readonly queue = new MutationQueue();
  readonly floorplan: FloorPlan;
  readonly list: IssueList;
  readonly detail: DetailPanel;

  scene: Scene | null = null;
  issues: Issue[] = [];
  summary: Summary | null = null;
  selectedId: string | null = null;
  categoryFilter = new Set<IssueCategory>(ALL_CATEGORIES);
  statusFilter = new Set<IssueStatus>(ALL_STATUSES);

  private banner: HTMLElement;
  private bannerText: HTMLElement;
  private chips: HTMLElement;
  private sceneLabel: HTMLElement;
  private toastRegion: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient = new ApiClient()) {
    this.api = api;
    root.textContent = "";

    const header = document.createElement("header");
    header.className = "topbar";
    const title = document.createElement("h1");
    title.textContent = "Room audit review";
    header.appendChild(title);
    this.sceneLabel = document.createElement("span");
    this.sceneLabel.className = "scene-label";
    header.appendChild(this.sceneLabel);
    this.chips = document.createElement("div");
    this.chips.className = "summary-chips";
    header.appendChild(this.chips);
    root.appendChild(header);

    this.banner = document.createElement("div");
    this.banner.className = "banner";
    this.banner.hidden = true;
    this.bannerText = document.createElement("span");
    this.banner.appendChild(this.bannerText);
    const retry = document.createElement("button");
    retry.type = "button";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void this.load());
    this.banner.appendChild(retry);
    root.appendChild(this.banner);

    const layout = document.createElement("main");
    layout.className = "layout";

    const planPane = document.createElement("section");
    planPane.className = "plan-pane";
    planPane.setAttribute("aria-label", "Floor plan");
    const toolbar = document.createElement("div");
    toolbar.className = "plan-toolbar";
    const fitButton = document.createElement("button");
    fitButton.type = "button";
    fitButton.textContent = "Fit view";
    fitButton.addEventListener("click", () => this.floorplan.fit());
    toolbar.appendChild(fitButton);
    planPane.appendChild(toolbar);
    const canvasHolder = document.createElement("div");
    canvasHolder.className = "plan-canvas-holder";
    planPane.appendChild(canvasHolder);
    this.floorplan = new FloorPlan(canvasHolder);
    this.floorplan.onSelect = (issueId) => this.select(issueId);
    planPane.appendChild(this.buildLegend());
    layout.appendChild(planPane);

    const sidePane = document.createElement("aside");
    sidePane.className = "side-pane";
    sidePane.appendChild(this.buildStatusFilter());
    this.list = new IssueList(sidePane);
    this.list.onSelect = (issueId) => this.select(issueId);
    this.list.onAction = (issueId, action) => void this.applyAction(issueId, action);
    this.detail = new DetailPanel(sidePane);
    this.detail.onAction = (issueId, action) => void this.applyAction(issueId, action);
    layout.appendChild(sidePane);

    root.appendChild(layout);

    const hints = document.createElement("footer");
    hints.className = "hints";
    hints.textContent =
      "Keyboard: ↑/↓ move through issues · Enter opens · c confirms · d dismisses · Esc clears · 0 refits the plan";
    root.appendChild(hints);

    this.toastRegion = document.createElement("div");
    this.toastRegion.className = "toast-region";
    this.toastRegion.setAttribute("aria-live", "polite");
    root.appendChild(this.toastRegion);

    root.addEventListener("keydown", (event) => {
      if (isTextInputLike(event.target)) {
        return;
      }
      if (event.key === "Escape") {
        this.select(null);
      } else if (event.key === "0") {
        this.floorplan.fit();
      }
    });
  }

  async load(): Promise<void> {
    this.banner.hidden = true;
    try {
      const [scene, issues, summary] = await Promise.all([
        this.api.getScene(),
        this.api.getIssues(),
        this.api.getSummary(),
      ]);
      this.scene = scene;
      this.issues = issues;
      this.summary = summary;
      this.sceneLabel.textContent = scene.id;
      if (this.selectedId !== null && !issues.some((i) => i.id === this.selectedId)) {
        this.selectedId = null;
      }
      this.renderAll();
    } catch (error) {
      this.bannerText.textContent = `Could not reach the review service: ${
        error instanceof Error ? error.message : String(error)
      }`;
      this.banner.hidden = false;
    }
  }

  select(issueId: string | null): void {
    // the selection invariant: a selected id always names a fetched issue
    if (issueId !== null && !this.issues.some((i) => i.id === issueId)) {
      return;
    }
    this.selectedId = issueId;
    this.renderAll();
  }

  /**
   * Optimistically apply a review decision, then push it to the server.
   * Returns the queued round-trip so callers (and tests) can await settle.
   */
  applyAction(issueId: string, action: ReviewAction): Promise<void> {
    const issue = this.issues.find((i) => i.id === issueId);
    if (issue === undefined || issue.status !== "active") {
      return Promise.resolve();
    }
    const previous = issue.status;
    issue.status = action === "confirm" ? "confirmed" : "dismissed";
    this.renderAll();

    return this.queue.enqueue(async () => {
      try {
        const updated =
          action === "confirm" ? await this.api.confirm(issueId) : await this.api.dismiss(issueId);
        const index = this.issues.findIndex((i) => i.id === issueId);
        if (index >= 0) {
          this.issues[index] = updated;
        }
        this.summary = await this.api.getSummary();
        this.renderAll();
      } catch (error) {
        issue.status = previous;
        this.renderAll();
        if (error instanceof ApiError && error.status === 409) {
          this.toast(`Conflict: ${error.message}`);
        } else {
          this.toast(
            `Could not ${action} issue: ${error instanceof Error ? error.message : String(error)}`,
          );
        }
      }
    });
  }

  visibleIssues(): Issue[] {
    return this.issues.filter(
      (issue) => this.categoryFilter.has(issue.category) && this.statusFilter.has(issue.status),
    );
  }

  selectedIssue(): Issue | null {
    return this.issues.find((i) => i.id === this.selectedId) ?? null;
  }

  renderAll(): void {
    if (this.scene !== null) {
      this.floorplan.setData(this.scene, this.visibleIssues(), this.selectedId);
    }
    this.list.setData(this.visibleIssues(), this.selectedId);
    this.detail.render(this.selectedIssue());
    this.renderChips();
  }

  private renderChips(): void {
    this.chips.textContent = "";
    if (this.summary === null) {
      return;
    }
    const total = document.createElement("span");
    total.className = "chip";
    total.textContent = `${this.summary.total} issues`;
    this.chips.appendChild(total);
    for (const status of ALL_STATUSES) {
      const count = this.summary.by_status[status] ?? 0;
      const chip = document.createElement("span");
      chip.className = `chip chip-${status}`;
      chip.textContent = `${count} ${STATUS_LABELS[status].toLowerCase()}`;
      this.chips.appendChild(chip);
    }
  }

  private buildLegend(): HTMLElement {
    const legend = document.createElement("div");
    legend.className = "legend";
    legend.setAttribute("aria-label", "Marker legend and category filter");
    for (const entry of legendEntries()) {
      const label = document.createElement("label");
      label.className = "legend-entry";
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.checked = true;
      checkbox.addEventListener("change", () => {
        if (checkbox.checked) {
          this.categoryFilter.add(entry.category);
        } else {
          this.categoryFilter.delete(entry.category);
        }
        this.renderAll();
      });
      label.appendChild(checkbox);
      const glyph = document.createElement("span");
      glyph.className = `glyph glyph-${entry.style.shape}`;
      glyph.style.setProperty("--marker-color", entry.style.color);
      glyph.setAttribute("aria-hidden", "true");
      label.appendChild(glyph);
      label.appendChild(document.createTextNode(entry.label));
      legend.appendChild(label);
    }
    return legend;
  }

  private buildStatusFilter(): HTMLElement {
    const row = document.createElement("div");
    row.className = "status-filter";
    row.setAttribute("aria-label", "Status filter");
    for (const status of ALL_STATUSES) {
      const button = document.createElement("button");
      button.type = "button";
      button.textContent = STATUS_LABELS[status];
      button.setAttribute("aria-pressed", "true");
      button.addEventListener("click", () => {
        if (this.statusFilter.has(status)) {
          this.statusFilter.delete(status);
        } else {
          this.statusFilter.add(status);
        }
        button.setAttribute("aria-pressed", String(this.statusFilter.has(status)));
        this.renderAll();
      });
      row.appendChild(button);
    }
    return row;
  }

  private toast(text: string): void {
    const toast = document.createElement("div");
    toast.className = "toast";
    toast.textContent = text;
    this.toastRegion.appendChild(toast);
    setTimeout(() => toast.remove(), 4000);
  }
}

/**
 * Synchronized issue list: a keyboard-first listbox next to the plan.
 *
 * Review studies kept asking for a list-format summary alongside the map,
 * and a list is also the accessible path: every decision the mouse can make
 * on the canvas can be made here with arrows + Enter + one letter.
 *
 * Roving tabindex: exactly one option is tabbable; arrows move it.  Keys:
 *   ArrowUp/ArrowDown  move through issues
 *   Home/End           jump to first/last
 *   Enter or Space     open the focused issue in the detail panel
 *   c / d              confirm / dismiss the focused issue
 */

import type { Issue } from "./api.js";
import { formatMeasured, STATUS_LABELS } from "./format.js";
import { MARKER_STYLES } from "./markers.js";

export type ReviewAction = "confirm" | "dismiss";

export class IssueList {
  readonly element: HTMLElement;
  onSelect: (issueId: string) => void = () => {};
  onAction: (issueId: string, action: ReviewAction) => void = () => {};

  private issues: Issue[] = [];
  private selectedId: string | null = null;
  private focusedId: string | null = null;

  constructor(container: HTMLElement) {
    this.element = document.createElement("ul");
    this.element.className = "issue-list";
    this.element.setAttribute("role", "listbox");
    this.element.setAttribute("aria-label", "Detected issues");
    this.element.addEventListener("keydown", this.onKeyDown);
    container.appendChild(this.element);
  }

  setData(issues: Issue[], selectedId: string | null): void {
    this.issues = issues;
    this.selectedId = selectedId;
    if (this.focusedId === null || !issues.some((i) => i.id === this.focusedId)) {
      this.focusedId = issues[0]?.id ?? null;
    }
    this.renderItems();
  }

  /** Move focus into the list (the tabbable option). */
  focus(): void {
    const current = this.element.querySelector<HTMLElement>('[tabindex="0"]');
    current?.focus();
  }

  private renderItems(): void {
    const active = document.activeElement;
    const hadFocus = active !== null && this.element.contains(active);
    this.element.textContent = "";

    for (const issue of this.issues) {
      const item = document.createElement("li");
      item.setAttribute("role", "option");
      item.dataset.issueId = issue.id;
      item.tabIndex = issue.id === this.focusedId ? 0 : -1;
      item.setAttribute("aria-selected", String(issue.id === this.selectedId));
      item.className = "issue-item";
      if (issue.id === this.selectedId) {
        item.classList.add("is-selected");
      }
      if (issue.status !== "active") {
        item.classList.add("is-settled");
      }

      const glyph = document.createElement("span");
      const style = MARKER_STYLES[issue.category];
      glyph.className = `glyph glyph-${style.shape}`;
      glyph.style.setProperty("--marker-color", style.color);
      glyph.setAttribute("aria-hidden", "true");
      item.appendChild(glyph);

      const body = document.createElement("span");
      body.className = "issue-item-body";
      const name = document.createElement("span");
      name.className = "issue-item-name";
      name.textContent = issue.rubric.name || issue.rubric_id;
      body.appendChild(name);
      const detail = document.createElement("span");
      detail.className = "issue-item-detail";
      detail.textContent =
        issue.measured !== null ? formatMeasured(issue.measured) : issue.message;
      body.appendChild(detail);
      item.appendChild(body);

      const badge = document.createElement("span");
      badge.className = `status-badge status-${issue.status}`;
      badge.textContent = STATUS_LABELS[issue.status];
      item.appendChild(badge);

      item.addEventListener("click", () => {
        this.focusedId = issue.id;
        this.renderItems();
        this.onSelect(issue.id);
      });

      this.element.appendChild(item);
    }

    if (hadFocus) {
      this.focus();
    }
  }

  private onKeyDown = (event: KeyboardEvent): void => {
    const target = event.target;
    if (!(target instanceof HTMLElement) || target.dataset.issueId === undefined) {
      return;
    }
    const issueId = target.dataset.issueId;
    const index = this.issues.findIndex((i) => i.id === issueId);
    if (index < 0) {
      return;
    }

    let nextIndex: number | null = null;
    switch (event.key) {
      case "ArrowDown":
        nextIndex = Math.min(index + 1, this.issues.length - 1);
        break;
      case "ArrowUp":
        nextIndex = Math.max(index - 1, 0);
        break;
      case "Home":
        nextIndex = 0;
        break;
      case "End":
        nextIndex = this.issues.length - 1;
        break;
      case "Enter":
      case " ":
        event.preventDefault();
        this.onSelect(issueId);
        return;
      case "c":
        event.preventDefault();
        this.onAction(issueId, "confirm");
        return;
      case "d":
      case "Delete":
        event.preventDefault();
        this.onAction(issueId, "dismiss");
        return;
      default:
        return;
    }

    event.preventDefault();
    const next = this.issues[nextIndex];
    if (next !== undefined && next.id !== this.focusedId) {
      this.focusedId = next.id;
      this.renderItems();
      this.focus();
    }
  };
}

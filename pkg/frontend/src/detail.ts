/**
 * Detail panel for the selected issue: why it is risky and how to fix it.
 *
 * Everything shown here comes off the issue payload — the resolved message,
 * the rubric's description and suggestions, source links, and the measured
 * value in both centimeters and inches.  Confirm/Dismiss appear while the
 * issue is still active; settled issues show a status badge and disabled
 * buttons, since confirmed and dismissed are final.
 */

import type { Issue } from "./api.js";
import { CATEGORY_LABELS, formatMeasured, humanizeId, STATUS_LABELS } from "./format.js";
import type { ReviewAction } from "./list.js";

export class DetailPanel {
  readonly element: HTMLElement;
  onAction: (issueId: string, action: ReviewAction) => void = () => {};

  constructor(container: HTMLElement) {
    this.element = document.createElement("section");
    this.element.className = "detail-panel";
    this.element.setAttribute("aria-label", "Issue detail");
    container.appendChild(this.element);
    this.render(null);
  }

  render(issue: Issue | null): void {
    this.element.textContent = "";
    if (issue === null) {
      const hint = document.createElement("p");
      hint.className = "detail-empty";
      hint.textContent = "Select an issue on the plan or in the list.";
      this.element.appendChild(hint);
      return;
    }

    const heading = document.createElement("h2");
    heading.textContent = issue.rubric.name || issue.rubric_id;
    this.element.appendChild(heading);

    const badge = document.createElement("span");
    badge.className = `status-badge status-${issue.status}`;
    badge.textContent = STATUS_LABELS[issue.status];
    this.element.appendChild(badge);

    const message = document.createElement("p");
    message.className = "detail-message";
    message.textContent = issue.message;
    this.element.appendChild(message);

    const facts = document.createElement("dl");
    facts.className = "detail-facts";
    this.addFact(facts, "Category", CATEGORY_LABELS[issue.category]);
    if (issue.measured !== null) {
      this.addFact(facts, "Measured", formatMeasured(issue.measured));
    }
    if (issue.subject_ids.length > 0) {
      this.addFact(facts, "Objects", issue.subject_ids.map(humanizeId).join(", "));
    }
    this.element.appendChild(facts);

    if (issue.rubric.description) {
      const description = document.createElement("p");
      description.className = "detail-description";
      description.textContent = issue.rubric.description;
      this.element.appendChild(description);
    }

    if (issue.rubric.suggestions.length > 0) {
      const title = document.createElement("h3");
      title.textContent = "Possible fixes";
      this.element.appendChild(title);
      const items = document.createElement("ul");
      items.className = "detail-suggestions";
      for (const suggestion of issue.rubric.suggestions) {
        const li = document.createElement("li");
        li.textContent = suggestion;
        items.appendChild(li);
      }
      this.element.appendChild(items);
    }

    if (issue.rubric.sources.length > 0) {
      const title = document.createElement("h3");
      title.textContent = "Sources";
      this.element.appendChild(title);
      const items = document.createElement("ul");
      items.className = "detail-sources";
      for (const source of issue.rubric.sources) {
        const li = document.createElement("li");
        if (source.url) {
          const link = document.createElement("a");
          link.href = source.url;
          link.target = "_blank";
          link.rel = "noreferrer";
          link.textContent = source.label ?? source.url;
          li.appendChild(link);
        } else {
          li.textContent = source.label ?? "";
        }
        items.appendChild(li);
      }
      this.element.appendChild(items);
    }

    const actions = document.createElement("div");
    actions.className = "detail-actions";
    actions.appendChild(this.actionButton(issue, "confirm", "Confirm"));
    actions.appendChild(this.actionButton(issue, "dismiss", "Dismiss"));
    this.element.appendChild(actions);
  }

  private addFact(list: HTMLDListElement, term: string, value: string): void {
    const dt = document.createElement("dt");
    dt.textContent = term;
    const dd = document.createElement("dd");
    dd.textContent = value;
    list.appendChild(dt);
    list.appendChild(dd);
  }

  private actionButton(issue: Issue, action: ReviewAction, label: string): HTMLButtonElement {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = label;
    button.className = `action-${action}`;
    button.disabled = issue.status !== "active";
    button.addEventListener("click", () => this.onAction(issue.id, action));
    return button;
  }
}

/**
 * Small formatting helpers shared by the panel and the list.
 *
 * Rubric thresholds are written in inches, world geometry is in meters, and
 * reviewers think in centimeters — so measured values always show both
 * metric and imperial, one decimal each.
 */

import type { IssueCategory, IssueStatus, Measured } from "./api.js";

/** "65.0 cm / 25.6 in" */
export function formatMeasured(measured: Measured): string {
  return `${measured.cm.toFixed(1)} cm / ${measured.value.toFixed(1)} in`;
}

export const CATEGORY_LABELS: Record<IssueCategory, string> = {
  ObjectDimension: "Object dimension",
  ObjectPosition: "Object position",
  RiskyItem: "Risky item",
  LackOfAssistiveItem: "Missing assistive item",
};

export const STATUS_LABELS: Record<IssueStatus, string> = {
  active: "Active",
  confirmed: "Confirmed",
  dismissed: "Dismissed",
};

/** "door_handle_2" -> "door handle 2", for object ids shown to reviewers. */
export function humanizeId(id: string): string {
  return id.replace(/_/g, " ");
}

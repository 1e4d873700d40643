/**
 * Issue markers: one shape + color per category, restyled by review status.
 *
 * The four categories must be tellable apart at a glance on a busy plan, so
 * they differ in both shape and hue (color alone fails colorblind
 * reviewers).  Status changes the fill treatment, never the shape: a
 * dismissed risky item is still diamond-shaped, just hollow and faded.
 */

import type { IssueCategory, IssueStatus } from "./api.js";
import { CATEGORY_LABELS } from "./format.js";

export type MarkerShape = "square" | "triangle" | "diamond" | "circle";

export interface MarkerStyle {
  shape: MarkerShape;
  color: string;
}

export const MARKER_STYLES: Record<IssueCategory, MarkerStyle> = {
  ObjectDimension: { shape: "square", color: "#d97706" },
  ObjectPosition: { shape: "triangle", color: "#2563eb" },
  RiskyItem: { shape: "diamond", color: "#dc2626" },
  LackOfAssistiveItem: { shape: "circle", color: "#7c3aed" },
};

export interface LegendEntry {
  category: IssueCategory;
  label: string;
  style: MarkerStyle;
}

export function legendEntries(): LegendEntry[] {
  return (Object.keys(MARKER_STYLES) as IssueCategory[]).map((category) => ({
    category,
    label: CATEGORY_LABELS[category],
    style: MARKER_STYLES[category],
  }));
}

/** The subset of CanvasRenderingContext2D the marker painter touches. */
export interface MarkerContext {
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
}

function tracePath(ctx: MarkerContext, shape: MarkerShape, x: number, y: number, r: number): void {
  ctx.beginPath();
  switch (shape) {
    case "square":
      ctx.rect(x - r, y - r, 2 * r, 2 * r);
      break;
    case "triangle":
      ctx.moveTo(x, y - r);
      ctx.lineTo(x + r, y + r);
      ctx.lineTo(x - r, y + r);
      ctx.closePath();
      break;
    case "diamond":
      ctx.moveTo(x, y - r);
      ctx.lineTo(x + r, y);
      ctx.lineTo(x, y + r);
      ctx.lineTo(x - r, y);
      ctx.closePath();
      break;
    case "circle":
      ctx.arc(x, y, r, 0, 2 * Math.PI);
      break;
  }
}

export interface MarkerOptions {
  category: IssueCategory;
  status: IssueStatus;
  selected: boolean;
  x: number;
  y: number;
  radius?: number;
}

export function drawMarker(ctx: MarkerContext, options: MarkerOptions): void {
  const { category, status, selected, x, y } = options;
  const r = options.radius ?? 7;
  const style = MARKER_STYLES[category];

  ctx.globalAlpha = status === "dismissed" ? 0.45 : 1.0;

  tracePath(ctx, style.shape, x, y, r);
  if (status === "dismissed") {
    // hollow: decision made, issue judged not real
    ctx.strokeStyle = style.color;
    ctx.lineWidth = 2;
    ctx.stroke();
  } else {
    ctx.fillStyle = style.color;
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1;
    ctx.stroke();
  }

  if (status === "confirmed") {
    // double ring: decision made, issue judged real
    tracePath(ctx, style.shape, x, y, r + 3);
    ctx.strokeStyle = style.color;
    ctx.lineWidth = 1.5;
    ctx.stroke();
  }

  if (selected) {
    ctx.globalAlpha = 1.0;
    ctx.beginPath();
    ctx.arc(x, y, r + 6, 0, 2 * Math.PI);
    ctx.strokeStyle = "#0f172a";
    ctx.lineWidth = 2;
    ctx.stroke();
  }

  ctx.globalAlpha = 1.0;
}

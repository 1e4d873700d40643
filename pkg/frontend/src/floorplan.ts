/**
 * Top-down floor plan on a canvas.
 *
 * Conventions (matching the scan mini-map): walls are black segments, doors
 * are yellow sub-segments, openings are dashed, windows are light blue.
 * Objects appear as labeled outlines, issues as category markers at their
 * anchor point.  World coordinates are meters with y up; the canvas flips y
 * so plans read like an architect's drawing.
 *
 * The view supports wheel zoom around the cursor, drag panning, and a
 * fit-to-scene reset.  An empty scene draws a crosshair at the world origin
 * so the viewport is never just a blank rectangle.
 */

import type { Issue, IssueCategory, IssueStatus, Scene, Wall } from "./api.js";
import { drawMarker } from "./markers.js";

const WALL_COLOR = "#111111";
const DOOR_COLOR = "#eab308";
const WINDOW_COLOR = "#38bdf8";
const OBJECT_COLOR = "#64748b";
const MARKER_HIT_RADIUS = 14; // px
const FIT_PADDING = 30; // px

export interface RenderStats {
  markers: number;
  byCategory: Record<string, number>;
  byStatus: Record<string, number>;
}

interface PlacedMarker {
  id: string;
  x: number;
  y: number;
}

export class FloorPlan {
  readonly canvas: HTMLCanvasElement;
  onSelect: (issueId: string | null) => void = () => {};

  private ctx: CanvasRenderingContext2D;
  private width = 0;
  private height = 0;

  // px per meter, and the screen position of world (0, 0)
  private scale = 50;
  private originX = 0;
  private originY = 0;

  private scene: Scene | null = null;
  private issues: Issue[] = [];
  private selectedId: string | null = null;
  private placed: PlacedMarker[] = [];
  private lastStats: RenderStats = { markers: 0, byCategory: {}, byStatus: {} };

  private dragging = false;
  private dragMoved = false;
  private dragX = 0;
  private dragY = 0;

  constructor(container: HTMLElement) {
    this.canvas = document.createElement("canvas");
    this.canvas.className = "floorplan-canvas";
    this.canvas.setAttribute("role", "img");
    this.canvas.setAttribute("aria-label", "Floor plan with issue markers");
    container.appendChild(this.canvas);
    const ctx = this.canvas.getContext("2d");
    if (!ctx) {
      throw new Error("canvas 2d context unavailable");
    }
    this.ctx = ctx;

    this.canvas.addEventListener("pointerdown", this.onPointerDown);
    this.canvas.addEventListener("pointermove", this.onPointerMove);
    this.canvas.addEventListener("pointerup", this.onPointerUp);
    this.canvas.addEventListener("wheel", this.onWheel, { passive: false });

    if (typeof ResizeObserver !== "undefined") {
      new ResizeObserver(() => {
        const rect = container.getBoundingClientRect();
        if (rect.width > 0 && rect.height > 0) {
          this.resize(rect.width, rect.height);
        }
      }).observe(container);
    }
  }

  resize(width: number, height: number): void {
    this.width = Math.floor(width);
    this.height = Math.floor(height);
    this.canvas.width = this.width;
    this.canvas.height = this.height;
    this.fit();
  }

  setData(scene: Scene, issues: Issue[], selectedId: string | null): void {
    const sceneChanged = this.scene === null || this.scene.id !== scene.id;
    this.scene = scene;
    this.issues = issues;
    this.selectedId = selectedId;
    if (sceneChanged) {
      this.fit();
    } else {
      this.render();
    }
  }

  get stats(): RenderStats {
    return this.lastStats;
  }

  /** Reset the transform so the whole scene fits with a margin. */
  fit(): void {
    if (this.width === 0 || this.height === 0) {
      this.render(); // unsized canvas: keep data state current anyway
      return;
    }
    const bounds = this.sceneBounds();
    if (bounds === null) {
      // empty scene: park the origin mid-canvas at an indoor-ish scale
      this.scale = 50;
      this.originX = this.width / 2;
      this.originY = this.height / 2;
    } else {
      const [minX, minY, maxX, maxY] = bounds;
      const spanX = Math.max(maxX - minX, 0.5);
      const spanY = Math.max(maxY - minY, 0.5);
      this.scale = Math.min(
        (this.width - 2 * FIT_PADDING) / spanX,
        (this.height - 2 * FIT_PADDING) / spanY,
      );
      const cx = (minX + maxX) / 2;
      const cy = (minY + maxY) / 2;
      this.originX = this.width / 2 - cx * this.scale;
      this.originY = this.height / 2 + cy * this.scale;
    }
    this.render();
  }

  toScreen(x: number, y: number): [number, number] {
    return [this.originX + x * this.scale, this.originY - y * this.scale];
  }

  render(): void {
    const ctx = this.ctx;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.clearRect(0, 0, this.width, this.height);
    ctx.fillStyle = "#fafaf9";
    ctx.fillRect(0, 0, this.width, this.height);

    this.placed = [];
    const stats: RenderStats = { markers: 0, byCategory: {}, byStatus: {} };

    const scene = this.scene;
    if (scene === null || (scene.walls.length === 0 && scene.objects.length === 0)) {
      this.drawOriginCrosshair();
    }
    if (scene !== null) {
      for (const obj of scene.objects) {
        this.drawObject(obj.center, obj.half_extents, obj.yaw, obj.category);
      }
      for (const wall of scene.walls) {
        this.drawWall(wall);
      }
      for (const wall of scene.walls) {
        for (const element of scene.elements) {
          if (element.wall_id === wall.id) {
            this.drawWallElement(wall, element.kind, element.offset, element.width);
          }
        }
      }
    }

    for (const issue of this.issues) {
      const [x, y] = this.toScreen(issue.anchor[0] ?? 0, issue.anchor[1] ?? 0);
      drawMarker(ctx, {
        category: issue.category,
        status: issue.status,
        selected: issue.id === this.selectedId,
        x,
        y,
      });
      this.placed.push({ id: issue.id, x, y });
      stats.markers += 1;
      stats.byCategory[issue.category] = (stats.byCategory[issue.category] ?? 0) + 1;
      stats.byStatus[issue.status] = (stats.byStatus[issue.status] ?? 0) + 1;
    }

    this.lastStats = stats;
  }

  private sceneBounds(): [number, number, number, number] | null {
    const scene = this.scene;
    if (scene === null) {
      return null;
    }
    let minX = Infinity;
    let minY = Infinity;
    let maxX = -Infinity;
    let maxY = -Infinity;
    const take = (x: number, y: number) => {
      minX = Math.min(minX, x);
      minY = Math.min(minY, y);
      maxX = Math.max(maxX, x);
      maxY = Math.max(maxY, y);
    };
    for (const wall of scene.walls) {
      take(wall.start[0], wall.start[1]);
      take(wall.end[0], wall.end[1]);
    }
    for (const obj of scene.objects) {
      const r = Math.hypot(obj.half_extents[0] ?? 0, obj.half_extents[1] ?? 0);
      take((obj.center[0] ?? 0) - r, (obj.center[1] ?? 0) - r);
      take((obj.center[0] ?? 0) + r, (obj.center[1] ?? 0) + r);
    }
    return minX === Infinity ? null : [minX, minY, maxX, maxY];
  }

  private drawOriginCrosshair(): void {
    const ctx = this.ctx;
    const [x, y] = this.toScreen(0, 0);
    ctx.strokeStyle = "#94a3b8";
    ctx.lineWidth = 1;
    ctx.setLineDash([]);
    ctx.beginPath();
    ctx.moveTo(x - 12, y);
    ctx.lineTo(x + 12, y);
    ctx.moveTo(x, y - 12);
    ctx.lineTo(x, y + 12);
    ctx.stroke();
  }

  private drawWall(wall: Wall): void {
    const ctx = this.ctx;
    const [x0, y0] = this.toScreen(wall.start[0], wall.start[1]);
    const [x1, y1] = this.toScreen(wall.end[0], wall.end[1]);
    ctx.strokeStyle = WALL_COLOR;
    ctx.lineWidth = 3;
    ctx.setLineDash([]);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
  }

  private drawWallElement(
    wall: Wall,
    kind: "door" | "opening" | "window",
    offset: number,
    width: number,
  ): void {
    const ctx = this.ctx;
    const dx = wall.end[0] - wall.start[0];
    const dy = wall.end[1] - wall.start[1];
    const length = Math.hypot(dx, dy);
    if (length === 0) {
      return;
    }
    const ux = dx / length;
    const uy = dy / length;
    const [x0, y0] = this.toScreen(wall.start[0] + ux * offset, wall.start[1] + uy * offset);
    const [x1, y1] = this.toScreen(
      wall.start[0] + ux * (offset + width),
      wall.start[1] + uy * (offset + width),
    );

    if (kind === "opening") {
      // erase the wall in the gap, then mark it dashed
      ctx.strokeStyle = "#fafaf9";
      ctx.lineWidth = 5;
      ctx.setLineDash([]);
      ctx.beginPath();
      ctx.moveTo(x0, y0);
      ctx.lineTo(x1, y1);
      ctx.stroke();
      ctx.strokeStyle = WALL_COLOR;
      ctx.lineWidth = 1.5;
      ctx.setLineDash([4, 4]);
    } else {
      ctx.strokeStyle = kind === "door" ? DOOR_COLOR : WINDOW_COLOR;
      ctx.lineWidth = kind === "door" ? 5 : 3;
      ctx.setLineDash([]);
    }
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
    ctx.setLineDash([]);
  }

  private drawObject(
    center: number[],
    halfExtents: number[],
    yaw: number,
    label: string,
  ): void {
    const ctx = this.ctx;
    const [cx, cy] = this.toScreen(center[0] ?? 0, center[1] ?? 0);
    const hx = (halfExtents[0] ?? 0) * this.scale;
    const hy = (halfExtents[1] ?? 0) * this.scale;

    ctx.save();
    ctx.translate(cx, cy);
    ctx.rotate(-yaw); // screen y is flipped, so world CCW is screen CW
    ctx.strokeStyle = OBJECT_COLOR;
    ctx.lineWidth = 1;
    ctx.setLineDash([]);
    ctx.strokeRect(-hx, -hy, 2 * hx, 2 * hy);
    ctx.restore();

    ctx.fillStyle = OBJECT_COLOR;
    ctx.font = "10px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(label.replace(/_/g, " "), cx, cy + 3);
  }

  /** The issue whose marker sits within reach of a canvas-local point. */
  hitTest(x: number, y: number): string | null {
    let best: string | null = null;
    let bestDistance = MARKER_HIT_RADIUS;
    // later-drawn markers sit on top, so walk back to front
    for (let i = this.placed.length - 1; i >= 0; i -= 1) {
      const marker = this.placed[i]!;
      const distance = Math.hypot(marker.x - x, marker.y - y);
      if (distance < bestDistance) {
        best = marker.id;
        bestDistance = distance;
      }
    }
    return best;
  }

  private localPoint(event: PointerEvent | WheelEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  private onPointerDown = (event: PointerEvent): void => {
    this.dragging = true;
    this.dragMoved = false;
    [this.dragX, this.dragY] = this.localPoint(event);
    if (this.canvas.setPointerCapture && event.pointerId !== undefined) {
      try {
        this.canvas.setPointerCapture(event.pointerId);
      } catch {
        // jsdom has no pointer capture; panning still works
      }
    }
  };

  private onPointerMove = (event: PointerEvent): void => {
    if (!this.dragging) {
      return;
    }
    const [x, y] = this.localPoint(event);
    const movedX = x - this.dragX;
    const movedY = y - this.dragY;
    if (!this.dragMoved && Math.hypot(movedX, movedY) < 4) {
      return; // still a click, not a pan
    }
    this.dragMoved = true;
    this.originX += movedX;
    this.originY += movedY;
    this.dragX = x;
    this.dragY = y;
    this.render();
  };

  private onPointerUp = (event: PointerEvent): void => {
    if (!this.dragging) {
      return;
    }
    this.dragging = false;
    if (!this.dragMoved) {
      const [x, y] = this.localPoint(event);
      this.onSelect(this.hitTest(x, y));
    }
  };

  private onWheel = (event: WheelEvent): void => {
    event.preventDefault();
    const [x, y] = this.localPoint(event);
    const factor = Math.exp(-event.deltaY * 0.0015);
    const next = Math.min(Math.max(this.scale * factor, 5), 2000);
    // keep the world point under the cursor fixed while scaling
    this.originX = x - ((x - this.originX) / this.scale) * next;
    this.originY = y - ((y - this.originY) / this.scale) * next;
    this.scale = next;
    this.render();
  };
}

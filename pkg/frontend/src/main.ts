/**
 * Entry point: mount the app and size the plan to its pane.
 */

import { App } from "./app.js";

function boot(): void {
  const root = document.getElementById("app");
  if (root === null) {
    throw new Error("missing #app mount point");
  }
  const app = new App(root);

  const sizePlan = () => {
    const holder = root.querySelector<HTMLElement>(".plan-canvas-holder");
    if (holder !== null) {
      const rect = holder.getBoundingClientRect();
      app.floorplan.resize(Math.max(rect.width, 320), Math.max(rect.height, 320));
    }
  };
  window.addEventListener("resize", sizePlan);
  sizePlan();

  void app.load();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}

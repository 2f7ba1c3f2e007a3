import { MODES, MODE_COLORS, MODE_LABELS } from "./config.js";
import { parseInstructions, stepText } from "./instructions.js";
import type { CompareEntry, Mode } from "./types.js";
import { isModeError } from "./types.js";

export interface PanelCallbacks {
  onFocusMode(mode: Mode): void;
  onStepClick(mode: Mode, roadId: number): void;
}

/** Metrics table plus the instruction step list for the focused mode.
 *
 * Every number is rendered with String(...) straight from the response
 * JSON, so the panel text is exactly what the API returned.
 */
export class Panel {
  focused: Mode = "ft";
  private responses: Partial<Record<Mode, CompareEntry>> = {};

  constructor(
    private metricsEl: HTMLElement,
    private stepsEl: HTMLElement,
    private callbacks: PanelCallbacks,
  ) {}

  update(responses: Partial<Record<Mode, CompareEntry>>, selected: Set<Mode>): void {
    this.responses = responses;
    this.renderMetrics(selected);
    this.renderSteps();
  }

  focus(mode: Mode): void {
    this.focused = mode;
    this.renderSteps();
    this.callbacks.onFocusMode(mode);
  }

  private renderMetrics(selected: Set<Mode>): void {
    this.metricsEl.replaceChildren();
    const table = document.createElement("table");
    table.className = "metrics";
    const head = table.insertRow();
    for (const text of ["mode", "distance", "turns", "perceptual"]) {
      const th = document.createElement("th");
      th.textContent = text;
      head.appendChild(th);
    }
    for (const mode of MODES) {
      if (!selected.has(mode)) continue;
      const entry = this.responses[mode];
      const row = table.insertRow();
      row.dataset.mode = mode;
      if (mode === this.focused) row.classList.add("focused");
      const name = row.insertCell();
      name.textContent = MODE_LABELS[mode];
      name.style.color = MODE_COLORS[mode];
      row.addEventListener("click", () => this.focus(mode));
      if (!entry) {
        row.insertCell().textContent = "—";
        row.insertCell().textContent = "—";
        row.insertCell().textContent = "—";
      } else if (isModeError(entry)) {
        const cell = row.insertCell();
        cell.colSpan = 3;
        cell.className = "mode-error";
        cell.dataset.field = `${mode}-error`;
        cell.textContent = `${entry.error}: ${entry.detail}`;
      } else {
        const dist = row.insertCell();
        dist.dataset.field = `${mode}-distance`;
        dist.textContent = String(entry.distance);
        const turns = row.insertCell();
        turns.dataset.field = `${mode}-turns`;
        turns.textContent = String(entry.turns_topological);
        const perc = row.insertCell();
        perc.dataset.field = `${mode}-turns-perceptual`;
        perc.textContent = String(entry.turns_perceptual);
      }
    }
    this.metricsEl.appendChild(table);
  }

  private renderSteps(): void {
    this.stepsEl.replaceChildren();
    const entry = this.responses[this.focused];
    const title = document.createElement("h3");
    title.textContent = `Directions — ${MODE_LABELS[this.focused]}`;
    this.stepsEl.appendChild(title);
    if (!entry || isModeError(entry)) {
      const p = document.createElement("p");
      p.className = "steps-empty";
      p.textContent = entry && isModeError(entry) ? entry.detail : "no route yet";
      this.stepsEl.appendChild(p);
      return;
    }
    const list = document.createElement("ol");
    list.className = "steps";
    const mode = this.focused;
    for (const [index, step] of parseInstructions(entry.instructions).entries()) {
      const li = document.createElement("li");
      li.textContent = stepText(step, index);
      li.dataset.roadId = String(step.roadId);
      li.addEventListener("click", () => this.callbacks.onStepClick(mode, step.roadId));
      list.appendChild(li);
    }
    this.stepsEl.appendChild(list);
  }
}

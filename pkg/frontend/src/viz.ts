/** Visualization pane model: a colored grid with labels.
 *
 * The pane opens itself on the first viz event. Clicks inside the
 * grid become click messages; clicks with no grid, or outside it, are
 * swallowed (the server would only warn anyway). renderVersion bumps
 * on every applied command batch so views know to repaint.
 */

import { ClientMessage, VizCommand } from "./protocol.js";

export interface VizLabel {
  x: number;
  y: number;
  text: string;
}

export class VizPane {
  open = false;
  width = 0;
  height = 0;
  cells = new Map<string, string>();
  labels: VizLabel[] = [];
  renderVersion = 0;
  private warn: (message: string) => void;

  constructor(warn: (message: string) => void = (m) => console.warn(m)) {
    this.warn = warn;
  }

  get hasGrid(): boolean {
    return this.width > 0 && this.height > 0;
  }

  colorAt(x: number, y: number): string {
    return this.cells.get(`${x},${y}`) ?? "";
  }

  feed(commands: VizCommand[]): void {
    this.open = true;
    for (const command of commands) {
      if (command.op === "grid") {
        this.width = command.width;
        this.height = command.height;
        this.cells.clear();
        this.labels = [];
      } else if (!this.hasGrid) {
        this.warn(`viz ${command.op} before any grid; ignored`);
        continue;
      } else if (command.op === "cell") {
        this.cells.set(`${command.x},${command.y}`, command.color);
      } else {
        this.labels.push({ x: command.x, y: command.y, text: command.text });
      }
    }
    this.renderVersion++;
  }

  clickAt(x: number, y: number): ClientMessage | null {
    if (!this.hasGrid) return null;
    if (x < 0 || x >= this.width || y < 0 || y >= this.height) return null;
    return { type: "click", x, y };
  }

  reset(): void {
    this.open = false;
    this.width = 0;
    this.height = 0;
    this.cells.clear();
    this.labels = [];
    this.renderVersion++;
  }
}

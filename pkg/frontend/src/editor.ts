/** Editor state: document text, symbol-display toggle, and the
 * diagnostics overlay.
 *
 * Squiggles are computed in display coordinates: when the symbol
 * toggle is on, server ranges (which always refer to the ASCII
 * source) are mapped through the position map of the display
 * transform. The text sent anywhere is always the ASCII source.
 * Out-of-range diagnostics are clamped to the document and logged.
 */

import { Diagnostic } from "./protocol.js";
import { PositionMap, replaceSymbols } from "./symbols.js";

export interface Squiggle {
  line: number; // 1-based display line
  colStart: number; // 1-based, inclusive
  colEnd: number; // exclusive; colEnd >= colStart + 1 after clamping
  severity: string;
  tooltip: string;
}

export interface EditorView {
  displayText: string;
  squiggles: Squiggle[];
}

function lineStarts(text: string): number[] {
  const starts = [0];
  for (let i = 0; i < text.length; i++) {
    if (text[i] === "\n") starts.push(i + 1);
  }
  return starts;
}

function lineLength(text: string, starts: number[], line: number): number {
  const begin = starts[line - 1];
  const end = line < starts.length ? starts[line] - 1 : text.length;
  return end - begin;
}

export function tooltipFor(diag: Diagnostic): string {
  if (diag.instantiations && diag.instantiations.length > 0) {
    return `${diag.message}\n${diag.instantiations.join("\n")}`;
  }
  return diag.message;
}

export class EditorState {
  text = "";
  fileName = "main.kb";
  displaySymbols = false;
  diagnostics: Diagnostic[] = [];
  private warn: (message: string) => void;

  constructor(warn: (message: string) => void = (m) => console.warn(m)) {
    this.warn = warn;
  }

  setText(text: string): void {
    this.text = text;
    this.diagnostics = [];
  }

  /** The text for the wire: always the ASCII source, toggle or not. */
  wireText(): string {
    return this.text;
  }

  setDiagnostics(diagnostics: Diagnostic[]): void {
    this.diagnostics = diagnostics;
  }

  view(): EditorView {
    let display = this.text;
    let map: PositionMap | null = null;
    if (this.displaySymbols) {
      const replaced = replaceSymbols(this.text);
      display = replaced.display;
      map = replaced.map;
    }
    const sourceStarts = lineStarts(this.text);
    const displayStarts = lineStarts(display);

    const squiggles: Squiggle[] = [];
    for (const diag of this.diagnostics) {
      if (diag.file !== this.fileName) continue;
      squiggles.push(this.squiggleFor(diag, display, sourceStarts, displayStarts, map));
    }
    return { displayText: display, squiggles };
  }

  private squiggleFor(
    diag: Diagnostic,
    display: string,
    sourceStarts: number[],
    displayStarts: number[],
    map: PositionMap | null,
  ): Squiggle {
    const lineCount = sourceStarts.length;
    let { line, col, end_line: endLine, end_col: endCol } = diag;
    if (
      line < 1 ||
      line > lineCount ||
      col < 1 ||
      col > lineLength(this.text, sourceStarts, Math.min(Math.max(line, 1), lineCount)) + 1
    ) {
      this.warn(`diagnostic out of range, clamped: ${diag.message} @ ${line}:${col}`);
      line = Math.min(Math.max(line, 1), lineCount);
      const len = lineLength(this.text, sourceStarts, line);
      col = Math.min(Math.max(col, 1), len + 1);
      endLine = line;
      endCol = len + 1;
    }
    if (endLine < line || (endLine === line && endCol < col)) {
      endLine = line;
      endCol = col;
    }
    // multi-line ranges squiggle their first line
    let srcStart = sourceStarts[line - 1] + (col - 1);
    let srcEnd =
      endLine === line
        ? sourceStarts[line - 1] + (endCol - 1)
        : sourceStarts[line - 1] + lineLength(this.text, sourceStarts, line);
    if (map) {
      srcStart = map.toDisplay(srcStart);
      srcEnd = map.toDisplay(srcEnd);
    }
    // convert display offsets back to display line/col
    let dispLine = 1;
    for (let i = 1; i < displayStarts.length; i++) {
      if (displayStarts[i] <= srcStart) dispLine = i + 1;
      else break;
    }
    const base = displayStarts[dispLine - 1];
    const colStart = srcStart - base + 1;
    let colEnd = Math.max(srcEnd - base + 1, colStart + 1);
    const dispLen = lineLength(display, displayStarts, dispLine);
    colEnd = Math.min(colEnd, dispLen + 2);
    return {
      line: dispLine,
      colStart,
      colEnd,
      severity: diag.severity,
      tooltip: tooltipFor(diag),
    };
  }
}

/** Terminal view-model: renders the event stream of a run and turns
 * user input into stdin messages.
 *
 * Ask events show an inline prompt; limit events render a banner; the
 * exit event disables input. Stdout/stderr arrive as chunks and are
 * split into lines here.
 */

import { ClientMessage, ServerEvent } from "./protocol.js";

export interface TerminalLine {
  kind: "stdout" | "stderr" | "input" | "system";
  text: string;
}

export class TerminalModel {
  lines: TerminalLine[] = [];
  prompt: string | null = null;
  banner: string | null = null;
  exitCode: number | null = null;
  private partialOut = "";
  private partialErr = "";

  get inputEnabled(): boolean {
    return this.exitCode === null;
  }

  get finished(): boolean {
    return this.exitCode !== null;
  }

  feed(event: ServerEvent): void {
    switch (event.type) {
      case "stdout":
        this.partialOut = this.pushChunks("stdout", this.partialOut + event.data);
        break;
      case "stderr":
        this.partialErr = this.pushChunks("stderr", this.partialErr + event.data);
        break;
      case "ask":
        this.prompt = event.prompt;
        break;
      case "limit":
        this.banner = `run stopped: ${event.kind} limit`;
        break;
      case "exit":
        this.flushPartial();
        this.exitCode = event.code;
        this.prompt = null;
        this.lines.push({ kind: "system", text: `exited with code ${event.code}` });
        break;
      case "viz":
        break; // the viz pane owns those
    }
  }

  /** User pressed enter: echo locally and build the stdin message. */
  submitInput(text: string): ClientMessage | null {
    if (!this.inputEnabled) return null;
    const shownPrompt = this.prompt ?? "";
    this.lines.push({ kind: "input", text: `${shownPrompt}${text}` });
    this.prompt = null;
    return { type: "stdin", data: text };
  }

  private pushChunks(kind: "stdout" | "stderr", buffered: string): string {
    const parts = buffered.split("\n");
    const rest = parts.pop() ?? "";
    for (const part of parts) {
      this.lines.push({ kind, text: part });
    }
    return rest;
  }

  private flushPartial(): void {
    if (this.partialOut) {
      this.lines.push({ kind: "stdout", text: this.partialOut });
      this.partialOut = "";
    }
    if (this.partialErr) {
      this.lines.push({ kind: "stderr", text: this.partialErr });
      this.partialErr = "";
    }
  }
}

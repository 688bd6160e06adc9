/** Session controller: one WebSocket per run, events dispatched to the
 * terminal and viz models.
 *
 * The socket is injected behind a minimal interface so tests can
 * replay recorded transcripts without a network.
 */

import { ClientMessage, FileEntry, RunMode, ServerEvent } from "./protocol.js";
import { TerminalModel } from "./terminal.js";
import { VizPane } from "./viz.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
}

export class SessionController {
  readonly terminal: TerminalModel;
  readonly viz: VizPane;
  readonly sent: ClientMessage[] = [];
  private socket: SocketLike | null = null;
  private started = false;

  constructor(terminal?: TerminalModel, viz?: VizPane) {
    this.terminal = terminal ?? new TerminalModel();
    this.viz = viz ?? new VizPane();
  }

  get running(): boolean {
    return this.started && !this.terminal.finished;
  }

  attach(socket: SocketLike): void {
    this.socket = socket;
  }

  start(mode: RunMode, files: FileEntry[], entry?: string): void {
    const message: ClientMessage = { type: "start", mode, files };
    if (entry !== undefined) message.entry = entry;
    this.started = true;
    this.send(message);
  }

  sendInput(text: string): void {
    const message = this.terminal.submitInput(text);
    if (message) this.send(message);
  }

  clickCell(x: number, y: number): void {
    const message = this.viz.clickAt(x, y);
    if (message) this.send(message);
  }

  kill(): void {
    if (this.running) this.send({ type: "kill" });
  }

  /** Raw text from the socket. */
  handleMessage(raw: string): ServerEvent | null {
    let event: ServerEvent;
    try {
      event = JSON.parse(raw) as ServerEvent;
    } catch {
      console.warn(`unparseable server message: ${raw}`);
      return null;
    }
    if (event.type === "viz") {
      this.viz.feed(event.commands);
    } else {
      this.terminal.feed(event);
    }
    if (event.type === "exit") {
      this.socket?.close();
      this.socket = null;
    }
    return event;
  }

  handleClose(): void {
    if (!this.terminal.finished) {
      this.terminal.feed({ type: "exit", code: 2 });
      this.terminal.banner = "connection lost";
    }
    this.socket = null;
  }

  private send(message: ClientMessage): void {
    this.sent.push(message);
    this.socket?.send(JSON.stringify(message));
  }
}

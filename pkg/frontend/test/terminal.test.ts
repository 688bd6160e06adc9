import { describe, expect, it } from "vitest";

import { TerminalModel } from "../src/terminal.js";

describe("terminal model", () => {
  it("splits chunked stdout into lines", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "stdout", data: "a" });
    terminal.feed({ type: "stdout", data: "b\nc\n" });
    expect(terminal.lines.map((l) => l.text)).toEqual(["ab", "c"]);
  });

  it("flushes a partial line at exit", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "stdout", data: "no newline" });
    terminal.feed({ type: "exit", code: 0 });
    expect(terminal.lines.map((l) => l.text)).toEqual([
      "no newline",
      "exited with code 0",
    ]);
  });

  it("ask sets the prompt and input resolves it", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "ask", prompt: "name?" });
    expect(terminal.prompt).toBe("name?");
    const message = terminal.submitInput("bob");
    expect(message).toEqual({ type: "stdin", data: "bob" });
    expect(terminal.prompt).toBeNull();
    expect(terminal.lines[0]).toEqual({ kind: "input", text: "name?bob" });
  });

  it("limit events render a distinct banner", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "limit", kind: "wall" });
    expect(terminal.banner).toBe("run stopped: wall limit");
  });

  it("exit disables input", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "exit", code: 2 });
    expect(terminal.inputEnabled).toBe(false);
    expect(terminal.submitInput("late")).toBeNull();
  });

  it("stderr lines carry their own kind", () => {
    const terminal = new TerminalModel();
    terminal.feed({ type: "stderr", data: "bad\n" });
    expect(terminal.lines[0]).toEqual({ kind: "stderr", text: "bad" });
  });
});

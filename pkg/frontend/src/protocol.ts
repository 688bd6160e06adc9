/** Wire types of the server's REST + WebSocket contract. */

export interface FileEntry {
  name: string;
  content: string;
}

export type Severity = "error" | "warning" | "core";

export interface Diagnostic {
  severity: Severity;
  file: string;
  line: number; // 1-based, inclusive start
  col: number;
  end_line: number; // exclusive end
  end_col: number;
  message: string;
  instantiations?: string[];
}

export type VizCommand =
  | { op: "grid"; width: number; height: number }
  | { op: "cell"; x: number; y: number; color: string }
  | { op: "label"; x: number; y: number; text: string };

export type ServerEvent =
  | { type: "stdout"; data: string }
  | { type: "stderr"; data: string }
  | { type: "ask"; prompt: string }
  | { type: "viz"; commands: VizCommand[] }
  | { type: "limit"; kind: string }
  | { type: "exit"; code: number };

export type RunMode = "main" | "shell";

export type ClientMessage =
  | { type: "start"; mode: RunMode; files: FileEntry[]; entry?: string }
  | { type: "stdin"; data: string }
  | { type: "click"; x: number; y: number }
  | { type: "kill" };

export interface CheckResponse {
  diagnostics: Diagnostic[];
}

export interface InferenceResponse {
  satisfiable?: boolean;
  structure?: string;
  models?: string[];
  count?: number;
  diagnostics?: Diagnostic[];
}

export interface TutorialIndexEntry {
  id: string;
  title: string;
}

export interface TutorialBundle {
  id: string;
  title: string;
  explanation: string;
  files: Record<string, string>;
}

export interface ShareCreated {
  id: string;
  url: string;
}

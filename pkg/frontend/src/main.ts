/** Browser bootstrap: wires the view-models to the page.
 *
 * Layout: a file strip and tutorial pane on the left, the editor in
 * the middle with run controls above it, and the terminal plus
 * visualization pane on the right.
 */

import { ApiClient, ApiError, shareIdFromFragment } from "./api.js";
import { EditorState, Squiggle } from "./editor.js";
import { highlightHtml } from "./highlight.js";
import { Diagnostic, FileEntry, RunMode } from "./protocol.js";
import { SessionController } from "./session.js";
import { TutorialPane } from "./tutorial.js";

const api = new ApiClient("");
const editor = new EditorState();
const tutorials = new TutorialPane();
let session: SessionController | null = null;
let checkTimer: number | undefined;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const textarea = el<HTMLTextAreaElement>("editor-input");
const highlightLayer = el<HTMLElement>("editor-highlight");
const squiggleLayer = el<HTMLElement>("editor-squiggles");
const fileList = el<HTMLElement>("file-list");
const fileLabel = el<HTMLElement>("current-file");
const terminalNode = el<HTMLElement>("terminal");
const promptRow = el<HTMLElement>("prompt-row");
const promptLabel = el<HTMLElement>("prompt-label");
const promptInput = el<HTMLInputElement>("prompt-input");
const vizNode = el<HTMLElement>("viz");
const vizGrid = el<HTMLElement>("viz-grid");
const tutorialNode = el<HTMLElement>("tutorial");
const tutorialBody = el<HTMLElement>("tutorial-body");
const tutorialSelect = el<HTMLSelectElement>("tutorial-select");
const statusNode = el<HTMLElement>("status");
const modeSelect = el<HTMLSelectElement>("run-mode");

function setStatus(text: string): void {
  statusNode.textContent = text;
}

// -- editor rendering -------------------------------------------------

function renderEditor(): void {
  const view = editor.view();
  highlightLayer.innerHTML = highlightHtml(view.displayText);
  renderSquiggles(view.displayText, view.squiggles);
}

function renderSquiggles(display: string, squiggles: Squiggle[]): void {
  const lines = display.split("\n");
  squiggleLayer.textContent = "";
  for (const squiggle of squiggles) {
    const row = document.createElement("div");
    row.className = "squiggle-row";
    const lineText = lines[squiggle.line - 1] ?? "";
    const pad = document.createElement("span");
    pad.className = "squiggle-pad";
    pad.textContent = lineText.slice(0, squiggle.colStart - 1);
    const mark = document.createElement("span");
    mark.className = `squiggle squiggle-${squiggle.severity}`;
    const width = Math.max(squiggle.colEnd - squiggle.colStart, 1);
    mark.textContent = lineText.slice(squiggle.colStart - 1, squiggle.colStart - 1 + width) || " ";
    mark.title = squiggle.tooltip;
    row.style.top = `${(squiggle.line - 1) * 1.4}em`;
    row.append(pad, mark);
    squiggleLayer.append(row);
  }
}

function scheduleCheck(): void {
  window.clearTimeout(checkTimer);
  checkTimer = window.setTimeout(runCheck, 400);
}

async function runCheck(): Promise<void> {
  try {
    const response = await api.check([{ name: editor.fileName, content: editor.wireText() }]);
    editor.setDiagnostics(response.diagnostics);
    renderEditor();
    const errors = response.diagnostics.filter((d: Diagnostic) => d.severity === "error");
    setStatus(errors.length ? `${errors.length} error(s)` : "ok");
  } catch (error) {
    setStatus(`check failed: ${error}`);
  }
}

textarea.addEventListener("input", () => {
  editor.setText(textarea.value);
  renderEditor();
  scheduleCheck();
});
textarea.addEventListener("scroll", () => {
  highlightLayer.scrollTop = textarea.scrollTop;
  highlightLayer.scrollLeft = textarea.scrollLeft;
  squiggleLayer.scrollTop = textarea.scrollTop;
  squiggleLayer.scrollLeft = textarea.scrollLeft;
});

el<HTMLInputElement>("toggle-symbols").addEventListener("change", (event) => {
  editor.displaySymbols = (event.target as HTMLInputElement).checked;
  textarea.classList.toggle("transparent-text", editor.displaySymbols);
  renderEditor();
});

// -- files ------------------------------------------------------------

async function openFile(name: string): Promise<void> {
  const doc = await api.readFile(name);
  editor.fileName = name;
  editor.setText(doc.content);
  textarea.value = doc.content;
  fileLabel.textContent = name;
  renderEditor();
  scheduleCheck();
}

async function refreshFiles(): Promise<void> {
  try {
    const listing = await api.listFiles();
    fileList.textContent = "";
    for (const name of listing.files) {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.href = "#";
      link.textContent = name;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        void openFile(name);
      });
      item.append(link);
      fileList.append(item);
    }
  } catch (error) {
    setStatus(`cannot list files: ${error}`);
  }
}

el<HTMLButtonElement>("save-btn").addEventListener("click", async () => {
  try {
    await api.writeFile(editor.fileName, editor.wireText());
    setStatus(`saved ${editor.fileName}`);
    void refreshFiles();
  } catch (error) {
    if (error instanceof ApiError && error.status === 403) {
      setStatus("read-only workspace (online mode); use Share instead");
    } else {
      setStatus(`save failed: ${error}`);
    }
  }
});

el<HTMLButtonElement>("share-btn").addEventListener("click", async () => {
  try {
    const created = await api.share([{ name: editor.fileName, content: editor.wireText() }]);
    window.history.replaceState(null, "", `#share=${created.id}`);
    await navigator.clipboard?.writeText(created.url).catch(() => undefined);
    setStatus(`share link: ${created.url}`);
  } catch (error) {
    setStatus(`share failed: ${error}`);
  }
});

// -- terminal + run controls ---------------------------------------------

function renderTerminal(): void {
  if (!session) return;
  const terminal = session.terminal;
  terminalNode.textContent = "";
  for (const line of terminal.lines) {
    const row = document.createElement("div");
    row.className = `term-${line.kind}`;
    row.textContent = line.text;
    terminalNode.append(row);
  }
  if (terminal.banner) {
    const row = document.createElement("div");
    row.className = "term-banner";
    row.textContent = terminal.banner;
    terminalNode.append(row);
  }
  terminalNode.scrollTop = terminalNode.scrollHeight;
  const waiting = terminal.prompt !== null || (session.running && modeSelect.value === "shell");
  promptRow.classList.toggle("hidden", !terminal.inputEnabled);
  promptLabel.textContent = terminal.prompt ?? "";
  if (waiting) promptInput.focus();
}

function renderViz(): void {
  if (!session) return;
  const viz = session.viz;
  vizNode.classList.toggle("hidden", !viz.open);
  if (!viz.open) return;
  vizGrid.textContent = "";
  vizGrid.style.gridTemplateColumns = `repeat(${viz.width}, 2em)`;
  for (let y = 0; y < viz.height; y++) {
    for (let x = 0; x < viz.width; x++) {
      const cell = document.createElement("div");
      cell.className = "viz-cell";
      const color = viz.colorAt(x, y);
      if (color) cell.style.background = color === "on" ? "#ffd54d" : color;
      cell.addEventListener("click", () => session?.clickCell(x, y));
      vizGrid.append(cell);
    }
  }
  const labels = viz.labels.map((label) => label.text).join(" · ");
  el<HTMLElement>("viz-labels").textContent = labels;
}

function startRun(): void {
  session?.kill();
  const controller = new SessionController();
  session = controller;
  controller.viz.reset();
  const protocol = window.location.protocol === "https:" ? "wss:" : "ws:";
  const socket = new WebSocket(`${protocol}//${window.location.host}/ws/session`);
  controller.attach({
    send: (data) => socket.send(data),
    close: () => socket.close(),
  });
  socket.addEventListener("open", () => {
    const files: FileEntry[] = [{ name: editor.fileName, content: editor.wireText() }];
    controller.start(modeSelect.value as RunMode, files);
    renderTerminal();
  });
  socket.addEventListener("message", (event) => {
    controller.handleMessage(String(event.data));
    renderTerminal();
    renderViz();
  });
  socket.addEventListener("close", () => {
    controller.handleClose();
    renderTerminal();
  });
  terminalNode.textContent = "";
  setStatus(modeSelect.value === "shell" ? "interactive session" : "running main()");
}

el<HTMLButtonElement>("run-btn").addEventListener("click", startRun);
el<HTMLButtonElement>("kill-btn").addEventListener("click", () => session?.kill());
promptInput.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && session) {
    session.sendInput(promptInput.value);
    promptInput.value = "";
    renderTerminal();
  }
});

// -- tutorials --------------------------------------------------------------

async function loadTutorials(): Promise<void> {
  try {
    const index = await api.tutorials();
    tutorials.setIndex(index.tutorials);
    tutorialNode.classList.toggle("hidden", !tutorials.visible);
    tutorialSelect.textContent = "";
    for (const entry of tutorials.entries) {
      const option = document.createElement("option");
      option.value = entry.id;
      option.textContent = entry.title;
      tutorialSelect.append(option);
    }
    if (tutorials.entries.length) await showTutorial(tutorials.entries[0].id);
  } catch {
    tutorialNode.classList.add("hidden");
  }
}

async function showTutorial(id: string): Promise<void> {
  const bundle = await api.tutorial(id);
  tutorials.show(bundle);
  tutorialBody.innerHTML = tutorials.explanationHtml();
}

tutorialSelect.addEventListener("change", () => void showTutorial(tutorialSelect.value));
el<HTMLButtonElement>("tutorial-load").addEventListener("click", () => {
  const files = tutorials.exampleFiles();
  if (!files.length) return;
  editor.fileName = files[0].name;
  editor.setText(files[0].content);
  textarea.value = files[0].content;
  fileLabel.textContent = files[0].name;
  renderEditor();
  scheduleCheck();
});

// -- boot ---------------------------------------------------------------------

async function boot(): Promise<void> {
  const shareId = shareIdFromFragment(window.location.hash);
  if (shareId) {
    try {
      const shared = await api.fetchShare(shareId);
      if (shared.files.length) {
        editor.fileName = shared.files[0].name;
        editor.setText(shared.files[0].content);
        textarea.value = shared.files[0].content;
        fileLabel.textContent = `${shared.files[0].name} (shared)`;
        renderEditor();
        scheduleCheck();
      }
    } catch (error) {
      setStatus(`cannot load share: ${error}`);
    }
  }
  await refreshFiles();
  await loadTutorials();
  if (!shareId) {
    const first = fileList.querySelector("a");
    if (first) (first as HTMLAnchorElement).click();
  }
}

void boot();

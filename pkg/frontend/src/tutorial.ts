/** Tutorial pane: an explanation rendered beside the editor, with a
 * button that loads the example files into the workspace.
 *
 * The pane hides itself when the server has no tutorials. Markdown
 * support is deliberately small: headings, fenced code blocks, inline
 * code, bold, and bullet lists; everything is HTML-escaped first.
 */

import { TutorialBundle, TutorialIndexEntry } from "./protocol.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function inline(text: string): string {
  return text
    .replace(/`([^`]+)`/g, "<code>$1</code>")
    .replace(/\*\*([^*]+)\*\*/g, "<strong>$1</strong>")
    .replace(/\*([^*]+)\*/g, "<em>$1</em>");
}

export function renderMarkdown(source: string): string {
  const out: string[] = [];
  const lines = source.split("\n");
  let paragraph: string[] = [];
  let listItems: string[] = [];
  let codeLines: string[] | null = null;

  const flushParagraph = () => {
    if (paragraph.length) {
      out.push(`<p>${inline(paragraph.join(" "))}</p>`);
      paragraph = [];
    }
  };
  const flushList = () => {
    if (listItems.length) {
      out.push(`<ul>${listItems.map((item) => `<li>${inline(item)}</li>`).join("")}</ul>`);
      listItems = [];
    }
  };

  for (const raw of lines) {
    const line = escapeHtml(raw);
    if (codeLines !== null) {
      if (raw.trim().startsWith("```")) {
        out.push(`<pre><code>${codeLines.join("\n")}</code></pre>`);
        codeLines = null;
      } else {
        codeLines.push(line);
      }
      continue;
    }
    if (raw.trim().startsWith("```")) {
      flushParagraph();
      flushList();
      codeLines = [];
      continue;
    }
    const heading = /^(#{1,4})\s+(.*)$/.exec(raw);
    if (heading) {
      flushParagraph();
      flushList();
      const level = heading[1].length;
      out.push(`<h${level}>${inline(escapeHtml(heading[2]))}</h${level}>`);
      continue;
    }
    const bullet = /^\s*-\s+(.*)$/.exec(raw);
    if (bullet) {
      flushParagraph();
      listItems.push(escapeHtml(bullet[1]));
      continue;
    }
    if (raw.trim() === "") {
      flushParagraph();
      flushList();
      continue;
    }
    paragraph.push(line);
  }
  if (codeLines !== null) out.push(`<pre><code>${codeLines.join("\n")}</code></pre>`);
  flushParagraph();
  flushList();
  return out.join("\n");
}

export class TutorialPane {
  entries: TutorialIndexEntry[] = [];
  current: TutorialBundle | null = null;

  get visible(): boolean {
    return this.entries.length > 0;
  }

  setIndex(entries: TutorialIndexEntry[]): void {
    this.entries = entries;
    if (!this.visible) this.current = null;
  }

  show(bundle: TutorialBundle): void {
    this.current = bundle;
  }

  explanationHtml(): string {
    return this.current ? renderMarkdown(this.current.explanation) : "";
  }

  /** Files the "load example" button places into the editor. */
  exampleFiles(): Array<{ name: string; content: string }> {
    if (!this.current) return [];
    return Object.entries(this.current.files).map(([name, content]) => ({ name, content }));
  }
}

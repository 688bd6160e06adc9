/** Token classification to HTML for the editor overlay. */

import { escapeHtml } from "./tutorial.js";
import { tokenize } from "./tokenize.js";

/** HTML for the highlight layer; one span per non-whitespace token. */
export function highlightHtml(text: string): string {
  const out: string[] = [];
  for (const token of tokenize(text)) {
    if (token.kind === "whitespace") {
      out.push(escapeHtml(token.lexeme));
    } else {
      out.push(`<span class="tok-${token.kind}">${escapeHtml(token.lexeme)}</span>`);
    }
  }
  return out.join("");
}

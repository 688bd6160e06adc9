/** Display-only replacement of ASCII connectives by math symbols.
 *
 * The transform applies inside logical tokens only, so comments,
 * strings, and identifiers are never rewritten. What is stored, sent
 * to the server, and shared is always the ASCII source; the position
 * map converts between display offsets and source offsets exactly.
 */

import { tokenize } from "./tokenize.js";

export const SYMBOL_MAP: ReadonlyArray<readonly [string, string]> = [
  ["<=>", "⇔"],
  ["=>", "⇒"],
  ["!", "∀"],
  ["?", "∃"],
  ["&", "∧"],
  ["|", "∨"],
  ["~", "¬"],
];

const ASCII_TO_DISPLAY = new Map(SYMBOL_MAP);

interface Segment {
  srcStart: number;
  srcEnd: number;
  dispStart: number;
  dispEnd: number;
  sourceText: string;
}

export class PositionMap {
  constructor(
    private readonly segments: Segment[],
    private readonly srcLen: number,
    private readonly dispLen: number,
  ) {}

  toSource(dispOffset: number): number {
    const d = Math.max(0, Math.min(dispOffset, this.dispLen));
    let last: Segment | null = null;
    for (const seg of this.segments) {
      if (seg.dispStart <= d) last = seg;
      else break;
    }
    if (!last) return d;
    if (d < last.dispEnd) return last.srcStart;
    return d + (last.srcEnd - last.dispEnd);
  }

  toDisplay(srcOffset: number): number {
    const s = Math.max(0, Math.min(srcOffset, this.srcLen));
    let last: Segment | null = null;
    for (const seg of this.segments) {
      if (seg.srcStart <= s) last = seg;
      else break;
    }
    if (!last) return s;
    if (s < last.srcEnd) return last.dispStart;
    return s + (last.dispEnd - last.srcEnd);
  }

  restore(displayText: string): string {
    const out: string[] = [];
    let pos = 0;
    for (const seg of this.segments) {
      out.push(displayText.slice(pos, seg.dispStart));
      out.push(seg.sourceText);
      pos = seg.dispEnd;
    }
    out.push(displayText.slice(pos));
    return out.join("");
  }
}

export function replaceSymbols(text: string): { display: string; map: PositionMap } {
  const out: string[] = [];
  const segments: Segment[] = [];
  let dispOff = 0;
  for (const token of tokenize(text)) {
    const replacement =
      token.kind === "logical" ? ASCII_TO_DISPLAY.get(token.lexeme) : undefined;
    if (replacement !== undefined) {
      segments.push({
        srcStart: token.start,
        srcEnd: token.start + token.lexeme.length,
        dispStart: dispOff,
        dispEnd: dispOff + replacement.length,
        sourceText: token.lexeme,
      });
      out.push(replacement);
      dispOff += replacement.length;
    } else {
      out.push(token.lexeme);
      dispOff += token.lexeme.length;
    }
  }
  return { display: out.join(""), map: new PositionMap(segments, text.length, dispOff) };
}

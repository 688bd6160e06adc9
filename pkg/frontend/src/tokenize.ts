/** Lossless scanner for the knowledge-base language.
 *
 * Mirrors the server's lexer: concatenating the lexemes reproduces the
 * input, and unknown characters come back as error tokens. Used for
 * highlighting and for the logical-symbol display transform, which
 * must never touch comments, strings, or identifiers.
 */

export type TokenKind =
  | "keyword"
  | "identifier"
  | "logical"
  | "punct"
  | "number"
  | "string"
  | "comment"
  | "whitespace"
  | "error";

export interface Token {
  kind: TokenKind;
  lexeme: string;
  start: number; // absolute offset in code units of the scanned text
}

const KEYWORDS = new Set([
  "vocabulary",
  "theory",
  "structure",
  "procedure",
  "type",
  "if",
  "else",
  "while",
  "true",
  "false",
  "exit",
]);

// Longest match first, as in the server lexer. The math forms are
// display-only (the wire stays ASCII) but highlight as logical too.
const FIXED: Array<[string, TokenKind]> = [
  ["⇔", "logical"],
  ["⇒", "logical"],
  ["∀", "logical"],
  ["∃", "logical"],
  ["∧", "logical"],
  ["∨", "logical"],
  ["¬", "logical"],
  ["<=>", "logical"],
  [":=", "punct"],
  ["==", "punct"],
  ["!=", "punct"],
  ["=>", "logical"],
  ["<=", "punct"],
  [">=", "punct"],
  ["<-", "punct"],
  ["!", "logical"],
  ["?", "logical"],
  ["&", "logical"],
  ["|", "logical"],
  ["~", "logical"],
  ["(", "punct"],
  [")", "punct"],
  ["{", "punct"],
  ["}", "punct"],
  [":", "punct"],
  [";", "punct"],
  [",", "punct"],
  [".", "punct"],
  ["=", "punct"],
  ["<", "punct"],
  [">", "punct"],
  ["+", "punct"],
  ["-", "punct"],
];

const FIXED_STARTS = new Set(FIXED.map(([s]) => s[0]));

function isIdentStart(c: string): boolean {
  return /[A-Za-z_]/.test(c) || (c.charCodeAt(0) > 127 && /\p{L}/u.test(c));
}

function isIdentChar(c: string): boolean {
  return /[A-Za-z0-9_]/.test(c) || (c.charCodeAt(0) > 127 && /[\p{L}\p{N}]/u.test(c));
}

function isKnownStart(c: string): boolean {
  return (
    c === " " ||
    c === "\t" ||
    c === "\r" ||
    c === "\n" ||
    c === "/" ||
    c === '"' ||
    isIdentStart(c) ||
    /[0-9]/.test(c) ||
    FIXED_STARTS.has(c)
  );
}

export function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  let i = 0;
  const n = text.length;
  const push = (kind: TokenKind, start: number, end: number) => {
    tokens.push({ kind, lexeme: text.slice(start, end), start });
  };

  while (i < n) {
    const c = text[i];

    if (c === " " || c === "\t" || c === "\r" || c === "\n") {
      let j = i;
      while (j < n && (text[j] === " " || text[j] === "\t" || text[j] === "\r" || text[j] === "\n")) j++;
      push("whitespace", i, j);
      i = j;
      continue;
    }

    if (c === "/" && text.startsWith("//", i)) {
      let j = text.indexOf("\n", i);
      if (j === -1) j = n;
      push("comment", i, j);
      i = j;
      continue;
    }

    if (c === "/" && text.startsWith("/*", i)) {
      const j = text.indexOf("*/", i + 2);
      if (j === -1) {
        push("error", i, n); // unterminated block comment
        i = n;
      } else {
        push("comment", i, j + 2);
        i = j + 2;
      }
      continue;
    }

    if (c === '"') {
      let j = i + 1;
      let closed = false;
      while (j < n && text[j] !== "\n") {
        if (text[j] === "\\" && j + 1 < n && text[j + 1] !== "\n") {
          j += 2;
          continue;
        }
        if (text[j] === '"') {
          closed = true;
          j++;
          break;
        }
        j++;
      }
      push(closed ? "string" : "error", i, j);
      i = j;
      continue;
    }

    if (isIdentStart(c)) {
      let j = i;
      while (j < n && isIdentChar(text[j])) j++;
      const word = text.slice(i, j);
      push(KEYWORDS.has(word) ? "keyword" : "identifier", i, j);
      i = j;
      continue;
    }

    if (/[0-9]/.test(c)) {
      let j = i;
      while (j < n && /[0-9]/.test(text[j])) j++;
      push("number", i, j);
      i = j;
      continue;
    }

    let matched = false;
    for (const [spelling, kind] of FIXED) {
      if (text.startsWith(spelling, i)) {
        push(kind, i, i + spelling.length);
        i += spelling.length;
        matched = true;
        break;
      }
    }
    if (matched) continue;

    let j = i + 1;
    while (j < n && !isKnownStart(text[j])) j++;
    push("error", i, j);
    i = j;
  }
  return tokens;
}

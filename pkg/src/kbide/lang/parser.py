"""Recursive-descent parser for the knowledge-base language.

Grammar summary::

    program    := block*
    block      := "vocabulary" NAME "{" decl* "}"
                | "theory" NAME ":" NAME "{" (formula ".")* "}"
                | "structure" NAME ":" NAME "{" assignment* "}"
                | "procedure" NAME "(" ")" "{" stmt* "}"
    decl       := "type" NAME | NAME "(" [NAME ("," NAME)*] ")" | NAME ":" NAME
    formula    := quantified and connective levels (<=>, =>, |, &, ~)
    assignment := NAME ["<" ("ct"|"cf") ">"] "=" ("{" tuples "}" | NAME | bool)

Syntax errors are reported as diagnostics, never raised to the caller.
The parser recovers at block boundaries, so a broken block yields one
diagnostic and parsing resumes at the next block.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .diagnostics import Diagnostic, Range, Severity, advance_position
from .tokens import Token, TokenKind, tokenize

_BLOCK_KEYWORDS = ("vocabulary", "theory", "structure", "procedure")

_STRING_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}

# Recursive descent must stay well inside the interpreter's stack, so
# pathological nesting is a diagnostic rather than a crash.
_MAX_NESTING = 200


@dataclass
class ParseResult:
    program: ast.Program | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.program is not None


class _ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _unescape(lexeme: str) -> str:
    body = lexeme[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\" and i + 1 < len(body):
            out.append(_STRING_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, text: str, file: str):
        self.file = file
        self.tokens = [
            t
            for t in tokenize(text)
            if t.kind not in (TokenKind.WHITESPACE, TokenKind.COMMENT)
        ]
        self.pos = 0
        self.depth = 0
        end_line, end_col = advance_position(1, 1, text)
        self.eof_range = Range(end_line, end_col, end_line, end_col)
        self.diagnostics: list[Diagnostic] = []

    def _descend(self) -> None:
        self.depth += 1
        if self.depth > _MAX_NESTING:
            raise self.error("nesting is too deep")

    # -- token cursor -------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return tok

    def at(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.lexeme == lexeme

    def at_kind(self, kind: TokenKind) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def accept(self, lexeme: str) -> Token | None:
        if self.at(lexeme):
            return self.next()
        return None

    def expect(self, lexeme: str, context: str = "") -> Token:
        tok = self.peek()
        if tok is not None and tok.lexeme == lexeme:
            self.pos += 1
            return tok
        suffix = f" {context}" if context else ""
        raise self.error(f"expected '{lexeme}'{suffix}", tok)

    def expect_name(self, what: str) -> Token:
        tok = self.peek()
        if tok is not None and tok.kind == TokenKind.IDENTIFIER:
            self.pos += 1
            return tok
        raise self.error(f"expected {what}", tok)

    def error(self, message: str, tok: Token | None = None) -> _ParseError:
        if tok is None:
            tok = self.peek()
        if tok is None:
            rng = self.tokens[-1].range if self.tokens else self.eof_range
            if self.tokens:
                rng = Range(rng.end_line, rng.end_col, rng.end_line, rng.end_col)
        else:
            rng = tok.range
            if tok.kind == TokenKind.ERROR:
                if tok.lexeme.startswith("/*"):
                    message = "unterminated block comment"
                elif tok.lexeme.startswith('"'):
                    message = "unterminated string literal"
                else:
                    message = f"unexpected characters {tok.lexeme!r}"
        return _ParseError(Diagnostic(Severity.ERROR, self.file, rng, message))

    # -- driver --------------------------------------------------------

    def parse_program(self) -> ast.Program:
        blocks: list[ast.Block] = []
        while self.peek() is not None:
            try:
                blocks.append(self.block())
            except _ParseError as exc:
                self.diagnostics.append(exc.diagnostic)
                self._recover_to_block_boundary()
        return ast.Program(blocks)

    def _recover_to_block_boundary(self) -> None:
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                return
            if depth <= 0 and tok.kind == TokenKind.KEYWORD and tok.lexeme in _BLOCK_KEYWORDS:
                return
            self.pos += 1
            if tok.lexeme == "{":
                depth += 1
            elif tok.lexeme == "}":
                depth -= 1
                if depth < 0:
                    return

    # -- blocks ----------------------------------------------------------

    def block(self) -> ast.Block:
        tok = self.peek()
        assert tok is not None
        if tok.lexeme == "vocabulary":
            return self.vocabulary_block()
        if tok.lexeme == "theory":
            return self.theory_block()
        if tok.lexeme == "structure":
            return self.structure_block()
        if tok.lexeme == "procedure":
            return self.procedure_block()
        raise self.error(
            "expected 'vocabulary', 'theory', 'structure', or 'procedure'", tok
        )

    def vocabulary_block(self) -> ast.VocabularyBlock:
        kw = self.expect("vocabulary")
        name = self.expect_name("a vocabulary name")
        self.expect("{", "to open the vocabulary")
        decls: list[ast.Decl] = []
        while not self.at("}"):
            decls.append(self.declaration())
        close = self.expect("}")
        return ast.VocabularyBlock(
            name.lexeme, decls, kw.range.merge(close.range), self.file, name.range
        )

    def declaration(self) -> ast.Decl:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a declaration or '}'")
        if tok.lexeme == "type":
            self.next()
            name = self.expect_name("a type name")
            return ast.TypeDecl(name.lexeme, tok.range.merge(name.range))
        name = self.expect_name("a declaration or '}'")
        if self.accept("("):
            arg_types: list[str] = []
            if not self.at(")"):
                arg_types.append(self.expect_name("a type name").lexeme)
                while self.accept(","):
                    arg_types.append(self.expect_name("a type name").lexeme)
            close = self.expect(")")
            if self.at(":"):
                raise self.error(
                    f"functions are not supported; declare '{name.lexeme}' as a predicate or constant"
                )
            return ast.PredDecl(name.lexeme, arg_types, name.range.merge(close.range))
        if self.accept(":"):
            ty = self.expect_name("a type name")
            return ast.ConstDecl(name.lexeme, ty.lexeme, name.range.merge(ty.range))
        raise self.error("expected '(' or ':' in declaration")

    def theory_block(self) -> ast.TheoryBlock:
        kw = self.expect("theory")
        name = self.expect_name("a theory name")
        self.expect(":", "between theory name and vocabulary")
        vocab = self.expect_name("a vocabulary name")
        self.expect("{", "to open the theory")
        sentences: list[ast.Sentence] = []
        while not self.at("}"):
            if self.at("{"):
                raise self.error("inductive definitions are not supported")
            start = self.peek()
            formula = self.formula()
            dot = self._expect_sentence_dot()
            assert start is not None
            sentences.append(
                ast.Sentence(
                    len(sentences) + 1,
                    formula,
                    start.range.merge(dot.range),
                    self.file,
                )
            )
        close = self.expect("}")
        return ast.TheoryBlock(
            name.lexeme,
            vocab.lexeme,
            sentences,
            kw.range.merge(close.range),
            self.file,
            name.range,
            vocab.range,
        )

    def _expect_sentence_dot(self) -> Token:
        tok = self.peek()
        if tok is not None and tok.lexeme == ".":
            self.pos += 1
            return tok
        if tok is not None and (tok.kind == TokenKind.NUMBER or tok.lexeme in ("+", "-")):
            raise self.error("arithmetic is not supported in sentences", tok)
        if tok is not None and tok.lexeme == "<-":
            raise self.error("inductive definitions are not supported", tok)
        raise self.error("expected '.' to end the sentence", tok)

    # -- formulas --------------------------------------------------------

    def formula(self) -> ast.Formula:
        self._descend()
        try:
            return self._equiv()
        finally:
            self.depth -= 1

    def _equiv(self) -> ast.Formula:
        node = self._implies()
        while self.at("<=>"):
            self.next()
            right = self._implies()
            node = ast.BinOp("equiv", node, right, node.span.merge(right.span))
        return node

    def _implies(self) -> ast.Formula:
        left = self._or()
        if self.at("=>"):
            self.next()
            right = self._implies()
            return ast.BinOp("implies", left, right, left.span.merge(right.span))
        return left

    def _or(self) -> ast.Formula:
        node = self._and()
        while self.at("|"):
            self.next()
            right = self._and()
            node = ast.BinOp("or", node, right, node.span.merge(right.span))
        return node

    def _and(self) -> ast.Formula:
        node = self._unary()
        while self.at("&"):
            self.next()
            right = self._unary()
            node = ast.BinOp("and", node, right, node.span.merge(right.span))
        return node

    def _unary(self) -> ast.Formula:
        self._descend()
        try:
            tok = self.peek()
            if tok is not None and tok.lexeme == "~":
                self.next()
                body = self._unary()
                return ast.Not(body, tok.range.merge(body.span))
            if tok is not None and tok.lexeme in ("!", "?"):
                return self._quantified()
            return self._primary_formula()
        finally:
            self.depth -= 1

    def _quantified(self) -> ast.Quant:
        q = self.next()
        kind = "forall" if q.lexeme == "!" else "exists"
        vars: list[ast.QuantVar] = []
        # A name directly followed by "(" is the start of an atom, not
        # another bound variable.
        while self.at_kind(TokenKind.IDENTIFIER):
            nxt = self.peek(1)
            if nxt is not None and nxt.lexeme == "(":
                break
            tok = self.next()
            vars.append(ast.QuantVar(tok.lexeme, tok.range))
        if not vars:
            raise self.error("expected at least one variable after quantifier")
        self.expect(":", "after quantified variables")
        body = self.formula()
        return ast.Quant(kind, vars, body, q.range.merge(body.span))

    def _primary_formula(self) -> ast.Formula:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a formula")
        if tok.lexeme == "(":
            self.next()
            inner = self.formula()
            close = self.expect(")")
            return _respan(inner, tok.range.merge(close.range))
        if tok.lexeme in ("true", "false"):
            self.next()
            return ast.BoolConst(tok.lexeme == "true", tok.range)
        if tok.kind == TokenKind.NUMBER:
            raise self.error("arithmetic is not supported in sentences", tok)
        if tok.kind == TokenKind.IDENTIFIER:
            name = self.next()
            if self.at("("):
                self.next()
                args: list[ast.Term] = []
                if not self.at(")"):
                    args.append(self._term())
                    while self.accept(","):
                        args.append(self._term())
                close = self.expect(")")
                return ast.Atom(name.lexeme, args, name.range.merge(close.range))
            left = ast.Term(name.lexeme, name.range)
            if self.accept("="):
                right = self._term()
                return ast.Eq(left, right, left.span.merge(right.span))
            return ast.Atom(name.lexeme, [], name.range)
        raise self.error("expected a formula", tok)

    def _term(self) -> ast.Term:
        tok = self.peek()
        if tok is not None and tok.kind == TokenKind.NUMBER:
            raise self.error("arithmetic is not supported in sentences", tok)
        name = self.expect_name("a term")
        return ast.Term(name.lexeme, name.range)

    # -- structures --------------------------------------------------------

    def structure_block(self) -> ast.StructureBlock:
        kw = self.expect("structure")
        name = self.expect_name("a structure name")
        self.expect(":", "between structure name and vocabulary")
        vocab = self.expect_name("a vocabulary name")
        self.expect("{", "to open the structure")
        assignments: list[ast.Assignment] = []
        while not self.at("}"):
            assignments.append(self.assignment())
        close = self.expect("}")
        return ast.StructureBlock(
            name.lexeme,
            vocab.lexeme,
            assignments,
            kw.range.merge(close.range),
            self.file,
            name.range,
            vocab.range,
        )

    def assignment(self) -> ast.Assignment:
        name = self.expect_name("a symbol name or '}'")
        part = "total"
        if self.accept("<"):
            part_tok = self.expect_name("'ct' or 'cf'")
            if part_tok.lexeme not in ("ct", "cf"):
                raise self.error("expected 'ct' or 'cf'", part_tok)
            part = part_tok.lexeme
            self.expect(">")
        self.expect("=", "in assignment")
        tok = self.peek()
        if tok is None:
            raise self.error("expected a value after '='")
        if tok.lexeme == "{":
            self.next()
            tuples: list[ast.SetTuple] = []
            if not self.at("}"):
                tuples.append(self._set_tuple())
                while self.accept(";"):
                    tuples.append(self._set_tuple())
            close = self.expect("}")
            return ast.SetAssign(name.lexeme, part, tuples, name.range.merge(close.range))
        if part != "total":
            raise self.error("partial assignments take a '{ ... }' set", tok)
        if tok.lexeme in ("true", "false"):
            self.next()
            return ast.SimpleAssign(name.lexeme, tok.lexeme == "true", name.range.merge(tok.range))
        if tok.kind == TokenKind.IDENTIFIER:
            self.next()
            return ast.SimpleAssign(name.lexeme, tok.lexeme, name.range.merge(tok.range))
        raise self.error("expected '{', an element name, 'true', or 'false'", tok)

    def _set_tuple(self) -> ast.SetTuple:
        tok = self.peek()
        if tok is not None and tok.lexeme == "(":
            self.next()
            elements = [self.expect_name("an element name").lexeme]
            while self.accept(","):
                elements.append(self.expect_name("an element name").lexeme)
            close = self.expect(")")
            return ast.SetTuple(elements, tok.range.merge(close.range))
        name = self.expect_name("an element name")
        return ast.SetTuple([name.lexeme], name.range)

    # -- procedures --------------------------------------------------------

    def procedure_block(self) -> ast.ProcedureBlock:
        kw = self.expect("procedure")
        name = self.expect_name("a procedure name")
        self.expect("(", "after procedure name")
        self.expect(")", "procedures take no parameters")
        self.expect("{", "to open the procedure")
        body = self._statements()
        close = self.expect("}")
        return ast.ProcedureBlock(
            name.lexeme, body, kw.range.merge(close.range), self.file, name.range
        )

    def _statements(self) -> list[ast.Stmt]:
        stmts: list[ast.Stmt] = []
        while not self.at("}"):
            stmts.append(self.statement())
        return stmts

    def statement(self) -> ast.Stmt:
        self._descend()
        try:
            return self._statement_inner()
        finally:
            self.depth -= 1

    def _statement_inner(self) -> ast.Stmt:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a statement or '}'")
        if tok.lexeme == "if":
            return self._if_statement()
        if tok.lexeme == "while":
            self.next()
            cond = self.expression()
            self.expect("{", "to open the loop body")
            body = self._statements()
            close = self.expect("}")
            return ast.WhileStmt(cond, body, tok.range.merge(close.range))
        if tok.lexeme == "exit":
            self.next()
            code = None
            end = tok.range
            if self.accept("("):
                code = self.expression()
                end = self.expect(")").range
            return ast.ExitStmt(code, tok.range.merge(end))
        if tok.kind == TokenKind.IDENTIFIER:
            nxt = self.peek(1)
            if nxt is not None and nxt.lexeme == ":=":
                self.next()
                self.next()
                expr = self.expression()
                return ast.AssignStmt(tok.lexeme, expr, tok.range.merge(expr.span))
            if nxt is not None and nxt.lexeme == "(":
                call = self._call(self.next())
                return ast.CallStmt(call, call.span)
            raise self.error("expected ':=' or '(' after identifier", nxt or tok)
        raise self.error("expected a statement", tok)

    def _if_statement(self) -> ast.IfStmt:
        kw = self.expect("if")
        cond = self.expression()
        self.expect("{", "to open the 'if' body")
        then = self._statements()
        close = self.expect("}")
        orelse: list[ast.Stmt] = []
        if self.accept("else"):
            self.expect("{", "to open the 'else' body")
            orelse = self._statements()
            close = self.expect("}")
        return ast.IfStmt(cond, then, orelse, kw.range.merge(close.range))

    def _call(self, name: Token) -> ast.Call:
        self.expect("(")
        args: list[ast.Expr] = []
        if not self.at(")"):
            args.append(self.expression())
            while self.accept(","):
                args.append(self.expression())
        close = self.expect(")")
        return ast.Call(name.lexeme, args, name.range.merge(close.range))

    # -- procedure expressions ----------------------------------------------

    def expression(self) -> ast.Expr:
        self._descend()
        try:
            return self._expr_or()
        finally:
            self.depth -= 1

    def _expr_or(self) -> ast.Expr:
        node = self._expr_and()
        while self.at("|"):
            self.next()
            right = self._expr_and()
            node = ast.Binary("|", node, right, node.span.merge(right.span))
        return node

    def _expr_and(self) -> ast.Expr:
        node = self._expr_cmp()
        while self.at("&"):
            self.next()
            right = self._expr_cmp()
            node = ast.Binary("&", node, right, node.span.merge(right.span))
        return node

    def _expr_cmp(self) -> ast.Expr:
        node = self._expr_add()
        tok = self.peek()
        if tok is not None and tok.lexeme in ("==", "!=", "<", "<=", ">", ">="):
            self.next()
            right = self._expr_add()
            return ast.Binary(tok.lexeme, node, right, node.span.merge(right.span))
        return node

    def _expr_add(self) -> ast.Expr:
        node = self._expr_unary()
        while self.at("+") or self.at("-"):
            op = self.next()
            right = self._expr_unary()
            node = ast.Binary(op.lexeme, node, right, node.span.merge(right.span))
        return node

    def _expr_unary(self) -> ast.Expr:
        self._descend()
        try:
            return self._expr_unary_inner()
        finally:
            self.depth -= 1

    def _expr_unary_inner(self) -> ast.Expr:
        tok = self.peek()
        if tok is not None and tok.lexeme == "~":
            self.next()
            operand = self._expr_unary()
            return ast.Unary("not", operand, tok.range.merge(operand.span))
        if tok is not None and tok.lexeme == "-":
            self.next()
            operand = self._expr_unary()
            return ast.Unary("neg", operand, tok.range.merge(operand.span))
        return self._expr_primary()

    def _expr_primary(self) -> ast.Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("expected an expression")
        if tok.kind == TokenKind.NUMBER:
            self.next()
            return ast.IntLit(int(tok.lexeme), tok.range)
        if tok.kind == TokenKind.STRING:
            self.next()
            return ast.StrLit(_unescape(tok.lexeme), tok.range)
        if tok.lexeme in ("true", "false"):
            self.next()
            return ast.BoolLit(tok.lexeme == "true", tok.range)
        if tok.lexeme == "(":
            self.next()
            inner = self.expression()
            close = self.expect(")")
            return _respan_expr(inner, tok.range.merge(close.range))
        if tok.kind == TokenKind.IDENTIFIER:
            name = self.next()
            if self.at("("):
                return self._call(name)
            return ast.VarRef(name.lexeme, name.range)
        raise self.error("expected an expression", tok)


def _respan(node: ast.Formula, span: Range) -> ast.Formula:
    node.span = span
    return node


def _respan_expr(node: ast.Expr, span: Range) -> ast.Expr:
    node.span = span
    return node


def parse(text: str, file: str = "<input>") -> ParseResult:
    """Parse a document. Returns a Program, or error diagnostics."""
    parser = _Parser(text, file)
    program = parser.parse_program()
    if parser.diagnostics:
        return ParseResult(None, parser.diagnostics)
    return ParseResult(program, [])

"""Canonical ASCII pretty-printer.

The printed form of any program reparses to a structurally equal tree;
round-trip tests and the share store rely on that. Indentation is four
spaces, matching the editor's reindent rule.
"""

from __future__ import annotations

from . import ast

_INDENT = "    "

# Binding strength, loosest first. Used to decide where parentheses are
# required when printing formula trees.
_PRECEDENCE = {"equiv": 1, "implies": 2, "or": 3, "and": 4}


def print_program(program: ast.Program) -> str:
    chunks = [_print_block(b) for b in program.blocks]
    return "\n".join(chunks)


def _print_block(block: ast.Block) -> str:
    if isinstance(block, ast.VocabularyBlock):
        lines = [f"vocabulary {block.name} {{"]
        for d in block.decls:
            lines.append(_INDENT + _print_decl(d))
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(block, ast.TheoryBlock):
        lines = [f"theory {block.name} : {block.vocab_name} {{"]
        for s in block.sentences:
            lines.append(_INDENT + print_formula(s.formula) + ".")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(block, ast.StructureBlock):
        lines = [f"structure {block.name} : {block.vocab_name} {{"]
        for a in block.assignments:
            lines.append(_INDENT + _print_assignment(a))
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(block, ast.ProcedureBlock):
        lines = [f"procedure {block.name}() {{"]
        lines.extend(_print_stmts(block.body, 1))
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise TypeError(f"unknown block {block!r}")


def _print_decl(decl: ast.Decl) -> str:
    if isinstance(decl, ast.TypeDecl):
        return f"type {decl.name}"
    if isinstance(decl, ast.PredDecl):
        return f"{decl.name}({', '.join(decl.arg_types)})"
    if isinstance(decl, ast.ConstDecl):
        return f"{decl.name} : {decl.type}"
    raise TypeError(f"unknown declaration {decl!r}")


def print_formula(f: ast.Formula, parent_level: int = 0) -> str:
    """Print with minimal parentheses given the parent's binding level."""
    if isinstance(f, ast.Quant):
        marker = "!" if f.kind == "forall" else "?"
        names = " ".join(v.name for v in f.vars)
        body = print_formula(f.body)
        text = f"{marker}{names}: {body}"
        # Quantifiers reach as far right as possible; any enclosing
        # connective needs parentheses around them.
        return f"({text})" if parent_level > 0 else text
    if isinstance(f, ast.Not):
        inner = f.body
        if isinstance(inner, (ast.Atom, ast.Eq, ast.BoolConst, ast.Not)):
            return "~" + print_formula(inner, 5)
        return "~(" + print_formula(inner) + ")"
    if isinstance(f, ast.BinOp):
        level = _PRECEDENCE[f.op]
        symbol = {"equiv": "<=>", "implies": "=>", "or": "|", "and": "&"}[f.op]
        # equiv/or/and associate left, implies associates right.
        if f.op == "implies":
            left = print_formula(f.left, level + 1)
            right = print_formula(f.right, level)
        else:
            left = print_formula(f.left, level)
            right = print_formula(f.right, level + 1)
        text = f"{left} {symbol} {right}"
        return f"({text})" if parent_level > level else text
    if isinstance(f, ast.Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(t.name for t in f.args)})"
    if isinstance(f, ast.Eq):
        return f"{f.left.name} = {f.right.name}"
    if isinstance(f, ast.BoolConst):
        return "true" if f.value else "false"
    raise TypeError(f"unknown formula {f!r}")


def _print_assignment(a: ast.Assignment) -> str:
    if isinstance(a, ast.SimpleAssign):
        value = a.value if isinstance(a.value, str) else ("true" if a.value else "false")
        return f"{a.symbol} = {value}"
    marker = "" if a.part == "total" else f"<{a.part}>"
    items = "; ".join(_print_tuple(t) for t in a.tuples)
    inner = f" {items} " if items else ""
    return f"{a.symbol}{marker} = {{{inner}}}"


def _print_tuple(t: ast.SetTuple) -> str:
    if len(t.elements) == 1:
        return t.elements[0]
    return "(" + ", ".join(t.elements) + ")"


def _print_stmts(stmts: list[ast.Stmt], depth: int) -> list[str]:
    pad = _INDENT * depth
    lines: list[str] = []
    for s in stmts:
        if isinstance(s, ast.AssignStmt):
            lines.append(f"{pad}{s.var} := {print_expr(s.expr)}")
        elif isinstance(s, ast.CallStmt):
            lines.append(f"{pad}{print_expr(s.call)}")
        elif isinstance(s, ast.IfStmt):
            lines.append(f"{pad}if {print_expr(s.cond)} {{")
            lines.extend(_print_stmts(s.then, depth + 1))
            if s.orelse:
                lines.append(f"{pad}}} else {{")
                lines.extend(_print_stmts(s.orelse, depth + 1))
            lines.append(f"{pad}}}")
        elif isinstance(s, ast.WhileStmt):
            lines.append(f"{pad}while {print_expr(s.cond)} {{")
            lines.extend(_print_stmts(s.body, depth + 1))
            lines.append(f"{pad}}}")
        elif isinstance(s, ast.ExitStmt):
            if s.code is None:
                lines.append(f"{pad}exit")
            else:
                lines.append(f"{pad}exit({print_expr(s.code)})")
        else:
            raise TypeError(f"unknown statement {s!r}")
    return lines


_EXPR_PRECEDENCE = {
    "|": 1,
    "&": 2,
    "==": 3,
    "!=": 3,
    "<": 3,
    "<=": 3,
    ">": 3,
    ">=": 3,
    "+": 4,
    "-": 4,
}


def print_expr(e: ast.Expr, parent_level: int = 0) -> str:
    if isinstance(e, ast.IntLit):
        return str(e.value)
    if isinstance(e, ast.StrLit):
        escaped = (
            e.value.replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\t", "\\t")
        )
        return f'"{escaped}"'
    if isinstance(e, ast.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, ast.VarRef):
        return e.name
    if isinstance(e, ast.Call):
        return f"{e.func}({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, ast.Unary):
        marker = "~" if e.op == "not" else "-"
        return marker + print_expr(e.operand, 5)
    if isinstance(e, ast.Binary):
        level = _EXPR_PRECEDENCE[e.op]
        # comparisons do not chain, so same-level operands need parens
        left_level = level + 1 if level == 3 else level
        left = print_expr(e.left, left_level)
        right = print_expr(e.right, level + 1)
        text = f"{left} {e.op} {right}"
        return f"({text})" if parent_level > level else text
    raise TypeError(f"unknown expression {e!r}")

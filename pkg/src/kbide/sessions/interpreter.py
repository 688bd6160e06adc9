"""Interpreter for procedure bodies and the interactive shell.

The command set is a closed whitelist; nothing here can reach the
filesystem or the network. Procedures manipulate ints, booleans,
strings, and engine results; block names are passed to the inference
commands by name, as in ``modelexpand(T, S)``.

Shell mode reads one command per input line and keeps going after
errors; ``exit`` ends the run.
"""

from __future__ import annotations

from typing import Any, Callable

from ..engine import (
    EngineError,
    Inconsistent,
    PartialStructure,
    Satisfiable,
    UnsatCore,
    build_structure,
    modelexpand,
    propagate,
    unsatcore,
)
from ..lang import analyze, ast, parse
from ..limits import ResourceLimits


class ProcError(Exception):
    """A runtime error in user code; reported on stderr."""


class ExitSignal(Exception):
    def __init__(self, code: int):
        super().__init__(f"exit({code})")
        self.code = code


_VOID = object()

_SHELL_HELP = """commands:
  modelexpand(T, S [, n])  models of theory T over structure S
  propagate(T, S)          consequences of T over S
  unsatcore(T, S)          minimal inconsistent instantiation set
  help                     this text
  exit                     end the session
"""


class Interpreter:
    """Runs procedures against a run context.

    The context supplies I/O and control: emit_stdout/emit_stderr,
    ask(prompt), wait_click(), emit_viz(command), a viz state, and
    tick() for kill/deadline checks.
    """

    def __init__(self, ctx, files: dict[str, str], limits: ResourceLimits):
        self.ctx = ctx
        self.files = files
        self.limits = limits
        self.typed = None

    # -- entry points ----------------------------------------------------

    def prepare(self) -> bool:
        result = analyze(self.files)
        for diag in result.diagnostics:
            self.ctx.emit_stderr(str(diag) + "\n")
        self.typed = result.typed
        return result.ok

    def run_main(self, entry: str = "main") -> int:
        if not self.prepare():
            return 1
        proc = self.typed.procedures.get(entry)
        if proc is None:
            self.ctx.emit_stderr(f"no procedure named '{entry}'\n")
            return 1
        env: dict[str, Any] = {}
        try:
            self._exec_stmts(proc.body, env)
        except ExitSignal as exit_signal:
            return exit_signal.code
        except (ProcError, EngineError) as exc:
            self.ctx.emit_stderr(f"error: {exc}\n")
            return 1
        return 0

    def run_shell(self) -> int:
        if not self.prepare():
            return 1
        shell_env: dict[str, Any] = {}
        while True:
            line = self.ctx.ask("> ")
            try:
                self._shell_command(line, shell_env)
            except ExitSignal as exit_signal:
                return exit_signal.code
            except (Inconsistent, Satisfiable) as exc:
                self.ctx.emit_stdout(f"{exc}\n")
            except (ProcError, EngineError) as exc:
                self.ctx.emit_stderr(f"error: {exc}\n")

    def _shell_command(self, line: str, env: dict[str, Any]) -> None:
        stripped = line.strip()
        if not stripped:
            return
        if stripped == "exit":
            raise ExitSignal(0)
        if stripped == "help":
            self.ctx.emit_stdout(_SHELL_HELP)
            return
        # Reuse the procedure grammar: a shell line is a statement list.
        wrapped = "procedure __shell__() {\n" + line + "\n}"
        result = parse(wrapped, file="<shell>")
        if result.program is None or not isinstance(
            result.program.blocks[0], ast.ProcedureBlock
        ):
            raise ProcError("parse error in command")
        for stmt in result.program.blocks[0].body:
            self.ctx.tick()
            if isinstance(stmt, ast.CallStmt):
                value = self._call_builtin(stmt.call.func, stmt.call.args, env)
                if value is not _VOID and value is not None:
                    self.ctx.emit_stdout(self._render(value) + "\n")
            else:
                self._exec_stmt(stmt, env)

    # -- statements --------------------------------------------------------

    def _exec_stmts(self, stmts: list[ast.Stmt], env: dict[str, Any]) -> None:
        for stmt in stmts:
            self.ctx.tick()
            self._exec_stmt(stmt, env)

    def _exec_stmt(self, stmt: ast.Stmt, env: dict[str, Any]) -> None:
        if isinstance(stmt, ast.AssignStmt):
            value = self._eval(stmt.expr, env)
            if value is _VOID:
                raise ProcError("this command returns no value")
            env[stmt.var] = value
        elif isinstance(stmt, ast.CallStmt):
            self._call_builtin(stmt.call.func, stmt.call.args, env)
        elif isinstance(stmt, ast.IfStmt):
            if self._bool(stmt.cond, env):
                self._exec_stmts(stmt.then, env)
            else:
                self._exec_stmts(stmt.orelse, env)
        elif isinstance(stmt, ast.WhileStmt):
            while self._bool(stmt.cond, env):
                self._exec_stmts(stmt.body, env)
                self.ctx.tick()
        elif isinstance(stmt, ast.ExitStmt):
            code = 0
            if stmt.code is not None:
                code = self._eval(stmt.code, env)
                if not isinstance(code, int) or isinstance(code, bool):
                    raise ProcError("exit code must be an integer")
            raise ExitSignal(code)
        else:
            raise TypeError(f"unknown statement {stmt!r}")

    def _bool(self, expr: ast.Expr, env: dict[str, Any]) -> bool:
        value = self._eval(expr, env)
        if not isinstance(value, bool):
            raise ProcError("condition must be a boolean")
        return value

    # -- expressions ---------------------------------------------------------

    def _eval(self, expr: ast.Expr, env: dict[str, Any]) -> Any:
        if isinstance(expr, ast.IntLit):
            return expr.value
        if isinstance(expr, ast.StrLit):
            return expr.value
        if isinstance(expr, ast.BoolLit):
            return expr.value
        if isinstance(expr, ast.VarRef):
            if expr.name not in env:
                raise ProcError(f"undefined variable '{expr.name}'")
            return env[expr.name]
        if isinstance(expr, ast.Call):
            value = self._call_builtin(expr.func, expr.args, env)
            if value is _VOID:
                raise ProcError(f"'{expr.func}' returns no value")
            return value
        if isinstance(expr, ast.Unary):
            operand = self._eval(expr.operand, env)
            if expr.op == "not":
                if not isinstance(operand, bool):
                    raise ProcError("'~' needs a boolean")
                return not operand
            if not isinstance(operand, int) or isinstance(operand, bool):
                raise ProcError("'-' needs an integer")
            return -operand
        if isinstance(expr, ast.Binary):
            return self._binary(expr, env)
        raise TypeError(f"unknown expression {expr!r}")

    def _binary(self, expr: ast.Binary, env: dict[str, Any]) -> Any:
        op = expr.op
        if op in ("&", "|"):
            left = self._eval(expr.left, env)
            if not isinstance(left, bool):
                raise ProcError(f"'{op}' needs booleans")
            if op == "&" and not left:
                return False
            if op == "|" and left:
                return True
            right = self._eval(expr.right, env)
            if not isinstance(right, bool):
                raise ProcError(f"'{op}' needs booleans")
            return right
        left = self._eval(expr.left, env)
        right = self._eval(expr.right, env)
        if op in ("==", "!="):
            if type(left) is not type(right):
                raise ProcError(
                    f"cannot compare {_type_name(left)} with {_type_name(right)}"
                )
            return (left == right) if op == "==" else (left != right)
        if not _is_int(left) or not _is_int(right):
            raise ProcError(f"'{op}' needs integers")
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        if op == ">=":
            return left >= right
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        raise TypeError(f"unknown operator {op}")

    # -- builtins ---------------------------------------------------------

    def _call_builtin(self, name: str, args: list[ast.Expr], env: dict[str, Any]) -> Any:
        handler = _BUILTINS.get(name)
        if handler is None:
            raise ProcError(f"unknown command '{name}'")
        return handler(self, args, env)

    def _block_name(self, arg: ast.Expr, what: str) -> str:
        if isinstance(arg, ast.VarRef):
            return arg.name
        if isinstance(arg, ast.StrLit):
            return arg.value
        raise ProcError(f"expected the name of a {what}")

    def _theory_structure(self, args: list[ast.Expr], command: str):
        if len(args) < 2:
            raise ProcError(f"{command} takes a theory name and a structure name")
        theory_name = self._block_name(args[0], "theory")
        structure_name = self._block_name(args[1], "structure")
        theory = self.typed.theories.get(theory_name)
        if theory is None:
            raise ProcError(f"unknown theory '{theory_name}'")
        if structure_name not in self.typed.structures:
            raise ProcError(f"unknown structure '{structure_name}'")
        structure = build_structure(self.typed, structure_name)
        if theory.vocab.name != structure.vocab.name:
            raise ProcError(
                f"theory '{theory_name}' and structure '{structure_name}' use different vocabularies"
            )
        return theory, structure

    def _int_arg(self, args: list[ast.Expr], index: int, env: dict[str, Any], default: int) -> int:
        if len(args) <= index:
            return default
        value = self._eval(args[index], env)
        if not _is_int(value) or value < 1:
            raise ProcError("the model count must be a positive integer")
        return value

    def _builtin_print(self, args, env):
        parts = [self._render(self._eval(a, env)) for a in args]
        self.ctx.emit_stdout(" ".join(parts) + "\n")
        return _VOID

    def _builtin_ask(self, args, env):
        if len(args) != 1:
            raise ProcError("ask takes one prompt argument")
        prompt = self._eval(args[0], env)
        if not isinstance(prompt, str):
            raise ProcError("the prompt must be a string")
        return self.ctx.ask(prompt)

    def _builtin_modelexpand(self, args, env):
        theory, structure = self._theory_structure(args, "modelexpand")
        cap = self._int_arg(args, 2, env, self.limits.max_models)
        cap = min(cap, self.limits.max_models)
        return modelexpand(theory, structure, cap, self.limits, self.ctx.tick)

    def _builtin_nbmodels(self, args, env):
        theory, structure = self._theory_structure(args, "nbmodels")
        cap = self._int_arg(args, 2, env, self.limits.max_models)
        cap = min(cap, self.limits.max_models)
        return len(modelexpand(theory, structure, cap, self.limits, self.ctx.tick))

    def _builtin_propagate(self, args, env):
        theory, structure = self._theory_structure(args, "propagate")
        return propagate(theory, structure, self.limits, self.ctx.tick)

    def _builtin_unsatcore(self, args, env):
        theory, structure = self._theory_structure(args, "unsatcore")
        return unsatcore(theory, structure, self.limits, self.ctx.tick)

    def _builtin_draw_grid(self, args, env):
        if len(args) != 2:
            raise ProcError("draw_grid takes width and height")
        width = self._eval(args[0], env)
        height = self._eval(args[1], env)
        if not _is_int(width) or not _is_int(height) or width < 1 or height < 1:
            raise ProcError("grid dimensions must be positive integers")
        self.ctx.viz.set_grid(width, height)
        self.ctx.emit_grid(width, height)
        return _VOID

    def _viz_coords(self, args, env, command: str) -> tuple[int, int] | None:
        x = self._eval(args[0], env)
        y = self._eval(args[1], env)
        if not _is_int(x) or not _is_int(y):
            raise ProcError(f"{command} coordinates must be integers")
        if not self.ctx.viz.has_grid():
            raise ProcError(f"{command} before draw_grid")
        if not self.ctx.viz.in_bounds(x, y):
            self.ctx.emit_stderr(
                f"warning: {command}({x}, {y}) is outside the grid; ignored\n"
            )
            return None
        return x, y

    def _builtin_draw_cell(self, args, env):
        if len(args) != 3:
            raise ProcError("draw_cell takes x, y, and a color")
        coords = self._viz_coords(args, env, "draw_cell")
        color = self._eval(args[2], env)
        if not isinstance(color, str):
            raise ProcError("the color must be a string")
        if coords is not None:
            x, y = coords
            self.ctx.viz.set_cell(x, y, color)
            self.ctx.emit_cell(x, y, color)
        return _VOID

    def _builtin_draw_label(self, args, env):
        if len(args) != 3:
            raise ProcError("draw_label takes x, y, and a text")
        coords = self._viz_coords(args, env, "draw_label")
        text = self._eval(args[2], env)
        if not isinstance(text, str):
            raise ProcError("the label must be a string")
        if coords is not None:
            self.ctx.emit_label(coords[0], coords[1], text)
        return _VOID

    def _builtin_onclick(self, args, env):
        if len(args) != 2 or not all(isinstance(a, ast.VarRef) for a in args):
            raise ProcError("onclick takes two variable names for the coordinates")
        if not self.ctx.viz.has_grid():
            raise ProcError("onclick before draw_grid")
        x, y = self.ctx.wait_click()
        env[args[0].name] = x
        env[args[1].name] = y
        return _VOID

    def _builtin_cell_color(self, args, env):
        if len(args) != 2:
            raise ProcError("cell_color takes x and y")
        x = self._eval(args[0], env)
        y = self._eval(args[1], env)
        if not _is_int(x) or not _is_int(y):
            raise ProcError("cell_color coordinates must be integers")
        return self.ctx.viz.color_at(x, y)

    # -- rendering -------------------------------------------------------

    def _render(self, value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (int, str)):
            return str(value)
        if isinstance(value, PartialStructure):
            return value.render().rstrip("\n")
        if isinstance(value, list):
            if not value:
                return "no models"
            blocks = [
                m.render(name=f"M{i}").rstrip("\n") for i, m in enumerate(value, start=1)
            ]
            return "\n".join(blocks)
        if isinstance(value, UnsatCore):
            lines = [f"unsat core of theory {value.theory_name}:"]
            for item in value.items:
                lines.append(
                    f"  sentence {item.sentence_index} at line {item.range.line}: {item.substitution}"
                )
            return "\n".join(lines)
        raise ProcError(f"cannot print a value of type {_type_name(value)}")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _type_name(value: Any) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, int):
        return "integer"
    if isinstance(value, str):
        return "string"
    if isinstance(value, PartialStructure):
        return "structure"
    if isinstance(value, UnsatCore):
        return "core"
    if isinstance(value, list):
        return "model list"
    return type(value).__name__


_BUILTINS: dict[str, Callable] = {
    "print": Interpreter._builtin_print,
    "ask": Interpreter._builtin_ask,
    "modelexpand": Interpreter._builtin_modelexpand,
    "nbmodels": Interpreter._builtin_nbmodels,
    "propagate": Interpreter._builtin_propagate,
    "unsatcore": Interpreter._builtin_unsatcore,
    "draw_grid": Interpreter._builtin_draw_grid,
    "draw_cell": Interpreter._builtin_draw_cell,
    "draw_label": Interpreter._builtin_draw_label,
    "onclick": Interpreter._builtin_onclick,
    "cell_color": Interpreter._builtin_cell_color,
}

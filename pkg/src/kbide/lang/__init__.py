"""Lexer, parser, and resolver for the knowledge-base language."""

from __future__ import annotations

from dataclasses import dataclass

from .ast import Program, merge_programs, structurally_equal
from .diagnostics import Diagnostic, Range, Severity, sort_diagnostics
from .parser import ParseResult, parse
from .printer import print_formula, print_program
from .resolver import ResolveResult, TypedProgram, resolve
from .tokens import Token, TokenKind, tokenize

__all__ = [
    "Diagnostic",
    "Range",
    "Severity",
    "Token",
    "TokenKind",
    "tokenize",
    "parse",
    "ParseResult",
    "resolve",
    "ResolveResult",
    "TypedProgram",
    "Program",
    "print_program",
    "print_formula",
    "structurally_equal",
    "merge_programs",
    "analyze",
    "AnalysisResult",
    "sort_diagnostics",
]


@dataclass
class AnalysisResult:
    typed: TypedProgram | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.typed is not None


def analyze(files: dict[str, str]) -> AnalysisResult:
    """Parse and resolve a set of files as one program.

    Blocks from all files share a single namespace. Diagnostics from
    every file are collected; resolution runs only when all files parse.
    """
    programs: list[Program] = []
    diagnostics: list[Diagnostic] = []
    for name, content in files.items():
        result = parse(content, file=name)
        diagnostics.extend(result.diagnostics)
        if result.program is not None:
            programs.append(result.program)
    if diagnostics:
        return AnalysisResult(None, sort_diagnostics(diagnostics))
    resolved = resolve(merge_programs(programs))
    return AnalysisResult(resolved.typed, resolved.diagnostics)

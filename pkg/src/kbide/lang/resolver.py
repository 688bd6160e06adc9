"""Name and type resolution.

Builds the symbol table for each vocabulary, binds every variable
occurrence to its quantifier, infers variable types from predicate
argument positions, and validates structure assignments against the
declared domains. Problems are reported as diagnostics: unknown
references, arity and type mismatches, and unbound variables are
errors; unused declarations and variable shadowing are warnings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import ast
from .diagnostics import Diagnostic, Range, Severity, sort_diagnostics


@dataclass
class PredSig:
    name: str
    arg_types: list[str]
    span: Range


@dataclass
class ConstSig:
    name: str
    type: str
    span: Range


@dataclass
class VocabInfo:
    name: str
    block: ast.VocabularyBlock
    types: list[str] = field(default_factory=list)
    type_spans: dict[str, Range] = field(default_factory=dict)
    predicates: dict[str, PredSig] = field(default_factory=dict)
    constants: dict[str, ConstSig] = field(default_factory=dict)

    def owns(self, name: str) -> bool:
        return name in self.type_spans or name in self.predicates or name in self.constants


@dataclass
class TheoryInfo:
    block: ast.TheoryBlock
    vocab: VocabInfo

    @property
    def name(self) -> str:
        return self.block.name

    @property
    def sentences(self) -> list[ast.Sentence]:
        return self.block.sentences


@dataclass
class StructureInfo:
    block: ast.StructureBlock
    vocab: VocabInfo
    domains: dict[str, list[str]] = field(default_factory=dict)
    atoms: dict[tuple[str, tuple[str, ...]], bool] = field(default_factory=dict)
    constants: dict[str, str] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.block.name


@dataclass
class TypedProgram:
    program: ast.Program
    vocabs: dict[str, VocabInfo]
    theories: dict[str, TheoryInfo]
    structures: dict[str, StructureInfo]
    procedures: dict[str, ast.ProcedureBlock]


@dataclass
class ResolveResult:
    typed: TypedProgram | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.typed is not None


class _Resolver:
    def __init__(self, program: ast.Program):
        self.program = program
        self.diagnostics: list[Diagnostic] = []
        self.vocabs: dict[str, VocabInfo] = {}
        self.theories: dict[str, TheoryInfo] = {}
        self.structures: dict[str, StructureInfo] = {}
        self.procedures: dict[str, ast.ProcedureBlock] = {}
        # (vocab name, symbol name) pairs seen in sentences or assignments
        self.used_symbols: set[tuple[str, str]] = set()

    def error(self, file: str, span: Range, message: str) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, file, span, message))

    def warning(self, file: str, span: Range, message: str) -> None:
        self.diagnostics.append(Diagnostic(Severity.WARNING, file, span, message))

    # -- vocabularies ---------------------------------------------------

    def collect_vocabularies(self) -> None:
        for block in self.program.blocks:
            if not isinstance(block, ast.VocabularyBlock):
                continue
            if block.name in self.vocabs:
                self.error(block.file, block.name_span, f"duplicate vocabulary '{block.name}'")
                continue
            info = VocabInfo(block.name, block)
            for decl in block.decls:
                name = decl.name
                if info.owns(name):
                    self.error(block.file, decl.span, f"duplicate declaration of '{name}'")
                    continue
                if isinstance(decl, ast.TypeDecl):
                    info.types.append(name)
                    info.type_spans[name] = decl.span
                elif isinstance(decl, ast.PredDecl):
                    info.predicates[name] = PredSig(name, decl.arg_types, decl.span)
                else:
                    info.constants[name] = ConstSig(name, decl.type, decl.span)
            for decl in block.decls:
                if isinstance(decl, ast.PredDecl):
                    refs = decl.arg_types
                elif isinstance(decl, ast.ConstDecl):
                    refs = [decl.type]
                else:
                    refs = []
                for ty in refs:
                    if ty not in info.type_spans:
                        self.error(block.file, decl.span, f"unknown type '{ty}'")
            self.vocabs[block.name] = info

    def lookup_vocab(self, block: ast.TheoryBlock | ast.StructureBlock) -> VocabInfo | None:
        info = self.vocabs.get(block.vocab_name)
        if info is None:
            self.error(block.file, block.vocab_span, f"unknown vocabulary '{block.vocab_name}'")
        return info

    # -- theories ---------------------------------------------------------

    def resolve_theories(self) -> None:
        for block in self.program.blocks:
            if not isinstance(block, ast.TheoryBlock):
                continue
            if block.name in self.theories:
                self.error(block.file, block.name_span, f"duplicate theory '{block.name}'")
                continue
            vocab = self.lookup_vocab(block)
            if vocab is None:
                continue
            for sentence in block.sentences:
                self.resolve_sentence(block, vocab, sentence)
            self.theories[block.name] = TheoryInfo(block, vocab)

    def resolve_sentence(
        self, block: ast.TheoryBlock, vocab: VocabInfo, sentence: ast.Sentence
    ) -> None:
        var_terms: list[tuple[ast.Term, ast.QuantVar]] = []
        eq_pairs: list[tuple[ast.QuantVar, ast.QuantVar]] = []
        binders: list[ast.QuantVar] = []

        def set_var_type(binder: ast.QuantVar, vtype: str, span: Range) -> None:
            if binder.vtype is None:
                binder.vtype = vtype
            elif binder.vtype != vtype:
                self.error(
                    block.file,
                    span,
                    f"variable '{binder.name}' is used as both {binder.vtype} and {vtype}",
                )

        def resolve_term(
            term: ast.Term, scope: list[ast.QuantVar], expected: str | None
        ) -> ast.QuantVar | None:
            for binder in reversed(scope):
                if binder.name == term.name:
                    term.is_const = False
                    var_terms.append((term, binder))
                    if expected is not None:
                        set_var_type(binder, expected, term.span)
                    return binder
            const = vocab.constants.get(term.name)
            if const is not None:
                term.is_const = True
                term.vtype = const.type
                self.used_symbols.add((vocab.name, term.name))
                if expected is not None and const.type != expected:
                    self.error(
                        block.file,
                        term.span,
                        f"'{term.name}' has type {const.type} but {expected} is required",
                    )
                return None
            if term.name in vocab.predicates:
                self.error(block.file, term.span, f"'{term.name}' is a predicate, not a term")
            elif term.name in vocab.type_spans:
                self.error(block.file, term.span, f"'{term.name}' is a type, not a term")
            else:
                self.error(block.file, term.span, f"unknown symbol '{term.name}'")
            return None

        def walk(f: ast.Formula, scope: list[ast.QuantVar]) -> None:
            if isinstance(f, ast.Quant):
                frame: list[ast.QuantVar] = []
                for v in f.vars:
                    if any(b.name == v.name for b in frame):
                        self.error(block.file, v.span, f"duplicate variable '{v.name}'")
                        continue
                    if any(b.name == v.name for b in scope):
                        self.warning(
                            block.file, v.span, f"variable '{v.name}' shadows an outer variable"
                        )
                    frame.append(v)
                    binders.append(v)
                walk(f.body, scope + frame)
            elif isinstance(f, ast.Not):
                walk(f.body, scope)
            elif isinstance(f, ast.BinOp):
                walk(f.left, scope)
                walk(f.right, scope)
            elif isinstance(f, ast.Atom):
                sig = vocab.predicates.get(f.pred)
                if sig is None:
                    if f.pred in vocab.constants:
                        self.error(block.file, f.span, f"'{f.pred}' is a constant, not a predicate")
                    elif f.pred in vocab.type_spans:
                        self.error(block.file, f.span, f"'{f.pred}' is a type, not a predicate")
                    elif any(b.name == f.pred for b in scope) and not f.args:
                        self.error(
                            block.file,
                            f.span,
                            f"variable '{f.pred}' cannot stand alone as a formula",
                        )
                    else:
                        self.error(block.file, f.span, f"unknown predicate '{f.pred}'")
                    return
                self.used_symbols.add((vocab.name, f.pred))
                if len(f.args) != len(sig.arg_types):
                    self.error(
                        block.file,
                        f.span,
                        f"predicate '{f.pred}' expects {len(sig.arg_types)} argument(s), got {len(f.args)}",
                    )
                    for arg in f.args:
                        resolve_term(arg, scope, None)
                    return
                for arg, ty in zip(f.args, sig.arg_types):
                    resolve_term(arg, scope, ty)
            elif isinstance(f, ast.Eq):
                lb = resolve_term(f.left, scope, None)
                rb = resolve_term(f.right, scope, None)
                if lb is not None and rb is not None:
                    eq_pairs.append((lb, rb))
                elif lb is not None and f.right.vtype is not None:
                    set_var_type(lb, f.right.vtype, f.span)
                elif rb is not None and f.left.vtype is not None:
                    set_var_type(rb, f.left.vtype, f.span)
                elif lb is None and rb is None:
                    if (
                        f.left.vtype is not None
                        and f.right.vtype is not None
                        and f.left.vtype != f.right.vtype
                    ):
                        self.error(
                            block.file, f.span, f"cannot compare {f.left.vtype} with {f.right.vtype}"
                        )
            elif isinstance(f, ast.BoolConst):
                pass
            else:
                raise TypeError(f"unknown formula node {f!r}")

        walk(sentence.formula, [])

        # Propagate types across var = var equalities until stable.
        changed = True
        while changed:
            changed = False
            for a, b in eq_pairs:
                if a.vtype is not None and b.vtype is None:
                    b.vtype = a.vtype
                    changed = True
                elif b.vtype is not None and a.vtype is None:
                    a.vtype = b.vtype
                    changed = True
        for a, b in eq_pairs:
            if a.vtype is not None and b.vtype is not None and a.vtype != b.vtype:
                self.error(block.file, b.span, f"cannot compare {a.vtype} with {b.vtype}")

        for binder in binders:
            if binder.vtype is None:
                self.error(
                    block.file, binder.span, f"cannot infer a type for variable '{binder.name}'"
                )
        for term, binder in var_terms:
            term.vtype = binder.vtype

    # -- structures ---------------------------------------------------------

    def resolve_structures(self) -> None:
        for block in self.program.blocks:
            if not isinstance(block, ast.StructureBlock):
                continue
            if block.name in self.structures:
                self.error(block.file, block.name_span, f"duplicate structure '{block.name}'")
                continue
            vocab = self.lookup_vocab(block)
            if vocab is None:
                continue
            info = StructureInfo(block, vocab)
            # Types first: predicate and constant assignments need domains.
            for a in block.assignments:
                if a.symbol in vocab.type_spans:
                    self._assign_type(block, info, a)
            for t in vocab.types:
                if t not in info.domains:
                    self.error(
                        block.file,
                        block.name_span,
                        f"type '{t}' is not interpreted by structure '{block.name}'",
                    )
            parts_seen: dict[str, set[str]] = {}
            for a in block.assignments:
                if a.symbol in vocab.type_spans:
                    continue
                if a.symbol in vocab.predicates:
                    self._assign_pred(block, vocab, info, a, parts_seen)
                elif a.symbol in vocab.constants:
                    self._assign_const(block, vocab, info, a)
                else:
                    self.error(block.file, a.span, f"unknown symbol '{a.symbol}'")
            self.structures[block.name] = info

    def _assign_type(self, block: ast.StructureBlock, info: StructureInfo, a: ast.Assignment) -> None:
        if isinstance(a, ast.SimpleAssign) or a.part != "total":
            self.error(block.file, a.span, f"type '{a.symbol}' takes a total element list")
            return
        if a.symbol in info.domains:
            self.error(block.file, a.span, f"duplicate interpretation of type '{a.symbol}'")
            return
        elements: list[str] = []
        for t in a.tuples:
            if len(t.elements) != 1:
                self.error(block.file, t.span, "type elements are single names")
                continue
            e = t.elements[0]
            if e in elements:
                self.error(block.file, t.span, f"duplicate element '{e}' in type '{a.symbol}'")
                continue
            elements.append(e)
        if not elements:
            self.error(block.file, a.span, f"type '{a.symbol}' needs at least one element")
            return
        info.domains[a.symbol] = elements

    def _assign_pred(
        self,
        block: ast.StructureBlock,
        vocab: VocabInfo,
        info: StructureInfo,
        a: ast.Assignment,
        parts_seen: dict[str, set[str]],
    ) -> None:
        sig = vocab.predicates[a.symbol]
        self.used_symbols.add((vocab.name, a.symbol))
        parts = parts_seen.setdefault(a.symbol, set())

        if isinstance(a, ast.SimpleAssign):
            if sig.arg_types or not isinstance(a.value, bool):
                self.error(
                    block.file, a.span, f"predicate '{a.symbol}' takes a '{{ ... }}' tuple set"
                )
                return
            part = "total"
        else:
            part = a.part
            if sig.arg_types == [] :
                self.error(
                    block.file,
                    a.span,
                    f"use '{a.symbol} = true' or '{a.symbol} = false' for 0-ary predicates",
                )
                return
        if part in parts or "total" in parts or (part == "total" and parts):
            self.error(block.file, a.span, f"conflicting assignment for '{a.symbol}'")
            return
        parts.add(part)

        if isinstance(a, ast.SimpleAssign):
            info.atoms[(a.symbol, ())] = bool(a.value)
            return

        listed: set[tuple[str, ...]] = set()
        ok = True
        for t in a.tuples:
            if len(t.elements) != len(sig.arg_types):
                self.error(
                    block.file,
                    t.span,
                    f"'{a.symbol}' takes {len(sig.arg_types)} element(s) per tuple, got {len(t.elements)}",
                )
                ok = False
                continue
            for e, ty in zip(t.elements, sig.arg_types):
                domain = info.domains.get(ty, [])
                if e not in domain:
                    self.error(block.file, t.span, f"unknown element '{e}' for type {ty}")
                    ok = False
            if ok:
                listed.add(tuple(t.elements))
        if not ok:
            return

        if part == "total":
            domains = [info.domains.get(ty, []) for ty in sig.arg_types]
            for combo in _product(domains):
                info.atoms[(a.symbol, combo)] = combo in listed
        else:
            value = part == "ct"
            for combo in sorted(listed):
                key = (a.symbol, combo)
                if key in info.atoms and info.atoms[key] != value:
                    self.error(
                        block.file,
                        a.span,
                        f"'{a.symbol}({', '.join(combo)})' is listed as both certainly true and certainly false",
                    )
                    continue
                info.atoms[key] = value

    def _assign_const(
        self, block: ast.StructureBlock, vocab: VocabInfo, info: StructureInfo, a: ast.Assignment
    ) -> None:
        sig = vocab.constants[a.symbol]
        self.used_symbols.add((vocab.name, a.symbol))
        if isinstance(a, ast.SetAssign):
            self.error(block.file, a.span, f"constant '{a.symbol}' takes a single element")
            return
        if isinstance(a.value, bool):
            self.error(block.file, a.span, f"constant '{a.symbol}' takes an element of {sig.type}")
            return
        if a.symbol in info.constants:
            self.error(block.file, a.span, f"duplicate interpretation of constant '{a.symbol}'")
            return
        domain = info.domains.get(sig.type, [])
        if a.value not in domain:
            self.error(block.file, a.span, f"unknown element '{a.value}' for type {sig.type}")
            return
        info.constants[a.symbol] = a.value

    # -- procedures and warnings -----------------------------------------

    def collect_procedures(self) -> None:
        for block in self.program.blocks:
            if not isinstance(block, ast.ProcedureBlock):
                continue
            if block.name in self.procedures:
                self.error(block.file, block.name_span, f"duplicate procedure '{block.name}'")
                continue
            self.procedures[block.name] = block

    def warn_unused(self) -> None:
        for vocab in self.vocabs.values():
            referenced_types: set[str] = set()
            for sig in vocab.predicates.values():
                referenced_types.update(sig.arg_types)
            for sig in vocab.constants.values():
                referenced_types.add(sig.type)
            file = vocab.block.file
            for t in vocab.types:
                if t not in referenced_types:
                    self.warning(file, vocab.type_spans[t], f"type '{t}' is declared but never used")
            for sig in vocab.predicates.values():
                if (vocab.name, sig.name) not in self.used_symbols:
                    self.warning(
                        file, sig.span, f"predicate '{sig.name}' is declared but never used"
                    )
            for sig in vocab.constants.values():
                if (vocab.name, sig.name) not in self.used_symbols:
                    self.warning(
                        file, sig.span, f"constant '{sig.name}' is declared but never used"
                    )


def _product(domains: list[list[str]]) -> "itertools.product":
    return itertools.product(*domains)


def resolve(program: ast.Program) -> ResolveResult:
    """Resolve names and types. Returns a TypedProgram, or diagnostics."""
    r = _Resolver(program)
    r.collect_vocabularies()
    r.resolve_theories()
    r.resolve_structures()
    r.collect_procedures()
    r.warn_unused()
    diagnostics = sort_diagnostics(r.diagnostics)
    if any(d.severity == Severity.ERROR for d in diagnostics):
        return ResolveResult(None, diagnostics)
    typed = TypedProgram(program, r.vocabs, r.theories, r.structures, r.procedures)
    return ResolveResult(typed, diagnostics)

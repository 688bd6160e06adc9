"""Grounding: quantifier expansion and clausification with provenance.

Each sentence is instantiated once per assignment of its leading
universal variables; that (sentence, substitution) pair is the unit of
provenance, and the unsat core reports exactly these units. Ground
formulas become clauses through polarity-aware auxiliary definitions,
so clause count stays linear in formula size. Every theory clause is
guarded by a per-instantiation selector literal, which lets the MUS
search enable and disable instantiations through assumptions without
rebuilding the problem.

Variable numbering, in order: one variable per ground predicate atom,
then one per (constant, element) choice, then the instantiation
selectors and auxiliary definitions. The first group ("real" atoms) is
what model enumeration and propagation range over.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..lang import ast
from ..lang.resolver import TheoryInfo
from ..limits import LimitExceeded, ResourceLimits
from .structure import EngineError, PartialStructure

# Clause provenance tags.
PROV_STRUCTURE = ("structure",)
PROV_AXIOM = ("axiom",)
PROV_ENUM = ("enum",)


def prov_theory(inst_index: int) -> tuple:
    return ("theory", inst_index)


@dataclass
class Instantiation:
    index: int
    sentence: ast.Sentence
    theory_name: str
    subst: tuple[tuple[str, str], ...]
    selector: int

    @property
    def subst_text(self) -> str:
        if not self.subst:
            return "{}"
        return ", ".join(f"{v} = {e}" for v, e in self.subst)


class GroundProblem:
    def __init__(self, theory: TheoryInfo, structure: PartialStructure, atom_budget: int):
        self.theory = theory
        self.structure = structure
        self.vocab = structure.vocab
        self.atom_budget = atom_budget
        self.nvars = 0
        self.var_key: list[tuple | None] = [None]  # 1-based
        self.key_var: dict[tuple, int] = {}
        self.real_count = 0
        self.clauses: list[list[int]] = []
        self.provenance: list[tuple] = []
        self.instantiations: list[Instantiation] = []
        self.input_fixed: set[int] = set()

    def _new_var(self, key: tuple | None) -> int:
        if self.nvars + 1 > self.atom_budget:
            raise LimitExceeded("ground_atoms")
        self.nvars += 1
        self.var_key.append(key)
        if key is not None:
            self.key_var[key] = self.nvars
        return self.nvars

    def new_aux(self) -> int:
        return self._new_var(None)

    def atom_var(self, pred: str, args: tuple[str, ...]) -> int:
        return self.key_var[("atom", pred, args)]

    def const_var(self, const: str, elem: str) -> int:
        return self.key_var[("const", const, elem)]

    def add_clause(self, lits: list[int], prov: tuple) -> None:
        self.clauses.append(lits)
        self.provenance.append(prov)

    def all_selectors(self) -> list[int]:
        return [inst.selector for inst in self.instantiations]


def ground(
    theory: TheoryInfo,
    structure: PartialStructure,
    limits: ResourceLimits | None = None,
    tick: Callable[[], None] | None = None,
) -> GroundProblem:
    limits = limits or ResourceLimits()
    vocab = structure.vocab
    if theory.vocab.name != vocab.name:
        raise EngineError(
            f"theory '{theory.name}' and structure '{structure.name}' use different vocabularies"
        )
    for t in vocab.types:
        if not structure.domains.get(t):
            raise EngineError(f"type '{t}' has no domain in structure '{structure.name}'")

    # Predicate atoms plus constant choice variables; checked before
    # anything is materialized.
    real = 0
    for sig in vocab.predicates.values():
        count = 1
        for ty in sig.arg_types:
            count *= len(structure.domains[ty])
        real += count
    for sig in vocab.constants.values():
        real += len(structure.domains[sig.type])
    if real > limits.ground_atoms_max:
        raise LimitExceeded("ground_atoms")

    problem = GroundProblem(theory, structure, limits.ground_atoms_max)

    for pred, sig in vocab.predicates.items():
        for combo in itertools.product(*(structure.domains[ty] for ty in sig.arg_types)):
            problem._new_var(("atom", pred, combo))
    for const, sig in vocab.constants.items():
        for elem in structure.domains[sig.type]:
            problem._new_var(("const", const, elem))
    problem.real_count = problem.nvars

    # Certain facts from the structure.
    for (pred, args), value in sorted(structure.atoms.items()):
        var = problem.atom_var(pred, args)
        problem.add_clause([var if value else -var], PROV_STRUCTURE)
        problem.input_fixed.add(var)
    for const, elem in sorted(structure.constants.items()):
        problem.add_clause([problem.const_var(const, elem)], PROV_STRUCTURE)
    for const, sig in vocab.constants.items():
        choices = [problem.const_var(const, e) for e in structure.domains[sig.type]]
        problem.add_clause(list(choices), PROV_AXIOM)
        for a, b in itertools.combinations(choices, 2):
            problem.add_clause([-a, -b], PROV_AXIOM)
        if const in structure.constants:
            problem.input_fixed.update(abs(v) for v in choices)

    grounder = _Grounder(problem, tick)
    for sentence in theory.sentences:
        grounder.ground_sentence(sentence)
    return problem


class _Grounder:
    def __init__(self, problem: GroundProblem, tick: Callable[[], None] | None):
        self.problem = problem
        self.structure = problem.structure
        self.vocab = problem.vocab
        self.tick = tick

    def ground_sentence(self, sentence: ast.Sentence) -> None:
        outer_vars, body = _leading_universals(sentence.formula)
        domains = [self.structure.domains[v.vtype] for v in outer_vars]
        names = [v.name for v in outer_vars]
        for combo in itertools.product(*domains):
            if self.tick is not None:
                self.tick()
            env = dict(zip(names, combo))
            index = len(self.problem.instantiations)
            selector = self.problem.new_aux()
            inst = Instantiation(
                index, sentence, self.problem.theory.name, tuple(zip(names, combo)), selector
            )
            self.problem.instantiations.append(inst)
            tree = _simplify(self._build(body, env))
            self._emit(tree, selector, index)

    # -- formula to ground tree -----------------------------------------

    def _build(self, f: ast.Formula, env: dict[str, str]):
        if isinstance(f, ast.Quant):
            return self._build_quant(f, 0, env)
        if isinstance(f, ast.Not):
            return ("not", self._build(f.body, env))
        if isinstance(f, ast.BinOp):
            left = self._build(f.left, env)
            right = self._build(f.right, env)
            if f.op == "and":
                return ("and", [left, right])
            if f.op == "or":
                return ("or", [left, right])
            if f.op == "implies":
                return ("or", [("not", left), right])
            return ("eqv", left, right)
        if isinstance(f, ast.Atom):
            args = [self._term_value(t, env) for t in f.args]
            return self._atom_tree(f.pred, args)
        if isinstance(f, ast.Eq):
            return self._eq_tree(f, env)
        if isinstance(f, ast.BoolConst):
            return ("const", f.value)
        raise TypeError(f"unknown formula node {f!r}")

    def _build_quant(self, q: ast.Quant, var_index: int, env: dict[str, str]):
        if var_index == len(q.vars):
            return self._build(q.body, env)
        v = q.vars[var_index]
        saved = env.get(v.name)  # the name may shadow an outer binding
        children = []
        for elem in self.structure.domains[v.vtype]:
            env[v.name] = elem
            children.append(self._build_quant(q, var_index + 1, env))
        if saved is None:
            env.pop(v.name, None)
        else:
            env[v.name] = saved
        return ("and" if q.kind == "forall" else "or", children)

    def _term_value(self, term: ast.Term, env: dict[str, str]):
        """An element name, or an uninterpreted-constant marker."""
        if not term.is_const:
            return env[term.name]
        fixed = self.structure.constants.get(term.name)
        if fixed is not None:
            return fixed
        return ("uconst", term.name)

    def _atom_tree(self, pred: str, args: list):
        for i, a in enumerate(args):
            if isinstance(a, tuple):  # uninterpreted constant: branch on its value
                const = a[1]
                ctype = self.vocab.constants[const].type
                options = []
                for elem in self.structure.domains[ctype]:
                    sub = self._atom_tree(pred, args[:i] + [elem] + args[i + 1 :])
                    options.append(
                        ("and", [("lit", self.problem.const_var(const, elem)), sub])
                    )
                return ("or", options)
        return ("lit", self.problem.atom_var(pred, tuple(args)))

    def _eq_tree(self, f: ast.Eq, env: dict[str, str]):
        left = self._term_value(f.left, env)
        right = self._term_value(f.right, env)
        if isinstance(left, tuple) and isinstance(right, tuple):
            ctype = self.vocab.constants[left[1]].type
            options = []
            for elem in self.structure.domains[ctype]:
                options.append(
                    (
                        "and",
                        [
                            ("lit", self.problem.const_var(left[1], elem)),
                            ("lit", self.problem.const_var(right[1], elem)),
                        ],
                    )
                )
            return ("or", options)
        if isinstance(left, tuple):
            left, right = right, left
        if isinstance(right, tuple):
            const = right[1]
            ctype = self.vocab.constants[const].type
            if left not in self.structure.domains[ctype]:
                return ("const", False)
            return ("lit", self.problem.const_var(const, left))
        return ("const", left == right)

    # -- clause emission --------------------------------------------------

    def _emit(self, tree, selector: int, inst_index: int) -> None:
        prov = prov_theory(inst_index)
        if tree[0] == "const":
            if not tree[1]:
                self.problem.add_clause([-selector], prov)
            return
        direct = _direct_clauses(tree)
        if direct is not None:
            for clause in direct:
                self.problem.add_clause([-selector] + clause, prov)
            return
        root = self._encode(tree, 1, prov)
        self.problem.add_clause([-selector, root], prov)

    def _encode(self, tree, polarity: int, prov: tuple) -> int:
        tag = tree[0]
        if tag == "lit":
            return tree[1]
        if tag == "not":
            return -self._encode(tree[1], -polarity, prov)
        add = self.problem.add_clause
        if tag in ("and", "or"):
            lits = [self._encode(k, polarity, prov) for k in tree[1]]
            a = self.problem.new_aux()
            if tag == "and":
                if polarity >= 0:
                    for l in lits:
                        add([-a, l], prov)
                if polarity <= 0:
                    add([a] + [-l for l in lits], prov)
            else:
                if polarity >= 0:
                    add([-a] + lits, prov)
                if polarity <= 0:
                    for l in lits:
                        add([a, -l], prov)
            return a
        if tag == "eqv":
            la = self._encode(tree[1], 0, prov)
            lb = self._encode(tree[2], 0, prov)
            a = self.problem.new_aux()
            if polarity >= 0:
                add([-a, -la, lb], prov)
                add([-a, la, -lb], prov)
            if polarity <= 0:
                add([a, la, lb], prov)
                add([a, -la, -lb], prov)
            return a
        raise TypeError(f"unexpected ground node {tag}")


def _leading_universals(f: ast.Formula) -> tuple[list[ast.QuantVar], ast.Formula]:
    vars: list[ast.QuantVar] = []
    while isinstance(f, ast.Quant) and f.kind == "forall":
        vars.extend(f.vars)
        f = f.body
    return vars, f


def _simplify(tree):
    """Fold boolean constants and flatten nested and/or."""
    tag = tree[0]
    if tag in ("lit", "const"):
        return tree
    if tag == "not":
        sub = _simplify(tree[1])
        if sub[0] == "const":
            return ("const", not sub[1])
        if sub[0] == "lit":
            return ("lit", -sub[1])
        if sub[0] == "not":
            return sub[1]
        return ("not", sub)
    if tag in ("and", "or"):
        absorbing = tag == "or"  # a true child absorbs an or, false absorbs an and
        kids = []
        for k in tree[1]:
            s = _simplify(k)
            if s[0] == "const":
                if s[1] == absorbing:
                    return ("const", absorbing)
                continue
            if s[0] == tag:
                kids.extend(s[1])
            else:
                kids.append(s)
        if not kids:
            return ("const", not absorbing)
        if len(kids) == 1:
            return kids[0]
        return (tag, kids)
    if tag == "eqv":
        a = _simplify(tree[1])
        b = _simplify(tree[2])
        if a[0] == "const":
            return b if a[1] else _simplify(("not", b))
        if b[0] == "const":
            return a if b[1] else _simplify(("not", a))
        return ("eqv", a, b)
    raise TypeError(f"unexpected ground node {tag}")


def _direct_clauses(tree) -> list[list[int]] | None:
    """Clauses for trees that are already (conjunctions of) disjunctions
    of literals; None when auxiliary encoding is needed."""

    def as_clause(t) -> list[int] | None:
        if t[0] == "lit":
            return [t[1]]
        if t[0] == "or" and all(k[0] == "lit" for k in t[1]):
            return [k[1] for k in t[1]]
        return None

    if tree[0] == "and":
        clauses = []
        for k in tree[1]:
            c = as_clause(k)
            if c is None:
                return None
            clauses.append(c)
        return clauses
    single = as_clause(tree)
    return [single] if single is not None else None

"""The three inferences: model expansion, propagation, unsat core.

All three share the same ground problem and differ only in how they
drive the solver. ``evaluate`` is the independent check: direct
recursive truth evaluation with no SAT machinery, used by tests to
validate everything else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..lang import ast
from ..lang.diagnostics import Range
from ..lang.resolver import TheoryInfo
from ..limits import ResourceLimits
from .ground import GroundProblem, ground
from .sat import solver_for
from .structure import EngineError, PartialStructure


class Inconsistent(EngineError):
    """The theory has no model over the given structure."""


class Satisfiable(EngineError):
    """Unsat core was requested but the problem is satisfiable."""


@dataclass(frozen=True)
class CoreItem:
    sentence_index: int
    range: Range
    substitution: str
    file: str


@dataclass
class UnsatCore:
    theory_name: str
    items: list[CoreItem]


def _model_structure(problem: GroundProblem, model: list[int]) -> PartialStructure:
    atoms: dict[tuple[str, tuple[str, ...]], bool] = {}
    constants: dict[str, str] = {}
    for var in range(1, problem.real_count + 1):
        key = problem.var_key[var]
        if key[0] == "atom":
            atoms[(key[1], key[2])] = model[var] == 1
        elif model[var] == 1:
            constants[key[1]] = key[2]
    return PartialStructure(
        problem.vocab,
        {t: list(es) for t, es in problem.structure.domains.items()},
        atoms,
        constants,
        problem.structure.name,
    )


def modelexpand(
    theory: TheoryInfo,
    structure: PartialStructure,
    max_models: int = 1,
    limits: ResourceLimits | None = None,
    tick: Callable[[], None] | None = None,
) -> list[PartialStructure]:
    """Total structures expanding the input and satisfying the theory.

    Enumerates deterministically via blocking clauses over the real
    atoms; returns fewer than ``max_models`` only when exhausted.
    """
    if max_models < 1:
        raise ValueError("max_models must be at least 1")
    limits = limits or ResourceLimits()
    problem = ground(theory, structure, limits, tick)
    solver = solver_for(problem)
    assignments = solver.solve_all(
        problem.all_selectors(),
        real_count=problem.real_count,
        max_models=max_models,
        max_decisions=limits.max_decisions,
        tick=tick,
    )
    return [_model_structure(problem, model) for model in assignments]


def propagate(
    theory: TheoryInfo,
    structure: PartialStructure,
    limits: ResourceLimits | None = None,
    tick: Callable[[], None] | None = None,
) -> PartialStructure:
    """Refine the structure with every entailed atom value.

    The result is the three-valued intersection of all total models:
    an unknown atom becomes true (false) exactly when its negation
    (assertion) is unsatisfiable. Raises Inconsistent when no model
    exists.
    """
    limits = limits or ResourceLimits()
    problem = ground(theory, structure, limits, tick)
    solver = solver_for(problem)
    assumptions = problem.all_selectors()
    res = solver.solve(assumptions, limits.max_decisions, tick)
    if not res.sat:
        raise Inconsistent(
            f"theory '{theory.name}' is inconsistent with structure '{structure.name}'"
        )

    # Candidate backbone = first model; each disagreeing model prunes it.
    candidate: dict[int, int] = {
        var: res.model[var]
        for var in range(1, problem.real_count + 1)
        if var not in problem.input_fixed
    }
    fixed: dict[int, int] = {}
    for var in range(1, problem.real_count + 1):
        if var not in candidate:
            continue
        value = candidate[var]
        res2 = solver.solve(
            assumptions + [-var if value == 1 else var], limits.max_decisions, tick
        )
        if not res2.sat:
            fixed[var] = value
            continue
        for w in list(candidate):
            if res2.model[w] != candidate[w]:
                del candidate[w]

    refined = structure.copy()
    for var, value in fixed.items():
        key = problem.var_key[var]
        if key[0] == "atom":
            refined.atoms[(key[1], key[2])] = value == 1
        elif value == 1:
            refined.constants[key[1]] = key[2]
    return refined


def unsatcore(
    theory: TheoryInfo,
    structure: PartialStructure,
    limits: ResourceLimits | None = None,
    tick: Callable[[], None] | None = None,
) -> UnsatCore:
    """Subset-minimal set of sentence instantiations that is
    inconsistent with the structure.

    Deletion-based: walk the instantiations in creation order and drop
    each one whose removal keeps the problem unsatisfiable. Structure
    facts are never candidates. Raises Satisfiable when the problem
    has a model.
    """
    limits = limits or ResourceLimits()
    problem = ground(theory, structure, limits, tick)
    solver = solver_for(problem)
    selectors = problem.all_selectors()
    res = solver.solve(selectors, limits.max_decisions, tick)
    if res.sat:
        raise Satisfiable(
            f"theory '{theory.name}' is satisfiable over structure '{structure.name}'"
        )

    working = set(range(len(problem.instantiations)))
    for i in range(len(problem.instantiations)):
        if i not in working:
            continue
        trial = working - {i}
        assumptions = [
            sel if j in trial else -sel for j, sel in enumerate(selectors)
        ]
        if tick is not None:
            tick()
        res = solver.solve(assumptions, limits.max_decisions, tick)
        if not res.sat:
            working = trial

    items = [
        CoreItem(
            inst.sentence.index,
            inst.sentence.span,
            inst.subst_text,
            inst.sentence.file,
        )
        for inst in problem.instantiations
        if inst.index in working
    ]
    if not items:
        raise EngineError("empty core: structure facts alone are inconsistent")
    return UnsatCore(theory.name, items)


def evaluate(
    sentence: ast.Sentence | ast.Formula,
    structure: PartialStructure,
    env: dict[str, str] | None = None,
) -> bool:
    """Direct recursive truth evaluation over a total structure."""
    formula = sentence.formula if isinstance(sentence, ast.Sentence) else sentence
    return _eval(formula, structure, dict(env or {}))


def _eval(f: ast.Formula, s: PartialStructure, env: dict[str, str]) -> bool:
    if isinstance(f, ast.Quant):
        domains = [s.domains[v.vtype] for v in f.vars]
        names = [v.name for v in f.vars]
        saved = {n: env.get(n) for n in names}  # inner vars may shadow outer ones
        want_all = f.kind == "forall"
        result = want_all
        for combo in itertools.product(*domains):
            for n, e in zip(names, combo):
                env[n] = e
            if _eval(f.body, s, env) != want_all:
                result = not want_all
                break
        for n in names:
            if saved[n] is None:
                env.pop(n, None)
            else:
                env[n] = saved[n]
        return result
    if isinstance(f, ast.Not):
        return not _eval(f.body, s, env)
    if isinstance(f, ast.BinOp):
        if f.op == "and":
            return _eval(f.left, s, env) and _eval(f.right, s, env)
        if f.op == "or":
            return _eval(f.left, s, env) or _eval(f.right, s, env)
        if f.op == "implies":
            return (not _eval(f.left, s, env)) or _eval(f.right, s, env)
        return _eval(f.left, s, env) == _eval(f.right, s, env)
    if isinstance(f, ast.Atom):
        args = tuple(_term_elem(t, s, env) for t in f.args)
        value = s.value(f.pred, args)
        if value is None:
            raise EngineError(
                f"atom {f.pred}({', '.join(args)}) has no value; evaluate needs a total structure"
            )
        return value
    if isinstance(f, ast.Eq):
        return _term_elem(f.left, s, env) == _term_elem(f.right, s, env)
    if isinstance(f, ast.BoolConst):
        return f.value
    raise TypeError(f"unknown formula node {f!r}")


def _term_elem(term: ast.Term, s: PartialStructure, env: dict[str, str]) -> str:
    if not term.is_const:
        return env[term.name]
    value = s.constants.get(term.name)
    if value is None:
        raise EngineError(
            f"constant '{term.name}' has no value; evaluate needs a total structure"
        )
    return value

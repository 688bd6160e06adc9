"""Complete DPLL search with two-watched-literal unit propagation.

Deterministic by construction: the branch variable is always the
lowest-numbered unassigned one (variable numbering is atom creation
order), tried true first. No clause learning or restarts; problems
here are desk scale.

The ``Solver`` keeps clauses and watches across calls, so callers that
solve the same problem repeatedly under different assumptions (model
enumeration, backbone computation, core minimization) pay only for the
search itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..limits import LimitExceeded, ResourceLimits
from .ground import GroundProblem

_TICK_EVERY = 256


@dataclass
class SolveResult:
    sat: bool
    model: list[int] | None  # model[v] is 1 or -1; index 0 unused


class Solver:
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.clauses: list[list[int]] = []
        self.watches: dict[int, list[int]] = {}
        self.units: list[int] = []
        self.has_empty = False

    def add_clause(self, lits: list[int]) -> None:
        clause = list(dict.fromkeys(lits))  # watches need distinct literals
        if any(-lit in clause[i + 1 :] for i, lit in enumerate(clause)):
            return  # tautology
        if not clause:
            self.has_empty = True
            return
        if len(clause) == 1:
            self.units.append(clause[0])
            return
        ci = len(self.clauses)
        self.clauses.append(clause)
        self.watches.setdefault(clause[0], []).append(ci)
        self.watches.setdefault(clause[1], []).append(ci)

    def solve(
        self,
        assumptions: Iterable[int] = (),
        max_decisions: int = 1_000_000,
        tick: Callable[[], None] | None = None,
    ) -> SolveResult:
        models = self.solve_all(assumptions, 0, 1, max_decisions, tick)
        if models:
            return SolveResult(True, models[0])
        return SolveResult(False, None)

    def solve_all(
        self,
        assumptions: Iterable[int] = (),
        real_count: int = 0,
        max_models: int = 1,
        max_decisions: int = 1_000_000,
        tick: Callable[[], None] | None = None,
    ) -> list[list[int]]:
        """Up to ``max_models`` total assignments, distinct on the first
        ``real_count`` variables.

        One chronological DFS, lowest variable first. Real variables
        come first in the numbering, so on each found model the search
        unwinds past the auxiliary levels without flipping them: every
        distinct real-variable assignment is visited exactly once, and
        auxiliary encodings never duplicate models.
        """
        if self.has_empty:
            return []

        clauses = self.clauses
        watches = self.watches
        assign = [0] * (self.nvars + 1)
        trail: list[tuple[int, int]] = []  # (literal, flag) 0=forced 1=decision 2=flipped
        models: list[list[int]] = []
        qhead = 0
        decisions = 0
        steps = 0

        def lit_value(lit: int) -> int:
            v = assign[lit if lit > 0 else -lit]
            if v == 0:
                return 0
            return v if lit > 0 else -v

        def enqueue(lit: int, flag: int) -> bool:
            v = lit_value(lit)
            if v == 1:
                return True
            if v == -1:
                return False
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append((lit, flag))
            return True

        def propagate() -> bool:
            nonlocal qhead, steps
            while qhead < len(trail):
                lit = trail[qhead][0]
                qhead += 1
                steps += 1
                if tick is not None and steps % _TICK_EVERY == 0:
                    tick()
                falsified = -lit
                watching = watches.get(falsified)
                if not watching:
                    continue
                kept: list[int] = []
                failed = False
                for pos, ci in enumerate(watching):
                    clause = clauses[ci]
                    if clause[0] == falsified:
                        clause[0], clause[1] = clause[1], clause[0]
                    # clause[1] is the falsified watch now
                    first = clause[0]
                    if lit_value(first) == 1:
                        kept.append(ci)
                        continue
                    moved = False
                    for k in range(2, len(clause)):
                        if lit_value(clause[k]) != -1:
                            clause[1], clause[k] = clause[k], clause[1]
                            watches.setdefault(clause[1], []).append(ci)
                            moved = True
                            break
                    if moved:
                        continue
                    kept.append(ci)
                    if not enqueue(first, 0):
                        # conflict: keep the remaining watchers intact
                        kept.extend(watching[pos + 1 :])
                        failed = True
                        break
                watches[falsified] = kept
                if failed:
                    return False
            return True

        for lit in self.units:
            if not enqueue(lit, 0):
                return []
        for lit in assumptions:
            if not enqueue(lit, 0):
                return []

        search_from = 1  # lowest variable that might be unassigned
        while True:
            if not propagate():
                while trail:
                    lit, flag = trail.pop()
                    var = abs(lit)
                    assign[var] = 0
                    search_from = min(search_from, var)
                    if flag == 1:
                        enqueue(-lit, 2)
                        qhead = len(trail) - 1
                        break
                else:
                    return models
                continue

            var = 0
            for v in range(search_from, self.nvars + 1):
                if assign[v] == 0:
                    var = v
                    break
            if var == 0:
                models.append(list(assign))
                if len(models) >= max_models:
                    return models
                # Unwind to the deepest undone decision on a real
                # variable; auxiliary branches would only repeat the
                # same real assignment.
                while trail:
                    lit, flag = trail.pop()
                    decided = abs(lit)
                    assign[decided] = 0
                    search_from = min(search_from, decided)
                    if flag == 1 and decided <= real_count:
                        enqueue(-lit, 2)
                        qhead = len(trail) - 1
                        break
                else:
                    return models
                continue
            search_from = var

            decisions += 1
            if decisions > max_decisions:
                raise LimitExceeded("decisions")
            if tick is not None:
                tick()
            enqueue(var, 1)


def solver_for(problem: GroundProblem) -> Solver:
    s = Solver(problem.nvars)
    for clause in problem.clauses:
        s.add_clause(clause)
    return s


def solve(
    problem: GroundProblem,
    assumptions: Iterable[int] = (),
    limits: ResourceLimits | None = None,
    tick: Callable[[], None] | None = None,
) -> SolveResult:
    """One-shot solve of a ground problem under assumption literals."""
    limits = limits or ResourceLimits()
    return solver_for(problem).solve(assumptions, limits.max_decisions, tick)


def solve_clauses(
    nvars: int,
    clauses: list[list[int]],
    max_decisions: int = 1_000_000,
    tick: Callable[[], None] | None = None,
) -> SolveResult:
    s = Solver(nvars)
    for clause in clauses:
        s.add_clause(clause)
    return s.solve((), max_decisions, tick)

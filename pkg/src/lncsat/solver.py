"""A small conflict-driven clause-learning SAT solver and model helpers.

Sized for the n <= 4 instances (64 variables, a few thousand clauses).
Heuristics are fixed: VSIDS activities seeded with occurrence counts, ties
broken by the lowest variable, phase saving with False as the first phase,
Luby restarts.  An optional seed adds a small random perturbation to the
initial activities.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .dynamics import BooleanMap
from .encoder import CnfFormula

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"

Assignment = Mapping[int, bool]


class SolverIntegrityError(RuntimeError):
    """A claimed model does not satisfy the formula."""


@dataclass
class SolveResult:
    verdict: str
    model: Optional[dict[int, bool]] = None
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def is_sat(self) -> bool:
        return self.verdict == SAT

    @property
    def is_unsat(self) -> bool:
        return self.verdict == UNSAT


def evaluate(formula: CnfFormula | Iterable[Sequence[int]], a: Assignment) -> bool:
    """True iff every clause has a true literal under ``a``."""
    n_vars = getattr(formula, "n_vars", None)
    if n_vars is not None:
        missing = [v for v in range(1, n_vars + 1) if v not in a]
        if missing:
            raise ValueError(f"assignment misses {len(missing)} variables, e.g. {missing[0]}")
    for clause in formula:
        for lit in clause:
            try:
                value = a[abs(lit)]
            except KeyError:
                raise ValueError(f"assignment misses variable {abs(lit)}") from None
            if value == (lit > 0):
                break
        else:
            return False
    return True


def decode_model(a: Assignment, n: int) -> BooleanMap:
    """Rebuild the map with f_i(x) = a[n*int(x) + i]."""
    expected = n << n
    keys = set(a)
    if keys != set(range(1, expected + 1)):
        raise ValueError(f"model must assign exactly variables 1..{expected}, got {len(keys)} variables")
    table = []
    for x in range(1 << n):
        y = 0
        for i in range(1, n + 1):
            if a[n * x + i]:
                y |= 1 << (i - 1)
        table.append(y)
    return BooleanMap(n, tuple(table))


def luby(i: int) -> int:
    """i-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class CDCLSolver:
    """Two-watched-literal CDCL with first-UIP learning and non-chronological backjumps."""

    restart_base = 64
    var_decay = 0.95

    def __init__(self, n_vars: int, clauses: Iterable[Sequence[int]], seed: Optional[int] = None):
        self.n_vars = n_vars
        # literal l is stored at index 2*|l| + (l < 0)
        self.values = [-1] * (2 * n_vars + 2)  # per literal: 1 true, 0 false, -1 unassigned
        self.level = [0] * (n_vars + 1)
        self.reason: list[Optional[list[int]]] = [None] * (n_vars + 1)
        self.phase = [False] * (n_vars + 1)
        self.activity = [0.0] * (n_vars + 1)
        self.var_inc = 1.0
        self.watches: list[list[list[int]]] = [[] for _ in range(2 * n_vars + 2)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.stats = {"decisions": 0, "conflicts": 0, "propagations": 0, "restarts": 0, "learned": 0}
        self.trivially_unsat = False

        units = []
        for raw in clauses:
            lits = sorted(set(raw), key=lambda l: (abs(l), l < 0))
            if any(-l in lits for l in lits if l > 0):
                continue  # tautology
            for l in lits:
                if not 1 <= abs(l) <= n_vars:
                    raise ValueError(f"literal {l} outside 1..{n_vars}")
                self.activity[abs(l)] += 1.0
            if not lits:
                self.trivially_unsat = True
            elif len(lits) == 1:
                units.append(lits[0])
            else:
                self._attach(lits)
                self.clauses.append(lits)
        if seed is not None:
            rng = random.Random(seed)
            for v in range(1, n_vars + 1):
                self.activity[v] += rng.random() * 0.5
        for l in units:
            val = self._lit_value(l)
            if val == 0:
                self.trivially_unsat = True
            elif val == -1:
                self._enqueue(l, None)

    @staticmethod
    def _idx(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _lit_value(self, lit: int) -> int:
        return self.values[2 * lit if lit > 0 else -2 * lit + 1]

    def _attach(self, clause: list[int]) -> None:
        self.watches[self._idx(-clause[0])].append(clause)
        self.watches[self._idx(-clause[1])].append(clause)

    def _enqueue(self, lit: int, reason: Optional[list[int]]) -> None:
        v = abs(lit)
        values = self.values
        if lit > 0:
            values[2 * v], values[2 * v + 1] = 1, 0
        else:
            values[2 * v], values[2 * v + 1] = 0, 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> Optional[list[int]]:
        """Unit propagation; returns a conflicting clause or None."""
        values = self.values
        watches = self.watches
        trail = self.trail
        props = 0
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            props += 1
            false_lit = -p
            # clauses watching -p are indexed under p
            ws = watches[2 * p if p > 0 else -2 * p + 1]
            i = j = 0
            n_ws = len(ws)
            while i < n_ws:
                clause = ws[i]
                i += 1
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], false_lit
                first = clause[0]
                if values[2 * first if first > 0 else -2 * first + 1] == 1:
                    ws[j] = clause
                    j += 1
                    continue
                for k in range(2, len(clause)):
                    lit = clause[k]
                    if values[2 * lit if lit > 0 else -2 * lit + 1] != 0:
                        clause[1], clause[k] = lit, false_lit
                        watches[2 * lit + 1 if lit > 0 else -2 * lit].append(clause)
                        break
                else:
                    ws[j] = clause
                    j += 1
                    if values[2 * first if first > 0 else -2 * first + 1] == 0:
                        while i < n_ws:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.stats["propagations"] += props
                        return clause
                    self._enqueue(first, clause)
            del ws[j:]
        self.stats["propagations"] += props
        return None

    def _analyze(self, conflict: list[int]) -> tuple[list[int], int]:
        level = self.level
        reason = self.reason
        current = len(self.trail_lim)
        seen = bytearray(self.n_vars + 1)
        learnt = [0]
        counter = 0
        p = None
        idx = len(self.trail) - 1
        clause = conflict
        while True:
            for q in clause:
                if p is not None and q == p:
                    continue
                v = abs(q)
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    self._bump(v)
                    if level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen[abs(p)] = 0
            counter -= 1
            if counter == 0:
                break
            clause = reason[abs(p)]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        # second watch goes to the literal with the highest level
        best = max(range(1, len(learnt)), key=lambda t: level[abs(learnt[t])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n_vars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100

    def _backtrack(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        values = self.values
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = abs(lit)
            values[2 * v] = values[2 * v + 1] = -1
            self.reason[v] = None
            self.phase[v] = lit > 0
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start

    def _pick_branch(self) -> int:
        values = self.values
        activity = self.activity
        best_v, best_a = 0, -1.0
        for v in range(1, self.n_vars + 1):
            if values[2 * v] == -1 and activity[v] > best_a:
                best_v, best_a = v, activity[v]
        if best_v == 0:
            return 0
        return best_v if self.phase[best_v] else -best_v

    def solve(self, max_conflicts: Optional[int] = None, time_limit: Optional[float] = None) -> SolveResult:
        if self.trivially_unsat or self._propagate() is not None:
            return SolveResult(UNSAT, None, dict(self.stats))
        deadline = None if time_limit is None else time.monotonic() + time_limit
        restart_idx = 1
        budget = self.restart_base * luby(restart_idx)
        stats = self.stats
        while True:
            conflict = self._propagate()
            if conflict is not None:
                stats["conflicts"] += 1
                if not self.trail_lim:
                    return SolveResult(UNSAT, None, dict(stats))
                learnt, back = self._analyze(conflict)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    self.learnts.append(learnt)
                    stats["learned"] += 1
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= self.var_decay
                budget -= 1
                if max_conflicts is not None and stats["conflicts"] >= max_conflicts:
                    return SolveResult(UNKNOWN, None, dict(stats))
                if deadline is not None and stats["conflicts"] % 64 == 0 and time.monotonic() > deadline:
                    return SolveResult(UNKNOWN, None, dict(stats))
                continue
            if budget <= 0:
                stats["restarts"] += 1
                restart_idx += 1
                budget = self.restart_base * luby(restart_idx)
                self._backtrack(0)
                continue
            lit = self._pick_branch()
            if lit == 0:
                model = {v: self.values[2 * v] == 1 for v in range(1, self.n_vars + 1)}
                return SolveResult(SAT, model, dict(stats))
            stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)


def solve(
    formula: CnfFormula,
    max_conflicts: Optional[int] = None,
    time_limit: Optional[float] = None,
    seed: Optional[int] = None,
) -> SolveResult:
    """Decide ``formula``; SAT models are checked against every clause before returning.

    Returns verdict ``UNKNOWN`` when the conflict or time budget runs out.
    """
    clauses = formula.clauses
    result = CDCLSolver(formula.n_vars, clauses, seed=seed).solve(max_conflicts, time_limit)
    if result.is_sat and not evaluate(clauses, result.model):
        raise SolverIntegrityError("internal solver produced a model that violates the formula")
    return result

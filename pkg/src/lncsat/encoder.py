"""CNF encodings of regulatory-circuit and dynamics constraints over the variables f_i(x).

Variable ``n * int(x) + i`` stands for f_i(x), so f_1(0) is variable 1 and the
map is fully described by the ``n * 2**n`` variables.  Literals are signed ints
and clauses are tuples of literals, as in DIMACS.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence, TextIO

from .dynamics import BooleanMap, check_dimension, check_state, count_acyclic_paths
from .regulatory import circuit_edges, enumerate_circuits

Clause = tuple  # tuple[int, ...]

FIXED_POINTS = "fixed-points"
CIRCUITS = "circuits"
CONDITION = "condition"
UNIT = "unit"


class DimacsError(ValueError):
    pass


def var_index(i: int, x: int, n: int) -> int:
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range 1..{n}")
    check_state(x, n)
    return n * x + i


def var_of(v: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`var_index`: variable id -> (i, x)."""
    x, r = divmod(v - 1, n)
    return r + 1, x


def num_vars(n: int) -> int:
    return n << n


def not_fixed_clause(x: int, n: int) -> Clause:
    """Some coordinate of f(x) differs from x: f_i(x) for x_i = 0, not f_i(x) for x_i = 1."""
    base = n * x
    return tuple(-(base + i) if (x >> (i - 1)) & 1 else base + i for i in range(1, n + 1))


def no_fixed_points_clauses(n: int) -> list[Clause]:
    check_dimension(n)
    return [not_fixed_clause(x, n) for x in range(1 << n)]


def interaction_vars(x: int, j: int, i: int, n: int) -> tuple[int, int]:
    """Variables for f_i at x with x_j forced to 0 and to 1."""
    mask = 1 << (j - 1)
    return n * (x & ~mask) + i, n * (x | mask) + i


def negative_circuit_cube(x: int, c: Sequence[int], negative_edges: Iterable[int], n: int) -> tuple[int, ...]:
    """Conjunction of literals saying the edges of ``c`` carry the given signs at ``x``.

    ``negative_edges`` are positions (0-based, in circuit order) of the edges
    taken to be negative; there must be an odd number of them.  A negative
    edge j -> i contributes ``not f_i(x[j:=1]) and f_i(x[j:=0])``, a positive
    one ``f_i(x[j:=1]) and not f_i(x[j:=0])``.
    """
    neg = set(negative_edges)
    edges = circuit_edges(tuple(c))
    if not neg <= set(range(len(edges))):
        raise ValueError(f"edge positions {sorted(neg)} out of range for circuit {tuple(c)}")
    if len(neg) % 2 == 0:
        raise ValueError("a negative circuit needs an odd number of negative edges")
    cube = []
    for pos, (j, i) in enumerate(edges):
        v0, v1 = interaction_vars(x, j, i, n)
        if pos in neg:
            cube += (-v1, v0)
        else:
            cube += (v1, -v0)
    return tuple(cube)


def odd_splits(m: int) -> Iterator[tuple[int, ...]]:
    """Odd-size subsets of edge positions 0..m-1, by size then lexicographically."""
    for size in range(1, m + 1, 2):
        yield from combinations(range(m), size)


def local_circuit_blocks(n: int) -> Iterator[tuple[tuple[int, tuple[int, ...]], list[Clause]]]:
    """For each state x and circuit c: the clauses forbidding c to be negative at x."""
    check_dimension(n)
    circuits = enumerate_circuits(n)
    splits = {m: list(odd_splits(m)) for m in range(1, n + 1)}
    for x in range(1 << n):
        for c in circuits:
            block = []
            for neg in splits[len(c)]:
                block.append(tuple(-lit for lit in negative_circuit_cube(x, c, neg, n)))
            yield (x, c), block


def no_local_negative_circuits_clauses(n: int) -> list[Clause]:
    return [cl for _, block in local_circuit_blocks(n) for cl in block]


def step_literal(x: int, y: int, n: int) -> int:
    """Literal that holds iff the hypercube edge x -> y is an asynchronous transition."""
    diff = x ^ y
    if diff == 0 or diff & (diff - 1):
        raise ValueError("states must differ in exactly one coordinate")
    j = diff.bit_length()
    v = n * x + j
    return v if y & diff else -v


def path_cube(pi: Sequence[int], n: int) -> tuple[int, ...]:
    """One literal per step of ``pi``, true together iff ``pi`` is a path of the dynamics."""
    if len(pi) < 2:
        raise ValueError("path must have length >= 1")
    if len(set(pi)) != len(pi):
        raise ValueError("path must be acyclic")
    return tuple(step_literal(pi[t], pi[t + 1], n) for t in range(len(pi) - 1))


def condition_clause(pi: Sequence[int], n: int) -> Clause:
    """If ``pi`` is a path of the dynamics then its endpoint is not fixed."""
    return tuple(-lit for lit in path_cube(pi, n)) + not_fixed_clause(pi[-1], n)


class ConditionClauses:
    """The path clauses for all acyclic paths of length 1..k from the origin.

    Iterating regenerates the clauses with a depth-first walk, so even the
    2.6 million clauses of the n=5, k=11 instance are never all in memory.
    The order matches :func:`~lncsat.dynamics.acyclic_paths_from`.
    """

    def __init__(self, n: int, k: int):
        check_dimension(n)
        if k < 1:
            raise ValueError("path length bound k must be >= 1")
        self.n = n
        self.k = k
        self._len = None

    def __len__(self) -> int:
        if self._len is None:
            self._len = count_acyclic_paths(0, self.k, self.n)
        return self._len

    def __iter__(self) -> Iterator[Clause]:
        n, k = self.n, self.k
        nf = [not_fixed_clause(x, n) for x in range(1 << n)]
        visited = bytearray(1 << n)
        visited[0] = 1
        path = [0]
        negated = []  # negated step literals along the current path
        next_coord = [0]
        while next_coord:
            j = next_coord[-1]
            if j == n or len(path) > k:
                visited[path.pop()] = 0
                next_coord.pop()
                if negated:
                    negated.pop()
                continue
            next_coord[-1] = j + 1
            v = path[-1]
            y = v ^ (1 << j)
            if visited[y]:
                continue
            visited[y] = 1
            path.append(y)
            next_coord.append(0)
            var = n * v + j + 1
            negated.append(-var if y > v else var)
            yield tuple(negated) + nf[y]


def condition_clauses(n: int, k: int) -> list[Clause]:
    return list(ConditionClauses(n, k))


@dataclass
class ClauseBlock:
    tag: str
    clauses: Sequence[Clause]

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass
class CnfFormula:
    n_vars: int
    blocks: list[ClauseBlock] = field(default_factory=list)

    @classmethod
    def from_clauses(cls, n_vars: int, clauses: Iterable[Sequence[int]], tag: str = "clauses") -> "CnfFormula":
        return cls(n_vars, [ClauseBlock(tag, [tuple(c) for c in clauses])])

    @property
    def n_clauses(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __iter__(self) -> Iterator[Clause]:
        for block in self.blocks:
            yield from block.clauses

    @property
    def clauses(self) -> list[Clause]:
        return list(self)

    def block_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for b in self.blocks:
            counts[b.tag] = counts.get(b.tag, 0) + len(b)
        return counts

    def block(self, tag: str) -> ClauseBlock:
        for b in self.blocks:
            if b.tag == tag:
                return b
        raise KeyError(tag)


def build_q2(n: int) -> CnfFormula:
    """No fixed point anywhere, no local negative circuit, f_1(0) = 1."""
    return CnfFormula(
        num_vars(n),
        [
            ClauseBlock(FIXED_POINTS, no_fixed_points_clauses(n)),
            ClauseBlock(CIRCUITS, no_local_negative_circuits_clauses(n)),
            ClauseBlock(UNIT, [(1,)]),
        ],
    )


def build_q1(n: int, k: int) -> CnfFormula:
    """No fixed point within k steps of the origin, no local negative circuit, f_1(0) = 1.

    The path block is lazy; use ``formula.clauses`` to materialize it.
    """
    return CnfFormula(
        num_vars(n),
        [
            ClauseBlock(CONDITION, ConditionClauses(n, k)),
            ClauseBlock(CIRCUITS, no_local_negative_circuits_clauses(n)),
            ClauseBlock(UNIT, [(1,)]),
        ],
    )


def map_assignment(f: BooleanMap) -> dict[int, bool]:
    """The assignment that sets variable n*int(x)+i to f_i(x)."""
    n = f.n
    return {n * x + i: bool((fx >> (i - 1)) & 1) for x, fx in enumerate(f.table) for i in range(1, n + 1)}


def write_dimacs(formula: CnfFormula, sink: TextIO, comments: bool = False) -> None:
    """Write ``p cnf`` header and one zero-terminated clause per line.

    With ``comments``, ``c block`` lines giving each block's clause range are
    written before the header.
    """
    if comments:
        start = 1
        for b in formula.blocks:
            count = len(b)
            sink.write(f"c block {b.tag} {count} clauses {start}-{start + count - 1}\n")
            start += count
    sink.write(f"p cnf {formula.n_vars} {formula.n_clauses}\n")
    buf = []
    for clause in formula:
        buf.append(" ".join(map(str, clause)) + " 0\n")
        if len(buf) >= 65536:
            sink.write("".join(buf))
            buf.clear()
    sink.write("".join(buf))


def dimacs_string(formula: CnfFormula, comments: bool = False) -> str:
    out = io.StringIO()
    write_dimacs(formula, out, comments=comments)
    return out.getvalue()


def save_dimacs(formula: CnfFormula, path, comments: bool = False) -> None:
    with open(path, "w") as fh:
        write_dimacs(formula, fh, comments=comments)


def parse_dimacs(source: str | TextIO) -> CnfFormula:
    """Read DIMACS CNF text; clauses may span lines, ``c`` lines are skipped."""
    text = source if isinstance(source, str) else source.read()
    n_vars = n_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if n_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                n_vars, n_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if n_vars < 0 or n_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if n_vars is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n_vars:
                raise DimacsError(f"line {lineno}: literal {lit} exceeds {n_vars} variables")
            else:
                current.append(lit)
    if n_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != n_clauses:
        raise DimacsError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula.from_clauses(n_vars, clauses)


def load_dimacs(path) -> CnfFormula:
    with open(path) as fh:
        return parse_dimacs(fh)

"""Boolean maps on the n-cube and their asynchronous dynamics.

States are plain ints.  Coordinate ``i`` (1-based) lives in bit ``i - 1``, so
the all-zero state is ``0`` and ``int(x) = sum(x_i * 2**(i-1))``.  Bit strings
are written ``x_1 x_2 ... x_n`` from left to right, which is the reverse of the
usual binary rendering of the integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

MAX_DIMENSION = 16

HypercubePath = tuple  # tuple[int, ...] of states, consecutive ones at distance 1


def check_dimension(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be an int in 1..{MAX_DIMENSION}, got {n!r}")


def check_state(x: int, n: int) -> None:
    if not isinstance(x, int) or not 0 <= x < (1 << n):
        raise ValueError(f"state {x!r} is not valid in dimension {n}")


def bit(x: int, i: int) -> int:
    """Value of coordinate ``i`` (1-based) of state ``x``."""
    return (x >> (i - 1)) & 1


def flip(x: int, i: int) -> int:
    """The state obtained from ``x`` by negating coordinate ``i``."""
    return x ^ (1 << (i - 1))


def hamming(x: int, y: int) -> int:
    return bin(x ^ y).count("1")


def state_from_bits(bits: str | Sequence[int]) -> int:
    """``"011"`` or ``(0, 1, 1)`` -> state with x_1=0, x_2=1, x_3=1."""
    x = 0
    for pos, b in enumerate(bits):
        b = int(b)
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        x |= b << pos
    return x


def state_to_bits(x: int, n: int) -> str:
    return "".join(str((x >> pos) & 1) for pos in range(n))


def state_to_tuple(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> pos) & 1 for pos in range(n))


@dataclass(frozen=True)
class BooleanMap:
    """A map f from {0,1}^n to itself, stored as its truth table.

    ``table[x]`` is the image ``f(x)`` of state ``x``.
    """

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        check_dimension(self.n)
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << self.n:
            raise ValueError(f"truth table needs {1 << self.n} entries, got {len(table)}")
        for y in table:
            check_state(y, self.n)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __len__(self) -> int:
        return len(self.table)

    def component(self, i: int, x: int) -> int:
        """f_i(x)."""
        return (self.table[x] >> (i - 1)) & 1

    def states(self) -> range:
        return range(1 << self.n)

    @classmethod
    def from_function(cls, n: int, func: Callable[..., Sequence[int]]) -> "BooleanMap":
        """Tabulate ``func(x_1, ..., x_n) -> (f_1, ..., f_n)``.

        Components may be written as integer polynomials, as is common for
        Boolean networks; each must evaluate to 0 or 1.
        """
        check_dimension(n)
        table = []
        for x in range(1 << n):
            image = func(*state_to_tuple(x, n))
            if len(image) != n:
                raise ValueError(f"image of {state_to_bits(x, n)} has {len(image)} components")
            table.append(state_from_bits(image))
        return cls(n, tuple(table))

    @classmethod
    def identity(cls, n: int) -> "BooleanMap":
        check_dimension(n)
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "BooleanMap":
        check_dimension(n)
        return cls(n, (value,) * (1 << n))

    @classmethod
    def negation(cls, n: int) -> "BooleanMap":
        check_dimension(n)
        mask = (1 << n) - 1
        return cls(n, tuple(x ^ mask for x in range(1 << n)))

    def to_text(self) -> str:
        lines = [str(self.n)]
        for x, y in enumerate(self.table):
            lines.append(f"{state_to_bits(x, self.n)} {state_to_bits(y, self.n)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BooleanMap":
        """Parse the truth-table text format (see :meth:`to_text`).

        Blank lines and lines starting with ``#`` are skipped.
        """
        rows = [ln.strip() for ln in text.splitlines()]
        rows = [ln for ln in rows if ln and not ln.startswith("#")]
        if not rows:
            raise ValueError("empty map file")
        try:
            n = int(rows[0])
        except ValueError:
            raise ValueError(f"first line must be the dimension, got {rows[0]!r}") from None
        check_dimension(n)
        body = rows[1:]
        if len(body) != 1 << n:
            raise ValueError(f"expected {1 << n} table rows for n={n}, got {len(body)}")
        table = []
        for x, row in enumerate(body):
            fields = row.split()
            if len(fields) != 2 or any(len(s) != n for s in fields):
                raise ValueError(f"malformed row {row!r}")
            if state_from_bits(fields[0]) != x:
                raise ValueError(f"rows must be ordered by state; expected {state_to_bits(x, n)}, got {fields[0]}")
            table.append(state_from_bits(fields[1]))
        return cls(n, tuple(table))


def read_map(path) -> BooleanMap:
    with open(path) as fh:
        return BooleanMap.from_text(fh.read())


def write_map(f: BooleanMap, path) -> None:
    with open(path, "w") as fh:
        fh.write(f.to_text())


def _successor_list(f: BooleanMap, x: int) -> list[int]:
    diff = f.table[x] ^ x
    out = []
    while diff:
        low = diff & -diff
        out.append(x ^ low)
        diff ^= low
    return out


def async_successors(f: BooleanMap, x: int) -> frozenset[int]:
    """States reachable from ``x`` in one asynchronous step."""
    check_state(x, f.n)
    return frozenset(_successor_list(f, x))


def is_fixed(f: BooleanMap, x: int) -> bool:
    return f.table[x] == x


def fixed_points(f: BooleanMap) -> frozenset[int]:
    return frozenset(x for x, y in enumerate(f.table) if x == y)


def transitions(f: BooleanMap) -> Iterator[tuple[int, int]]:
    """All edges of the asynchronous state transition graph, sources ascending."""
    for x in f.states():
        for y in _successor_list(f, x):
            yield x, y


@dataclass(frozen=True)
class Attractor:
    states: frozenset[int]

    @property
    def kind(self) -> str:
        return "fixed-point" if len(self.states) == 1 else "cyclic"

    @property
    def is_cyclic(self) -> bool:
        return len(self.states) > 1

    def __len__(self) -> int:
        return len(self.states)


def strongly_connected_components(n_nodes: int, succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse topological order."""
    index = [-1] * n_nodes
    low = [0] * n_nodes
    on_stack = [False] * n_nodes
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n_nodes):
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def attractors(f: BooleanMap) -> list[Attractor]:
    """Terminal strongly connected components of the asynchronous dynamics.

    Sorted by smallest member state.
    """
    succ = [_successor_list(f, x) for x in f.states()]
    comp_of = [0] * len(succ)
    sccs = strongly_connected_components(len(succ), succ.__getitem__)
    for cid, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = cid
    result = []
    for cid, comp in enumerate(sccs):
        if all(comp_of[w] == cid for v in comp for w in succ[v]):
            result.append(Attractor(frozenset(comp)))
    result.sort(key=lambda a: min(a.states))
    return result


def acyclic_paths_from(x: int, k: int, n: int) -> Iterator[HypercubePath]:
    """Every acyclic path of length 1..k in the n-cube that starts at ``x``.

    Depth-first, trying coordinates in ascending order; a path is yielded
    before its extensions.
    """
    check_dimension(n)
    check_state(x, n)
    if k < 1:
        raise ValueError("path length bound k must be >= 1")
    visited = bytearray(1 << n)
    visited[x] = 1
    path = [x]
    next_coord = [0]
    while next_coord:
        j = next_coord[-1]
        if j == n or len(path) > k:
            visited[path.pop()] = 0
            next_coord.pop()
            continue
        next_coord[-1] = j + 1
        y = path[-1] ^ (1 << j)
        if visited[y]:
            continue
        visited[y] = 1
        path.append(y)
        next_coord.append(0)
        yield tuple(path)


def count_acyclic_paths(x: int, k: int, n: int) -> int:
    """Number of paths :func:`acyclic_paths_from` yields, without building them."""
    check_dimension(n)
    check_state(x, n)
    if k < 1:
        raise ValueError("path length bound k must be >= 1")
    visited = bytearray(1 << n)
    bits = [1 << j for j in range(n)]

    def walk(v: int, budget: int) -> int:
        total = 0
        for b in bits:
            y = v ^ b
            if not visited[y]:
                total += 1
                if budget > 1:
                    visited[y] = 1
                    total += walk(y, budget - 1)
                    visited[y] = 0
        return total

    visited[x] = 1
    return walk(x, k)


def distances_from(f: BooleanMap, x: int, limit: int | None = None) -> dict[int, int]:
    """Breadth-first distances in the asynchronous dynamics, optionally capped at ``limit``."""
    dist = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if limit is not None and d >= limit:
            continue
        for w in _successor_list(f, v):
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def reachable_non_fixed_within(f: BooleanMap, x: int, k: int) -> bool:
    """True iff no fixed point lies within ``k`` asynchronous steps of ``x``.

    ``x`` itself counts (distance 0), so a fixed ``x`` gives False.  Any walk of
    length <= k contains an acyclic path of length <= k to the same endpoint,
    so breadth-first search decides the acyclic-path condition exactly.
    """
    check_state(x, f.n)
    if k < 0:
        raise ValueError("k must be >= 0")
    return not any(f.table[y] == y for y in distances_from(f, x, k))


def distance_to_fixed_point(f: BooleanMap, x: int) -> int | None:
    """Smallest number of asynchronous steps from ``x`` to a fixed point, or None."""
    dist = distances_from(f, x)
    found = [d for y, d in dist.items() if f.table[y] == y]
    return min(found) if found else None

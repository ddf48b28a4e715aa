"""Local and global regulatory graphs, circuits and their signs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Optional

from .dynamics import BooleanMap, check_dimension, check_state

Circuit = tuple  # tuple[int, ...], 1-based nodes, smallest node first
SignedEdge = tuple  # (source, target, sign)


@dataclass(frozen=True)
class SignedLocalGraph:
    """Regulatory graph of a map at one state: at most one signed edge per (source, target)."""

    n: int
    signs: dict  # (j, i) -> +1 | -1

    @property
    def edges(self) -> frozenset:
        return frozenset((j, i, s) for (j, i), s in self.signs.items())

    def sign(self, j: int, i: int) -> Optional[int]:
        return self.signs.get((j, i))

    def __hash__(self):
        return hash((self.n, self.edges))


@dataclass(frozen=True)
class GlobalGraph:
    n: int
    edges: frozenset  # of (source, target, sign); opposite-signed parallel edges allowed


def local_graph(f: BooleanMap, x: int) -> SignedLocalGraph:
    """G_f(x): edge j -> i whenever flipping x_j changes f_i.

    The sign is (xbar_j - x_j) * (f_i(xbar) - f_i(x)), i.e. +1 when f_i moves
    in the same direction as x_j.
    """
    check_state(x, f.n)
    fx = f.table[x]
    signs = {}
    for j in range(1, f.n + 1):
        y = x ^ (1 << (j - 1))
        fy = f.table[y]
        changed = fx ^ fy
        up = 1 if (y >> (j - 1)) & 1 else -1
        i = 1
        while changed:
            if changed & 1:
                signs[(j, i)] = up if (fy >> (i - 1)) & 1 else -up
            changed >>= 1
            i += 1
    return SignedLocalGraph(f.n, signs)


def global_graph(f: BooleanMap) -> GlobalGraph:
    edges = set()
    for x in f.states():
        edges |= local_graph(f, x).edges
    return GlobalGraph(f.n, frozenset(edges))


def format_edges(edges: Iterable[SignedEdge]) -> str:
    """One ``j -> i +`` / ``j -> i -`` line per edge, sorted by (source, target, sign)."""
    lines = [f"{j} -> {i} {'+' if s > 0 else '-'}" for j, i, s in sorted(edges)]
    return "\n".join(lines) + ("\n" if lines else "")


def circuit_count(n: int) -> int:
    """sum over k of C(n, k) (k-1)!: elementary circuits of the complete digraph with loops."""
    return sum(comb(n, k) * factorial(k - 1) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def enumerate_circuits(n: int) -> tuple[Circuit, ...]:
    """All elementary circuits on {1..n}, each rotated so its smallest node comes first.

    Ordered by length, then lexicographically.
    """
    check_dimension(n)
    out = []
    for m in range(1, n + 1):
        for support in combinations(range(1, n + 1), m):
            head, rest = support[0], support[1:]
            for tail in permutations(rest):
                out.append((head,) + tail)
    out.sort(key=lambda c: (len(c), c))
    return tuple(out)


def circuit_edges(c: Circuit) -> list[tuple[int, int]]:
    m = len(c)
    return [(c[t], c[(t + 1) % m]) for t in range(m)]


def canonical_circuit(nodes: Iterable[int]) -> Circuit:
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes) or not nodes:
        raise ValueError(f"not an elementary circuit: {nodes}")
    r = nodes.index(min(nodes))
    return nodes[r:] + nodes[:r]


def circuit_sign(g: SignedLocalGraph, c: Circuit) -> Optional[int]:
    """Product of edge signs along ``c``, or None if some edge of ``c`` is missing."""
    sign = 1
    for j, i in circuit_edges(c):
        s = g.signs.get((j, i))
        if s is None:
            return None
        sign *= s
    return sign


def find_local_negative_circuit(f: BooleanMap) -> Optional[tuple[int, Circuit]]:
    """First (state, circuit) with a negative circuit in the local graph, scanning states ascending."""
    circuits = enumerate_circuits(f.n)
    for x in f.states():
        g = local_graph(f, x)
        if not g.signs:
            continue
        for c in circuits:
            if circuit_sign(g, c) == -1:
                return x, c
    return None


def has_local_negative_circuit(f: BooleanMap) -> bool:
    return find_local_negative_circuit(f) is not None


def find_local_circuit(f: BooleanMap) -> Optional[tuple[int, Circuit]]:
    """First (state, circuit) present in a local graph, whatever its sign."""
    circuits = enumerate_circuits(f.n)
    for x in f.states():
        g = local_graph(f, x)
        for c in circuits:
            if circuit_sign(g, c) is not None:
                return x, c
    return None


def local_negative_circuits(f: BooleanMap) -> list[tuple[int, Circuit]]:
    circuits = enumerate_circuits(f.n)
    out = []
    for x in f.states():
        g = local_graph(f, x)
        out.extend((x, c) for c in circuits if circuit_sign(g, c) == -1)
    return out

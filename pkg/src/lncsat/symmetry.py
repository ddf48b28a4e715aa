"""Automorphisms of the n-cube and conjugation of Boolean maps by them.

An automorphism is U = psi_I o sigma: first permute coordinates
(sigma(x)_i = x_{sigma^-1(i)}, so the value at coordinate j moves to
coordinate sigma(j)), then negate the coordinates in I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dynamics import BooleanMap, check_dimension, check_state
from .regulatory import canonical_circuit


@dataclass(frozen=True)
class HypercubeAutomorphism:
    """``sigma[j - 1]`` is sigma(j); ``flips`` is the set I (1-based)."""

    sigma: tuple[int, ...]
    flips: frozenset[int] = frozenset()
    sigma_inv: tuple[int, ...] = field(init=False, repr=False, compare=False)
    flip_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sigma = tuple(self.sigma)
        n = len(sigma)
        check_dimension(n)
        if sorted(sigma) != list(range(1, n + 1)):
            raise ValueError(f"sigma is not a permutation of 1..{n}: {sigma}")
        flips = frozenset(self.flips)
        if not flips <= set(range(1, n + 1)):
            raise ValueError(f"flip set {sorted(flips)} not within 1..{n}")
        inv = [0] * n
        for j, s in enumerate(sigma, start=1):
            inv[s - 1] = j
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "flips", flips)
        object.__setattr__(self, "sigma_inv", tuple(inv))
        object.__setattr__(self, "flip_mask", sum(1 << (i - 1) for i in flips))

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> "HypercubeAutomorphism":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int, flips: Iterable[int] = ()) -> "HypercubeAutomorphism":
        sigma = list(range(1, n + 1))
        sigma[a - 1], sigma[b - 1] = b, a
        return cls(tuple(sigma), frozenset(flips))

    def permute(self, x: int) -> int:
        """sigma(x)."""
        y = 0
        for j, s in enumerate(self.sigma):
            if (x >> j) & 1:
                y |= 1 << (s - 1)
        return y

    def __call__(self, x: int) -> int:
        return self.permute(x) ^ self.flip_mask

    def inverse(self) -> "HypercubeAutomorphism":
        # (psi_I o sigma)^-1 = sigma^-1 o psi_I = psi_{sigma^-1(I)} o sigma^-1
        return HypercubeAutomorphism(self.sigma_inv, frozenset(self.sigma_inv[i - 1] for i in self.flips))

    def compose(self, other: "HypercubeAutomorphism") -> "HypercubeAutomorphism":
        """self o other."""
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        sigma = tuple(self.sigma[other.sigma[j] - 1] for j in range(self.n))
        flips = {self.sigma[i - 1] for i in other.flips} ^ set(self.flips)
        return HypercubeAutomorphism(sigma, frozenset(flips))


def apply(U: HypercubeAutomorphism, x: int) -> int:
    check_state(x, U.n)
    return U(x)


def conjugate(f: BooleanMap, U: HypercubeAutomorphism) -> BooleanMap:
    """Truth table of U o f o U^-1."""
    if U.n != f.n:
        raise ValueError(f"automorphism of dimension {U.n} applied to map of dimension {f.n}")
    table = [0] * len(f.table)
    for x, fx in enumerate(f.table):
        # f^U(U(x)) = U(f(x))
        table[U(x)] = U(fx)
    return BooleanMap(f.n, tuple(table))


def normalize_to_origin(f: BooleanMap, x: int) -> tuple[HypercubeAutomorphism, BooleanMap]:
    """Move a non-fixed state ``x`` to the origin so that f_1(0) = 1 afterwards.

    sigma swaps 1 with the smallest coordinate j that is unstable at ``x`` and
    I collects the coordinates where sigma(x) is 1.
    """
    check_state(x, f.n)
    unstable = f.table[x] ^ x
    if not unstable:
        raise ValueError(f"state {x} is a fixed point; nothing to normalize")
    j = (unstable & -unstable).bit_length()
    sigma = HypercubeAutomorphism.transposition(f.n, 1, j)
    sx = sigma.permute(x)
    flips = frozenset(i for i in range(1, f.n + 1) if (sx >> (i - 1)) & 1)
    U = HypercubeAutomorphism(sigma.sigma, flips)
    return U, conjugate(f, U)


def map_circuit(U: HypercubeAutomorphism, c: Sequence[int]) -> tuple[int, ...]:
    """Image sigma(C) of a circuit, rotated to canonical form."""
    return canonical_circuit(U.sigma[j - 1] for j in c)

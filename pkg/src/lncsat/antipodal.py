"""Maps with an antipodal attractive cycle and no local negative circuit (n >= 6).

The cycle a^1 = 0, a^2 = e^1, a^3 = e^1 + e^2, ... runs through the all-ones
state and back.  Around it sit three families of helper states

    b^i = a^i + e^{i+1},  c^i = b^i + e^{i+2},  d^i = b^i + e^{i+3},

where "+" flips a coordinate, indices of a, b, c, d wrap modulo 2n and
indices of e wrap modulo n.  The map sends a^i to a^{i+1}, b^i to a^{i+2},
c^i and d^i to a^{i+4} and fixes everything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .dynamics import BooleanMap, attractors, check_dimension, _successor_list
from .regulatory import Circuit, find_local_negative_circuit


def e(i: int, n: int) -> int:
    """Unit state e^i with i taken modulo n (1-based)."""
    return 1 << ((i - 1) % n)


def a(i: int, n: int) -> int:
    """Cycle state a^i with i taken modulo 2n (1-based)."""
    i = (i - 1) % (2 * n) + 1
    if i <= n:
        return (1 << (i - 1)) - 1
    full = (1 << n) - 1
    return full ^ a(i - n, n)


def b(i: int, n: int) -> int:
    return a(i, n) ^ e(i + 1, n)


def c(i: int, n: int) -> int:
    return b(i, n) ^ e(i + 2, n)


def d(i: int, n: int) -> int:
    return b(i, n) ^ e(i + 3, n)


def antipodal_cycle(n: int) -> list[int]:
    """The 2n states a^1, ..., a^{2n} in cycle order (a^{2n} steps back to a^1)."""
    check_dimension(n)
    return [a(i, n) for i in range(1, 2 * n + 1)]


def special_states(n: int) -> dict[str, list[int]]:
    """The four families, each as a list indexed 0..2n-1 for superscripts 1..2n."""
    return {name: [fam(i, n) for i in range(1, 2 * n + 1)] for name, fam in zip("abcd", (a, b, c, d))}


def antipodal_boxes(n: int) -> list[tuple[frozenset[int], int]]:
    """Groups {b^i, c^{i-2}, d^{i-2}} sharing the synchronous image a^{i+2}, for i = 1..2n."""
    return [(frozenset((b(i, n), c(i - 2, n), d(i - 2, n))), a(i + 2, n)) for i in range(1, 2 * n + 1)]


class ConstructionError(ValueError):
    pass


def construct_antipodal_map(n: int) -> BooleanMap:
    """Build the map; refuses n < 6 and any n where the 8n special states collide."""
    check_dimension(n)
    if n < 6:
        raise ConstructionError(f"construction needs n >= 6, got n={n}")
    images: dict[int, int] = {}
    rules = ((a, 1), (b, 2), (c, 4), (d, 4))
    for i in range(1, 2 * n + 1):
        for fam, shift in rules:
            x = fam(i, n)
            if x in images:
                raise ConstructionError(f"special states collide at {x} (n={n}); map is not well defined")
            images[x] = a(i + shift, n)
    table = tuple(images.get(x, x) for x in range(1 << n))
    return BooleanMap(n, table)


@dataclass
class AntipodalReport:
    n: int
    well_defined: bool
    special_count: int = 0
    cycle_trap: bool = False
    cycle_witness: Optional[tuple[int, frozenset]] = None  # cycle state with wrong successors
    cycle_is_attractor: bool = False
    negative_circuit: Optional[tuple[int, Circuit]] = None
    map: Optional[BooleanMap] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.well_defined and self.cycle_trap and self.cycle_is_attractor and self.negative_circuit is None

    def lines(self) -> list[str]:
        from .dynamics import state_to_bits

        out = [f"n = {self.n}"]
        out.append(f"well defined: {'yes' if self.well_defined else 'NO'} ({self.special_count} special states)")
        if not self.well_defined:
            return out
        if self.cycle_trap:
            out.append(f"antipodal cycle: every a^i has the single successor a^(i+1) ({2 * self.n} states)")
        else:
            x, succ = self.cycle_witness
            shown = ", ".join(state_to_bits(y, self.n) for y in sorted(succ))
            out.append(f"antipodal cycle: FAILS at {state_to_bits(x, self.n)} (successors: {shown or 'none'})")
        out.append(f"cyclic attractor of size {2 * self.n} on the cycle: {'yes' if self.cycle_is_attractor else 'NO'}")
        if self.negative_circuit is None:
            out.append("local negative circuits: none")
        else:
            x, circ = self.negative_circuit
            out.append(f"local negative circuit: {circ} at state {state_to_bits(x, self.n)}")
        out.append("result: " + ("PASS" if self.passed else "FAIL"))
        return out


def verify_antipodal(n: int) -> AntipodalReport:
    """Check well-definedness, the cycle as an attractor, and absence of local negative circuits."""
    try:
        f = construct_antipodal_map(n)
    except ConstructionError:
        return AntipodalReport(n, well_defined=False)
    report = AntipodalReport(n, well_defined=True, special_count=8 * n, map=f)
    cycle = antipodal_cycle(n)
    report.cycle_trap = True
    for pos, x in enumerate(cycle):
        succ = frozenset(_successor_list(f, x))
        if succ != {cycle[(pos + 1) % len(cycle)]}:
            report.cycle_trap = False
            report.cycle_witness = (x, succ)
            break
    report.cycle_is_attractor = any(att.states == frozenset(cycle) for att in attractors(f))
    report.negative_circuit = find_local_negative_circuit(f)
    return report

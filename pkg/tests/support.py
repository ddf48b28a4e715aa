"""Shared fixtures data and independent oracles for the test suite."""

import itertools
import random

import numpy as np

from lncsat.dynamics import BooleanMap, acyclic_paths_from, fixed_points, reachable_non_fixed_within, transitions
from lncsat.encoder import CnfFormula, condition_clauses, local_circuit_blocks, no_fixed_points_clauses, path_cube
from lncsat.regulatory import circuit_sign, enumerate_circuits, local_graph
from lncsat.symmetry import HypercubeAutomorphism, map_circuit

# Small reference maps, written as integer polynomials in x_1..x_n.
# CONJ_G is the conjugate of CONJ_F under CONJ_U; the others are named after
# the distance from the origin to the nearest fixed point.
CONJ_F = BooleanMap.from_function(2, lambda x1, x2: (x2, x1 * (1 - x2)))
CONJ_G = BooleanMap.from_function(2, lambda x1, x2: ((1 - x1) * (1 - x2), 1 - x1))
CONJ_U = HypercubeAutomorphism((2, 1), frozenset({2}))
TWO_STEP = BooleanMap.from_function(2, lambda x1, x2: (1, x1))
FOUR_STEP = BooleanMap.from_function(
    3,
    lambda x1, x2, x3: (
        1 - x2 * x3,
        x3,
        x1 * x2 * x3 - x1 * x2 - x1 * x3 - x2 * x3 + x1 + x2 + x3,
    ),
)
THREE_STEP = BooleanMap.from_function(2, lambda x1, x2: (1 - x2, x1 + x2 - x1 * x2))
FIVE_STEP = BooleanMap.from_function(
    3, lambda x1, x2, x3: (1 - x3, x1, x1 * x2 * x3 - x1 * x3 - x2 * x3 + x2 + x3)
)


def all_maps(n):
    size = 1 << n
    for table in itertools.product(range(size), repeat=size):
        yield BooleanMap(n, table)


def random_maps(n, count, seed):
    rng = random.Random(seed)
    size = 1 << n
    for _ in range(count):
        yield BooleanMap(n, tuple(rng.randrange(size) for _ in range(size)))


def mixed_maps(n, count, seed):
    """Random maps where each component keeps its input value with a random bias.

    Varying the bias gives maps with many fixed points as well as maps with
    long dynamics paths, so every encoded predicate is seen both true and false.
    """
    rng = random.Random(seed)
    size = 1 << n
    for _ in range(count):
        keep = rng.choice((0.0, 0.5, 0.7, 0.85))
        table = []
        for x in range(size):
            y = x
            for j in range(n):
                if rng.random() >= keep:
                    y = (y & ~(1 << j)) | (rng.getrandbits(1) << j)
            table.append(y)
        yield BooleanMap(n, tuple(table))


def random_automorphism(n, rng):
    sigma = list(range(1, n + 1))
    rng.shuffle(sigma)
    flips = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
    return HypercubeAutomorphism(tuple(sigma), flips)


def all_automorphisms(n):
    for sigma in itertools.permutations(range(1, n + 1)):
        for r in range(n + 1):
            for flips in itertools.combinations(range(1, n + 1), r):
                yield HypercubeAutomorphism(sigma, frozenset(flips))


def brute_force_sat(n_vars, clauses):
    """Satisfiability by evaluating every assignment at once, bit-parallel.

    Column ``v`` is a 2**n_vars-bit integer whose bit ``a`` is the value of
    variable ``v`` under assignment ``a``.
    """
    size = 1 << n_vars
    full = (1 << size) - 1
    cols = {}
    for v in range(1, n_vars + 1):
        half = 1 << (v - 1)
        pattern = ((1 << half) - 1) << half  # one period: 2**(v-1) zeros then ones
        width = half << 1
        while width < size:
            pattern |= pattern << width
            width <<= 1
        cols[v] = pattern
    alive = full
    for clause in clauses:
        sat = 0
        for lit in clause:
            col = cols[abs(lit)]
            sat |= col if lit > 0 else full ^ col
        alive &= sat
        if not alive:
            return False
    return alive != 0


def random_cnf(rng, max_vars=20):
    """Random CNF mixing clause widths 1-4 over a random clause/variable ratio."""
    n_vars = rng.randint(1, max_vars)
    ratio = rng.uniform(1.0, 6.0)
    clauses = []
    for _ in range(max(1, int(ratio * n_vars))):
        width = rng.choice((1, 2, 3, 3, 3, 4)) if n_vars >= 4 else rng.randint(1, n_vars)
        vs = rng.sample(range(1, n_vars + 1), min(width, n_vars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula.from_clauses(n_vars, clauses)


def map_matrix(maps):
    """Rows are maps, column v holds the value of variable v (column 0 unused)."""
    maps = list(maps)
    n = maps[0].n
    tables = np.array([m.table for m in maps], dtype=np.int64)  # (batch, 2^n)
    bits = (tables[:, :, None] >> np.arange(n)) & 1  # (batch, 2^n, n)
    flat = bits.reshape(len(maps), -1).astype(bool)
    return np.concatenate([np.zeros((len(maps), 1), bool), flat], axis=1)


def _literal_arrays(items, pad_var):
    width = max(len(c) for c in items)
    idx = np.full((len(items), width), pad_var, dtype=np.int64)
    neg = np.zeros((len(items), width), dtype=bool)
    for r, lits in enumerate(items):
        for t, lit in enumerate(lits):
            idx[r, t] = abs(lit)
            neg[r, t] = lit < 0
    return idx, neg


def clauses_satisfied(assignments, clauses):
    """Boolean (batch, n_clauses) matrix: clause r has a true literal under row b."""
    batch = assignments.shape[0]
    padded = np.concatenate([assignments, np.zeros((batch, 1), bool)], axis=1)
    idx, neg = _literal_arrays(clauses, assignments.shape[1])
    return (padded[:, idx] ^ neg).any(axis=2)


def cubes_satisfied(assignments, cubes):
    """Boolean (batch, n_cubes) matrix: every literal of cube r is true under row b."""
    batch = assignments.shape[0]
    padded = np.concatenate([assignments, np.ones((batch, 1), bool)], axis=1)
    idx, neg = _literal_arrays(cubes, assignments.shape[1])
    return (padded[:, idx] ^ neg).all(axis=2)


def dynamics_paths_from_origin(f, k):
    """Acyclic paths of length 1..k from the origin that follow the dynamics of f."""
    out = set()

    def walk(path):
        if len(path) > k:
            return
        x = path[-1]
        diff = f(x) ^ x
        for j in range(f.n):
            if diff >> j & 1:
                y = x ^ (1 << j)
                if y not in path:
                    out.add(tuple(path + [y]))
                    walk(path + [y])

    walk([0])
    return out


def encoder_discrepancies(n, k, maps):
    """Compare each clause block under A(f) with the semantic predicate it encodes.

    Returns ``(bad, seen)``: discrepancy counts per property (fixed-points,
    circuits, paths, condition) and the set of semantic outcomes observed for
    each, so callers can check both outcomes were exercised.
    """
    maps = list(maps)
    fp_clauses = no_fixed_points_clauses(n)
    block_keys, circuit_clauses, owner = [], [], []
    for key, block in local_circuit_blocks(n):
        block_keys.append(key)
        for cl in block:
            circuit_clauses.append(cl)
            owner.append(len(block_keys) - 1)
    owner = np.array(owner)
    paths = list(acyclic_paths_from(0, k, n))
    cubes = [path_cube(p, n) for p in paths]
    cond = condition_clauses(n, k)

    bad = {"fixed-points": 0, "circuits": 0, "paths": 0, "condition": 0}
    seen = {key: set() for key in bad}
    for start in range(0, len(maps), 250):
        chunk = maps[start:start + 250]
        A = map_matrix(chunk)
        fp_ok = clauses_satisfied(A, fp_clauses).all(axis=1)
        circ_sat = clauses_satisfied(A, circuit_clauses)
        cube_sat = cubes_satisfied(A, cubes)
        cond_ok = clauses_satisfied(A, cond).all(axis=1)
        for b, f in enumerate(chunk):
            no_fp = not fixed_points(f)
            seen["fixed-points"].add(no_fp)
            bad["fixed-points"] += int(fp_ok[b] != no_fp)

            violated = {block_keys[o] for o in np.unique(owner[~circ_sat[b]])}
            negative = set()
            graphs = {}
            for x, c in block_keys:
                g = graphs.get(x)
                if g is None:
                    g = graphs[x] = local_graph(f, x)
                if circuit_sign(g, c) == -1:
                    negative.add((x, c))
            seen["circuits"].add(bool(negative))
            bad["circuits"] += violated != negative

            followed = {paths[r] for r in np.flatnonzero(cube_sat[b])}
            expected_paths = dynamics_paths_from_origin(f, k)
            seen["paths"].add(any(len(p) == k + 1 for p in expected_paths))
            bad["paths"] += followed != expected_paths

            expected = f(0) == 0 or reachable_non_fixed_within(f, 0, k)
            seen["condition"].add(expected and f(0) != 0)
            bad["condition"] += int(cond_ok[b] != expected)
    return bad, seen


def stg_isomorphic(f, g, U):
    """U carries every transition of f onto a transition of g and nothing else."""
    edges_f = set(transitions(f))
    edges_g = set(transitions(g))
    return {(U(x), U(y)) for x, y in edges_f} == edges_g


def signs_preserved(f, g, U):
    """Local graphs and circuit signs of f at x match those of g at U(x), relabelled by sigma."""
    circuits = enumerate_circuits(f.n)
    for x in f.states():
        gx = local_graph(f, x)
        gu = local_graph(g, U(x))
        # edges correspond under node j -> sigma(j)
        mapped = {(U.sigma[j - 1], U.sigma[i - 1]) for (j, i) in gx.signs}
        if mapped != set(gu.signs):
            return False
        for c in circuits:
            if circuit_sign(gx, c) != circuit_sign(gu, map_circuit(U, c)):
                return False
    return True

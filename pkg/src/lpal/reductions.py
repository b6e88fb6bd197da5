"""Instance transformations from the hardness constructions.

These turn instances of classic NP-hard problems (3-Partition, partition
into many partitions, partial Latin square completion) into line planning
instances, map certificates across, and build products of instances with
exactly two antennae. They are used to generate test instances and to
check decision equivalences against the exact oracle.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import INF, Instance, LineConcept
from .errors import (
    BadPartition,
    CollisionDetected,
    HypothesisViolated,
    InvalidInstance,
    InvalidSolution,
    NotDivisible,
    NotNice,
    TooLarge,
)
from .star import StarInstance


# -- 3-Partition on paths ---------------------------------------------------


@dataclass(frozen=True)
class ThreePartitionInstance:
    """Multiset of ``3p`` positive integers, in a fixed order."""

    values: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if self.p < 1:
            raise InvalidInstance("p must be positive")
        if len(self.values) != 3 * self.p:
            raise InvalidInstance(f"expected {3 * self.p} values, got {len(self.values)}")
        if any(x <= 0 for x in self.values):
            raise InvalidInstance("values must be positive")
        if sum(self.values) % self.p:
            raise NotDivisible(f"sum {sum(self.values)} is not divisible by p = {self.p}")

    @property
    def h(self) -> int:
        return sum(self.values) // self.p


def three_partition_to_path(tp: ThreePartitionInstance) -> tuple[Instance, int]:
    """Path instance whose optimum is ``3p`` iff ``tp`` splits into p groups of sum h.

    The path has ``4p`` vertices; vertex ``j`` stands for ``v_{j+1-p}``.
    Reading left to right, the first ``p`` edge bounds climb by ``h`` and
    the remaining ones drop by the values in order. ``fmin = fmax``,
    ``dfix = 1``, ``cfix = 0`` and all edge costs are 0.
    """
    p, h = tp.p, tp.h
    steps = [h] * p + [-x for x in tp.values]
    rows = []
    level = 0
    for j, step in enumerate(steps[:-1]):
        level += step
        rows.append((j, j + 1, 0, level, level))
    return Instance.build(4 * p, rows, dfix=1, cfix=0), 3 * p


def _assign_indices(values: Sequence[int], groups: Sequence[Sequence[int]]) -> list[list[int]]:
    free = defaultdict(list)
    for i, x in enumerate(values):
        free[x].append(i)
    for idx in free.values():
        idx.reverse()
    out = []
    for group in groups:
        idx = []
        for x in group:
            if not free.get(x):
                raise BadPartition(f"value {x} used more often than it occurs")
            idx.append(free[x].pop())
        out.append(idx)
    if any(free.values()):
        raise BadPartition("partition does not use every value")
    return out


def three_partition_solution_to_concept(
    tp: ThreePartitionInstance, partition: Sequence[Sequence[int]]
) -> LineConcept:
    """Concept with ``3p`` lines on the path built by ``three_partition_to_path``.

    ``partition`` lists ``p`` groups of values, each summing to ``h``. The
    line for the ``i``-th value ends on the right at ``v_i`` and on the left
    at ``v_{1-k}`` where ``k`` is the (1-based) group number.
    """
    if len(partition) != tp.p:
        raise BadPartition(f"expected {tp.p} groups, got {len(partition)}")
    for group in partition:
        if sum(group) != tp.h:
            raise BadPartition(f"group {tuple(group)} does not sum to {tp.h}")
    groups = _assign_indices(tp.values, partition)
    p = tp.p
    entries = []
    for k, idx in enumerate(groups, start=1):
        left = p - k  # vertex index of v_{1-k}
        for i in idx:
            right = i + p  # v_{i+1} for the 0-based value index i
            entries.append((tuple(range(left, right + 1)), tp.values[i]))
    return LineConcept.of(entries)


def brute_force_three_partition(
    tp: ThreePartitionInstance, triples: bool = False
) -> list[tuple[int, ...]] | None:
    """Split the values into ``p`` groups of sum ``h``, or return ``None``.

    With ``triples`` every group must have exactly three elements.
    """
    values = sorted(tp.values, reverse=True)
    h = tp.h
    groups: list[list[int]] = [[] for _ in range(tp.p)]
    sums = [0] * tp.p

    def place(i: int) -> bool:
        if i == len(values):
            return all(s == h for s in sums)
        tried = set()
        for g in range(tp.p):
            state = (sums[g], len(groups[g]))
            if state in tried or sums[g] + values[i] > h:
                continue
            if triples and len(groups[g]) == 3:
                continue
            tried.add(state)
            groups[g].append(values[i])
            sums[g] += values[i]
            if place(i + 1):
                return True
            groups[g].pop()
            sums[g] -= values[i]
        return False

    if not place(0):
        return None
    return [tuple(g) for g in groups]


# -- partition into many partitions on stars -----------------------------------


@dataclass(frozen=True)
class PmppInstance:
    """Distinct positive integers and a target number of partitionable blocks."""

    values: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if any(x <= 0 for x in self.values):
            raise InvalidInstance("values must be positive")
        if len(set(self.values)) != len(self.values):
            raise InvalidInstance("values must be pairwise distinct")
        if self.k < 0:
            raise InvalidInstance("k must be nonnegative")


@dataclass(frozen=True)
class PmppSolution:
    """Pairs ``(A_i, B_i)`` of disjoint nonempty sets with equal sums."""

    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((tuple(a), tuple(b)) for a, b in self.pairs)
        )

    def validate(self, values: Sequence[int]) -> None:
        pool = set(values)
        used: set[int] = set()
        for a, b in self.pairs:
            if not a or not b:
                raise InvalidSolution("every A_i and B_i must be nonempty")
            if sum(a) != sum(b):
                raise InvalidSolution(f"{a} and {b} have different sums")
            for x in a + b:
                if x not in pool:
                    raise InvalidSolution(f"{x} is not in the instance")
                if x in used:
                    raise InvalidSolution(f"{x} is used twice")
                used.add(x)


def pmpp_to_star(pmpp: PmppInstance) -> tuple[Instance, int]:
    """Star with center 0 and leaf ``i+1`` carrying ``fmin = fmax = x_i``.

    ``dfix = 1``, ``cfix = 0``, zero edge costs; the threshold is ``m - k``.
    """
    m = len(pmpp.values)
    rows = [(0, i + 1, 0, x, x) for i, x in enumerate(pmpp.values)]
    return Instance.build(m + 1, rows, dfix=1, cfix=0), m - pmpp.k


def pmpp_solution_to_concept(sol: PmppSolution, star: Instance) -> LineConcept:
    """Concept with at most ``m - K`` lines from a solution with ``K`` pairs.

    For each pair the two sides are consumed smallest-first: the smaller
    head value becomes a two-edge line joining both leaves and is removed,
    the larger head is reduced by it. Leaves left uncovered get one one-edge
    line each.
    """
    st = StarInstance.of(star)
    values = st.instance.fmin
    if len(set(values)) != len(values):
        raise InvalidSolution("star demands must be distinct to identify leaves")
    sol.validate(values)
    edge_of = {x: e for e, x in enumerate(values)}
    leaf = st.leaves
    center = st.center

    entries = []
    covered = set()
    for a_side, b_side in sol.pairs:
        a_items = [[x, edge_of[x]] for x in a_side]
        b_items = [[x, edge_of[x]] for x in b_side]
        covered.update(edge_of[x] for x in a_side + b_side)
        while a_items and b_items:
            a = min(a_items)
            b = min(b_items)
            f = min(a[0], b[0])
            entries.append(((leaf[a[1]], center, leaf[b[1]]), f))
            a[0] -= f
            b[0] -= f
            if a[0] == 0:
                a_items.remove(a)
            if b[0] == 0:
                b_items.remove(b)
    for e, x in enumerate(values):
        if e not in covered and x > 0:
            entries.append(((leaf[e], center), x))
    return LineConcept.of(entries)


def brute_force_pmpp(pmpp: PmppInstance, max_size: int = 12) -> PmppSolution | None:
    """A solution with the largest number of pairs if that is at least ``k``.

    Exhaustive over subsets: precomputes every subset that splits into two
    equal halves and packs disjoint ones by a memoized search on bitmasks.
    """
    values = pmpp.values
    m = len(values)
    if m > max_size:
        raise TooLarge(f"{m} values exceed the brute-force limit {max_size}")
    if pmpp.k == 0:
        return PmppSolution(())

    half: dict[int, int] = {}  # mask -> one half (as submask)
    for mask in range(1, 1 << m):
        total = sum(values[i] for i in range(m) if mask >> i & 1)
        if total % 2:
            continue
        sub = (mask - 1) & mask
        while sub:
            if sum(values[i] for i in range(m) if sub >> i & 1) * 2 == total:
                half[mask] = sub
                break
            sub = (sub - 1) & mask

    @lru_cache(maxsize=None)
    def pack(mask: int) -> tuple[int, tuple[int, ...]]:
        if not mask:
            return 0, ()
        low = mask & -mask
        best = pack(mask & ~low)
        sub = mask
        while sub:
            if sub & low and sub in half:
                count, blocks = pack(mask & ~sub)
                if count + 1 > best[0]:
                    best = (count + 1, (sub,) + blocks)
            sub = (sub - 1) & mask
        return best

    count, blocks = pack((1 << m) - 1)
    if count < pmpp.k:
        return None

    def members(mask: int) -> tuple[int, ...]:
        return tuple(values[i] for i in range(m) if mask >> i & 1)

    return PmppSolution(
        tuple((members(half[b]), members(b & ~half[b])) for b in blocks)
    )


# -- partial Latin square completion -------------------------------------------


@dataclass(frozen=True)
class PartialLatinSquare:
    """``p x p`` grid of colors ``1..p``; ``0`` marks an empty cell."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(c) for c in row) for row in self.cells)
        p = len(cells)
        if p < 1 or any(len(row) != p for row in cells):
            raise InvalidInstance("a partial Latin square must be a nonempty p x p grid")
        for row in cells:
            if any(not 0 <= c <= p for c in row):
                raise InvalidInstance(f"colors must lie in 1..{p}")
        for line in list(cells) + [tuple(col) for col in zip(*cells)]:
            filled = [c for c in line if c]
            if len(filled) != len(set(filled)):
                raise InvalidInstance("a color repeats in a row or column")
        object.__setattr__(self, "cells", cells)

    @property
    def p(self) -> int:
        return len(self.cells)

    @property
    def empty_cells(self) -> int:
        return sum(row.count(0) for row in self.cells)


def plsc_encoding(square: PartialLatinSquare) -> dict[int, tuple[str, int, int]]:
    """Numbers of the Latin-square-to-partition encoding with their meaning.

    Keys are the generated numbers; values are ``("x", row, color)``,
    ``("y", column, color)`` or ``("z", row, column)`` (all 1-based).
    With ``q = 6p - 2``, a color missing from row k gives
    ``q(2k-1) - (2c-1)``, a color missing from column l gives
    ``q^2(2l-1) + (2c-1)``, and an empty cell gives ``q^2(2l-1) + q(2k-1)``.

    Raises:
        CollisionDetected: if two labels map to the same number.
    """
    p = square.p
    q = 6 * p - 2
    out: dict[int, tuple[str, int, int]] = {}

    def put(value: int, label: tuple[str, int, int]):
        if value in out:
            raise CollisionDetected(f"{label} and {out[value]} both encode {value}")
        out[value] = label

    colors = set(range(1, p + 1))
    for k, row in enumerate(square.cells, start=1):
        for c in sorted(colors - set(row)):
            put(q * (2 * k - 1) - (2 * c - 1), ("x", k, c))
    for col, column in enumerate(zip(*square.cells), start=1):
        for c in sorted(colors - set(column)):
            put(q * q * (2 * col - 1) + (2 * c - 1), ("y", col, c))
    for k, row in enumerate(square.cells, start=1):
        for col, c in enumerate(row, start=1):
            if c == 0:
                put(q * q * (2 * col - 1) + q * (2 * k - 1), ("z", k, col))
    return out


def plsc_to_pmpp(square: PartialLatinSquare) -> PmppInstance:
    """Partition instance asking for one block per empty cell."""
    numbers = plsc_encoding(square)
    m = square.empty_cells
    if len(numbers) != 3 * m:
        raise CollisionDetected(f"expected {3 * m} numbers, got {len(numbers)}")
    return PmppInstance(tuple(numbers), m)


# -- lifting fmax ----------------------------------------------------------------


def lift_fmax(instance: Instance, k) -> tuple[Instance, Fraction]:
    """Equivalent decision instance with unbounded ``fmax``.

    Needs ``cfix = 0``, zero edge costs and ``fmin = fmax``. Every edge gets
    cost ``k + 1``, so any surplus frequency already costs more than the
    budget; the new threshold is ``k + (k + 1) * sum(fmin)``.
    """
    if instance.cfix != 0 or any(instance.edge_cost):
        raise HypothesisViolated("lifting needs cfix = 0 and zero edge costs")
    if instance.fmin != instance.fmax:
        raise HypothesisViolated("lifting needs fmin = fmax on every edge")
    k = Fraction(k)
    lifted = instance.replace(
        edge_cost=(k + 1,) * instance.graph.edge_count,
        fmax=(INF,) * instance.graph.edge_count,
    )
    return lifted, k + (k + 1) * sum(instance.fmin)


# -- antennae and products ---------------------------------------------------------


@dataclass(frozen=True)
class Antenna:
    edge: int
    tip: int  # degree-1 endpoint
    base: int


def find_antennae(instance: Instance) -> list[Antenna]:
    """Edges with ``fmin = 1`` and a degree-1 endpoint, one entry per such tip."""
    graph = instance.graph
    out = []
    for e, (u, v) in enumerate(graph.edges):
        if instance.fmin[e] != 1:
            continue
        for tip, base in ((u, v), (v, u)):
            if graph.degree(tip) == 1:
                out.append(Antenna(e, tip, base))
    return out


def is_nice(instance: Instance) -> bool:
    return len(find_antennae(instance)) == 2


def instance_product(inner: Instance, outer: Instance) -> Instance:
    """Replace every ``fmin = 1`` edge of ``outer`` by a copy of ``inner``.

    The copy's two antenna tips are glued onto the endpoints of the replaced
    edge (first tip onto the smaller vertex). Vertices of ``outer`` keep
    their numbers; each copy appends its remaining vertices in order of the
    replaced edges.
    """
    ants = find_antennae(inner)
    if len(ants) != 2:
        raise NotNice(f"inner instance has {len(ants)} antennae, need exactly 2")
    if not is_nice(outer):
        raise NotNice("outer instance must have exactly two antennae")
    if inner.dfix != outer.dfix or inner.cfix != outer.cfix:
        raise InvalidInstance("factors must share dfix and cfix")

    tip1, tip2 = ants[0].tip, ants[1].tip
    rows = []
    replaced = []
    for e, (u, v) in enumerate(outer.graph.edges):
        if outer.fmin[e] == 1:
            replaced.append((u, v))
        else:
            rows.append((u, v, outer.edge_cost[e], outer.fmin[e], outer.fmax[e]))
    n = outer.graph.vertex_count
    for u, v in replaced:
        relabel = {}
        for w in range(inner.graph.vertex_count):
            if w == tip1:
                relabel[w] = u
            elif w == tip2:
                relabel[w] = v
            else:
                relabel[w] = n
                n += 1
        for e, (a, b) in enumerate(inner.graph.edges):
            rows.append(
                (relabel[a], relabel[b], inner.edge_cost[e], inner.fmin[e], inner.fmax[e])
            )
    product = Instance.build(n, rows, dfix=outer.dfix, cfix=outer.cfix)
    assert is_nice(product), "product of nice instances must be nice"
    return product


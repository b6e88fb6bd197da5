"""Exact solver for stars without frequency-independent costs.

With ``dfix = 0`` the cost of a concept on a star is
``sum_e c_e * f_total_e + cfix * sum_l f_l``. Covering every edge exactly
``fmin_e`` times is optimal, so what remains is to pair up edge demands
into two-edge lines so that as little frequency as possible is left on
one-edge lines.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .core import Instance, LineConcept, total_frequency
from .errors import InfeasibleInput, NonzeroDfix, NotAStar


@dataclass(frozen=True)
class StarInstance:
    instance: Instance
    center: int
    leaves: tuple[int, ...]  # leaves[e] is the leaf endpoint of edge e

    @classmethod
    def of(cls, instance: Instance | StarInstance) -> StarInstance:
        if isinstance(instance, StarInstance):
            return instance
        center = instance.graph.star_center()
        if center is None:
            raise NotAStar("graph is not a star K_{1,k} with k >= 1")
        leaves = tuple(v if u == center else u for u, v in instance.graph.edges)
        return cls(instance, center, leaves)


def pair_demands(
    demands: Sequence[int],
) -> tuple[dict[tuple[int, int], int], dict[int, int]]:
    """Pair up per-edge demands around a common center.

    Returns ``(pairs, singles)``: ``pairs[(i, j)]`` (``i < j``) is the
    frequency of the two-edge line through edges ``i`` and ``j``, and
    ``singles[i]`` that of the one-edge line on edge ``i``. Every edge is
    covered exactly ``demands[i]`` times and at most one single remains.

    Edges are processed by decreasing demand (ties by index). A leftover
    single from earlier edges is paired first; after that, existing pairs
    ``(i, j)`` are split into ``(k, i)`` and ``(k, j)`` while at least two
    units of the current demand are left.
    """
    order = sorted((i for i, d in enumerate(demands) if d > 0), key=lambda i: -demands[i])
    pairs: dict[tuple[int, int], int] = defaultdict(int)  # keyed (pos_i, pos_j), pos_i > pos_j
    single_pos = None
    single_freq = 0

    for k, idx in enumerate(order):
        rest = demands[idx]
        if single_pos is not None:
            a = min(single_freq, rest)
            single_freq -= a
            pairs[(k, single_pos)] += a
            rest -= a
            if single_freq == 0:
                single_pos = None
        if rest > 1:
            for key in sorted((p for p in pairs if p[0] < k and pairs[p] > 0), reverse=True):
                if rest <= 1:
                    break
                i, j = key
                b = min(pairs[key], rest // 2)
                pairs[key] -= b
                pairs[(k, i)] += b
                pairs[(k, j)] += b
                rest -= 2 * b
        if rest > 0:
            single_pos, single_freq = k, rest

    out_pairs = {}
    for (pi, pj), f in pairs.items():
        if f > 0:
            a, b = sorted((order[pi], order[pj]))
            out_pairs[(a, b)] = f
    singles = {order[single_pos]: single_freq} if single_pos is not None else {}
    return out_pairs, singles


def solve_star(instance: Instance | StarInstance) -> LineConcept:
    """Optimal line concept for a star with ``dfix = 0``.

    Raises:
        NotAStar: if the graph is not ``K_{1,k}``.
        NonzeroDfix: if ``dfix > 0`` (that case is NP-hard).
    """
    star = StarInstance.of(instance)
    inst = star.instance
    if inst.dfix != 0:
        raise NonzeroDfix("the star algorithm requires dfix = 0")
    pairs, singles = pair_demands(inst.fmin)
    c, leaf = star.center, star.leaves
    entries = [((leaf[i], c, leaf[j]), f) for (i, j), f in pairs.items()]
    entries += [((leaf[i], c), f) for i, f in singles.items()]
    return LineConcept.of(entries)


class OptimalityCondition(enum.Enum):
    NO_ONE_EDGE = "no one-edge line"
    ONE_ONE_EDGE_FREQ1 = "one one-edge line with frequency 1"
    DOMINANT_EDGE = "dominant edge carries every line"
    NONE = "no certificate"


def optimality_condition(
    concept: LineConcept, instance: Instance | StarInstance
) -> OptimalityCondition:
    """Which sufficient optimality certificate ``concept`` satisfies.

    The concept must cover every edge exactly ``fmin_e`` times.
    """
    star = StarInstance.of(instance)
    inst = star.instance
    totals = total_frequency(concept, inst.graph)
    if totals != inst.fmin:
        raise InfeasibleInput("concept does not cover every edge exactly fmin times")
    one_edge = [f for line, f in concept if line.edge_count == 1]
    if not one_edge:
        return OptimalityCondition.NO_ONE_EDGE
    if one_edge == [1]:
        return OptimalityCondition.ONE_ONE_EDGE_FREQ1
    demand = sum(inst.fmin)
    top = max(inst.fmin)
    if top > demand - top and concept.frequency_sum() == top:
        return OptimalityCondition.DOMINANT_EDGE
    return OptimalityCondition.NONE

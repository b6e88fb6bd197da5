"""Line planning on trees with ``dfix = 0``.

Two solvers live here:

* ``solve_tree_dp``: dynamic program over rooted subtrees. For every
  subtree it keeps a cost vector whose entry ``k`` is the cheapest cost of
  a feasible concept on the subtree with at least ``k`` line ends at its
  root (zero-edge lines allowed). Runs in O(n b^3) for a frequency bound b.
* ``solve_tree_fixed_freq``: polynomial algorithm for ``fmin = fmax``
  that runs the star pairing at every vertex and concatenates lines.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import INF, Instance, LineConcept
from .errors import BoundTooSmall, NonzeroDfix, NotATree, UnequalBounds
from .star import pair_demands

INFINITE_COST = math.inf


@dataclass(frozen=True)
class CostVector:
    """``entries[k]``: optimal subtree cost given at least ``k`` ends at the root."""

    entries: tuple

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def b(self) -> int:
        return len(self.entries) - 1


def _leaf(cfix, b: int) -> list:
    return [k * cfix for k in range(b + 1)]


def _introduce(child: Sequence, ce, fmin: int, fmax, cfix, b: int):
    # child: vector of the subtree below u; the new edge {u, parent} has cost ce.
    out = []
    arg = []
    for k in range(b + 1):
        if k > fmax:
            out.append(INFINITE_COST)
            arg.append(None)
            continue
        a = max(k, fmin)
        base = a * (cfix + ce)
        best = INFINITE_COST
        best_m = None
        for m in range(min(a, len(child) - 1) + 1):
            cm = child[m]
            if cm == INFINITE_COST:
                continue
            val = cm + base - m * cfix
            if val < best:
                best, best_m = val, m
        out.append(best)
        arg.append(best_m)
    return out, arg


def _merge(cv1: Sequence, cv2: Sequence, cfix, b: int):
    # k1 + k2 - 2m = k, with m joins needing m ends on both sides.
    out = [INFINITE_COST] * (b + 1)
    arg: list = [None] * (b + 1)
    for m in range(b + 1):
        saving = m * cfix
        for k1 in range(m, b + 1):
            c1 = cv1[k1]
            if c1 == INFINITE_COST:
                continue
            for k2 in range(m, min(b, b - k1 + 2 * m) + 1):
                c2 = cv2[k2]
                if c2 == INFINITE_COST:
                    continue
                k = k1 + k2 - 2 * m
                val = c1 + c2 - saving
                if val < out[k]:
                    out[k] = val
                    arg[k] = (k1, k2, m)
    return out, arg


def cost_vector_leaf(cfix, b: int) -> CostVector:
    """Vector of a single vertex: ``k`` zero-edge lines cost ``k * cfix``."""
    return CostVector(tuple(_leaf(Fraction(cfix), b)))


def cost_vector_introduce_parent(
    child_cv: CostVector, edge_params: tuple, cfix, b: int
) -> CostVector:
    """Extend a subtree rooted at ``u`` by the edge to its parent.

    ``edge_params`` is ``(c_e, fmin_e, fmax_e)`` of that edge.
    """
    ce, fmin, fmax = edge_params
    entries, _ = _introduce(child_cv.entries, Fraction(ce), fmin, fmax, Fraction(cfix), b)
    return CostVector(tuple(entries))


def cost_vector_merge(cv1: CostVector, cv2: CostVector, cfix, b: int) -> CostVector:
    """Join two subtrees sharing their root; the root has one child in ``cv1``'s."""
    entries, _ = _merge(cv1.entries, cv2.entries, Fraction(cfix), b)
    return CostVector(tuple(entries))


def _check_tree(instance: Instance):
    if not instance.graph.is_tree():
        raise NotATree("graph is not a tree")
    if instance.dfix != 0:
        raise NonzeroDfix("tree algorithms require dfix = 0")


def _rooted(graph, root: int = 0):
    """Parent array and DFS preorder, without recursion."""
    parent = [-1] * graph.vertex_count
    order = []
    seen = [False] * graph.vertex_count
    seen[root] = True
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in reversed(graph.adjacency[v]):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    return parent, order


def resolve_bound(instance: Instance, b: int | None) -> int:
    finite = [f for f in instance.fmax if f != INF]
    if b is None:
        if len(finite) != len(instance.fmax):
            raise BoundTooSmall("some fmax is unbounded; pass an explicit bound b")
        b = max(finite, default=0)
    if b < 0:
        raise BoundTooSmall(f"bound must be nonnegative, got {b}")
    if any(f > b for f in finite):
        raise BoundTooSmall(f"bound {b} is below max fmax {max(finite)}")
    if any(f > b for f in instance.fmin):
        raise BoundTooSmall(f"bound {b} is below max fmin {max(instance.fmin)}")
    return b


def _scaled(instance: Instance):
    """Edge costs and cfix as integers over a common denominator."""
    denom = math.lcm(instance.cfix.denominator, *(c.denominator for c in instance.edge_cost))
    cfix = int(instance.cfix * denom)
    costs = [int(c * denom) for c in instance.edge_cost]
    return denom, cfix, costs


def solve_tree_dp(
    instance: Instance, b: int | None = None, reconstruct: bool = False
) -> tuple[Fraction, LineConcept | None]:
    """Minimal cost on a tree with ``dfix = 0`` via cost vectors.

    ``b`` defaults to the largest ``fmax``. When some ``fmax`` is unbounded
    it must be given, and the result is optimal among concepts whose root
    ends per subtree stay within ``b``.

    Returns the cost and, if ``reconstruct`` is set, a concept achieving it.
    """
    _check_tree(instance)
    b = resolve_bound(instance, b)
    graph = instance.graph
    denom, cfix, costs = _scaled(instance)
    parent, order = _rooted(graph)

    # nodes[i] = (kind, payload, argmin choices); a node is one cost vector
    nodes: list[tuple] = []
    vectors: list[list] = []
    top = [0] * graph.vertex_count  # node id of the full subtree at v

    for v in reversed(order):
        acc = None
        for w in graph.adjacency[v]:
            if w == parent[v]:
                continue
            e = graph.edge_index[(v, w)]
            fmax = min(instance.fmax[e], b)
            vec, arg = _introduce(vectors[top[w]], costs[e], instance.fmin[e], fmax, cfix, b)
            nodes.append(("parent", (top[w], w, v, e), arg if reconstruct else None))
            vectors.append(vec)
            up = len(nodes) - 1
            if acc is None:
                acc = up
                continue
            vec, arg = _merge(vectors[up], vectors[acc], cfix, b)
            nodes.append(("merge", (up, acc), arg if reconstruct else None))
            vectors.append(vec)
            if not reconstruct:
                vectors[up] = vectors[acc] = None
            acc = len(nodes) - 1
        if acc is None:
            nodes.append(("leaf", v, None))
            vectors.append(_leaf(cfix, b))
            acc = len(nodes) - 1
        top[v] = acc
        if not reconstruct:
            # children's vectors are never read again
            for w in graph.adjacency[v]:
                if w != parent[v]:
                    vectors[top[w]] = None

    root_node = top[order[0]]
    value = vectors[root_node][0]
    cost = Fraction(value, denom)
    if not reconstruct:
        return cost, None
    return cost, _rebuild(nodes, root_node, instance)


def _take(open_lines: list, units: int):
    """Split off ``units`` of frequency from the front of ``open_lines``."""
    taken = []
    rest = []
    for path, f in open_lines:
        if units > 0:
            t = min(f, units)
            taken.append((path, t))
            units -= t
            if f > t:
                rest.append((path, f - t))
        else:
            rest.append((path, f))
    if units:
        raise AssertionError("fewer line ends available than the argmin requires")
    return taken, rest


def _rebuild(nodes, root_node: int, instance: Instance) -> LineConcept:
    request = [None] * len(nodes)
    request[root_node] = 0
    for i in range(root_node, -1, -1):
        k = request[i]
        if k is None:
            continue
        kind, payload, arg = nodes[i]
        if kind == "parent":
            request[payload[0]] = arg[k]
        elif kind == "merge":
            k1, k2, _ = arg[k]
            request[payload[0]] = k1
            request[payload[1]] = k2

    # open paths are tuples that end at the subtree root
    closed: list = []
    open_at: dict[int, list] = {}
    for i in range(root_node + 1):
        k = request[i]
        if k is None:
            continue
        kind, payload, arg = nodes[i]
        if kind == "leaf":
            open_at[i] = [((payload,), k)] if k else []
        elif kind == "parent":
            child, u, v, e = payload
            m = arg[k]
            a = max(k, instance.fmin[e])
            joined, leftover = _take(open_at.pop(child), m)
            for path, f in leftover:
                closed.append((path, f))
            lines = [(path + (v,), f) for path, f in joined]
            if a > m:
                lines.append(((u, v), a - m))
            open_at[i] = lines
        else:
            n1, n2 = payload
            m = arg[k][2]
            left, rest1 = _take(open_at.pop(n1), m)
            right, rest2 = _take(open_at.pop(n2), m)
            li = ri = 0
            left = [list(x) for x in left]
            right = [list(x) for x in right]
            while li < len(left):
                t = min(left[li][1], right[ri][1])
                closed.append((left[li][0] + right[ri][0][-2::-1], t))
                left[li][1] -= t
                right[ri][1] -= t
                if left[li][1] == 0:
                    li += 1
                if right[ri][1] == 0:
                    ri += 1
            open_at[i] = rest1 + rest2
    closed.extend(open_at.pop(root_node))
    return LineConcept.of((p, f) for p, f in closed if len(p) > 1)


def _tree_path(parent: list[int], depth: list[int], a: int, b: int) -> tuple[int, ...]:
    left = [a]
    right = [b]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


def solve_tree_fixed_freq(
    instance: Instance,
    observer: Callable[[int, dict], None] | None = None,
) -> LineConcept:
    """Optimal concept on a tree with ``dfix = 0`` and ``fmin = fmax``.

    Starts from one one-edge line per edge and visits the vertices in index
    order. At each vertex the star pairing of the incident demands says how
    much frequency to route through each pair of incident edges, and lines
    ending there are concatenated accordingly.

    ``observer(v, lines)`` is called before vertex ``v`` is processed with a
    snapshot ``{(a, b): (freq, {a: edge_at_a, b: edge_at_b})}`` of the lines
    with positive frequency.
    """
    _check_tree(instance)
    if instance.fmin != instance.fmax:
        raise UnequalBounds("fixed-frequency algorithm needs fmin = fmax on every edge")
    graph = instance.graph

    freq: dict[tuple[int, int], int] = defaultdict(int)
    end_edge: dict[tuple[int, int], dict[int, int]] = {}
    ends_at: list[list[tuple[int, int]]] = [[] for _ in range(graph.vertex_count)]

    def add(key, f, edges):
        if key not in end_edge:
            end_edge[key] = edges
            ends_at[key[0]].append(key)
            ends_at[key[1]].append(key)
        freq[key] += f

    for e, (u, v) in enumerate(graph.edges):
        if instance.fmin[e] > 0:
            add((u, v), instance.fmin[e], {u: e, v: e})

    for v in range(graph.vertex_count):
        if observer is not None:
            observer(v, {k: (f, dict(end_edge[k])) for k, f in freq.items() if f > 0})
        incident = [graph.edge_index[(v, w)] for w in graph.adjacency[v]]
        if len(incident) < 2:
            continue
        pairs, _ = pair_demands([instance.fmin[e] for e in incident])
        through = {
            frozenset((incident[i], incident[j])): f for (i, j), f in pairs.items()
        }
        local = [k for k in ends_at[v] if freq[k] > 0]
        for x in range(len(local)):
            for y in range(x + 1, len(local)):
                l1, l2 = local[x], local[y]
                e1, e2 = end_edge[l1][v], end_edge[l2][v]
                if e1 == e2:
                    continue
                pair = frozenset((e1, e2))
                d = min(through.get(pair, 0), freq[l1], freq[l2])
                if d <= 0:
                    continue
                w1 = l1[0] if l1[1] == v else l1[1]
                w2 = l2[0] if l2[1] == v else l2[1]
                through[pair] -= d
                freq[l1] -= d
                freq[l2] -= d
                key = (w1, w2) if w1 < w2 else (w2, w1)
                add(key, d, {w1: end_edge[l1][w1], w2: end_edge[l2][w2]})

    parent, order = _rooted(graph)
    depth = [0] * graph.vertex_count
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    return LineConcept.of(
        (_tree_path(parent, depth, a, b), f) for (a, b), f in freq.items() if f > 0
    )

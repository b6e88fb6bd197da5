"""Exact brute-force solver for small instances on arbitrary graphs.

Every simple path is a candidate line. The search fixes the frequency of
one path at a time, grouped so that each edge's last covering path comes
early, and prunes with

* per-edge feasibility: an edge whose last covering path has been decided
  must have reached ``fmin``; no edge may exceed ``fmax``;
* a cost lower bound on the uncovered demand and on the line ends it
  forces at each vertex;
* dominance: the future only depends on the path index and the per-edge
  totals, so a state reached again at no lower cost is skipped.

It is meant as ground truth for tests, not for production-size inputs.
"""
from __future__ import annotations

import math
import sys
import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import INF, Graph, Instance, Line, LineConcept
from .errors import Infeasible, Timeout, TooLarge

AUTO = "auto"


@dataclass(frozen=True)
class OracleConfig:
    max_vertices: int = 8
    frequency_cap: int | str = AUTO
    time_budget: float | None = None  # seconds
    max_paths: int = 100_000
    max_memo: int = 2_000_000

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.frequency_cap != AUTO and int(self.frequency_cap) < 0:
            raise ValueError("frequency_cap must be nonnegative or 'auto'")


def enumerate_simple_paths(graph: Graph, cap: int | None = None) -> tuple[Line, ...]:
    """All simple paths with at least one edge, one per undirected path.

    Each path is oriented so that its first vertex is smaller than its last.

    Raises:
        TooLarge: if more than ``cap`` paths exist.
    """
    adj = graph.adjacency
    out = []
    for s in range(graph.vertex_count):
        on_path = [False] * graph.vertex_count
        on_path[s] = True
        path = [s]
        stack = [iter(adj[s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path[path.pop()] = False
                continue
            if on_path[w]:
                continue
            path.append(w)
            on_path[w] = True
            if s < w:
                out.append(Line(tuple(path)))
                if cap is not None and len(out) > cap:
                    raise TooLarge(f"more than {cap} simple paths")
            stack.append(iter(adj[w]))
    return tuple(out)


def _edge_ranks(graph: Graph) -> list[int]:
    """Position of every edge in a breadth-first scan from vertex 0."""
    rank = [-1] * graph.edge_count
    seen = [False] * graph.vertex_count
    order = 0
    for s in range(graph.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in graph.adjacency[v]:
                e = graph.edge_index[(v, w)]
                if rank[e] < 0:
                    rank[e] = order
                    order += 1
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return rank


class Decision(NamedTuple):
    answer: bool
    infeasible: bool = False

    def __bool__(self) -> bool:
        return self.answer


class _Search:
    def __init__(self, instance: Instance, config: OracleConfig):
        graph = instance.graph
        if graph.vertex_count > config.max_vertices:
            raise TooLarge(
                f"{graph.vertex_count} vertices exceed the oracle limit {config.max_vertices}"
            )
        self.instance = instance
        self.config = config
        m = graph.edge_count
        self.fmin = list(instance.fmin)
        self.fmax = list(instance.fmax)

        params = [instance.dfix, instance.cfix, *instance.edge_cost]
        self.scale = math.lcm(*(q.denominator for q in params))
        self.dfix = int(instance.dfix * self.scale)
        self.cfix = int(instance.cfix * self.scale)
        self.ce = [int(c * self.scale) for c in instance.edge_cost]

        demand = sum(self.fmin)
        paths = []
        for line in enumerate_simple_paths(graph, config.max_paths):
            edges = line.edge_indices(graph)
            if config.frequency_cap == AUTO:
                finite = [self.fmax[e] for e in edges if self.fmax[e] != INF]
                cap = min(finite) if finite else demand
            else:
                cap = min([int(config.frequency_cap)] + [self.fmax[e] for e in edges])
            if cap > 0:
                paths.append((line, edges, cap))
        # Group paths by their earliest edge in BFS order so every edge closes
        # as soon as possible; longer paths first within a group.
        rank = _edge_ranks(graph)
        paths.sort(key=lambda p: (min(rank[e] for e in p[1]), -len(p[1])))
        self.lines = [p[0] for p in paths]
        self.path_edges = [p[1] for p in paths]
        self.caps = [int(p[2]) for p in paths]
        self.unit = [self.cfix + sum(self.ce[e] for e in p[1]) for p in paths]

        last = [-1] * m
        for i, edges in enumerate(self.path_edges):
            for e in edges:
                last[e] = i
        self.closing = [[] for _ in paths]
        for e in range(m):
            if last[e] >= 0:
                self.closing[last[e]].append(e)
        self.last = last
        self.incident = [
            [graph.edge_index[(v, w)] for w in graph.adjacency[v]]
            for v in range(graph.vertex_count)
        ]
        self.unreachable = any(self.fmin[e] > 0 and last[e] < 0 for e in range(m))
        self.open_edges = [
            [e for e in range(m) if last[e] >= i] for i in range(len(paths) + 1)
        ]

        # longest[i]: most edges on any path not yet decided at position i
        self.longest = [1] * (len(paths) + 1)
        for i in range(len(paths) - 1, -1, -1):
            self.longest[i] = max(self.longest[i + 1], len(self.path_edges[i]))

        self.total = [0] * m
        self.freq = [0] * len(paths)
        self.memo: dict = {}
        self.best = None
        self.best_freq = None
        self.nodes = 0
        self.deadline = (
            time.monotonic() + config.time_budget if config.time_budget is not None else None
        )

    def _lower_bound(self, i: int) -> int:
        total = self.total
        fmin = self.fmin
        last = self.last
        rem_cost = 0
        rem_sum = 0
        rem_max = 0
        rem_edges = 0
        for e in self.open_edges[i]:
            r = fmin[e] - total[e]
            if r > 0:
                rem_cost += r * self.ce[e]
                rem_sum += r
                rem_edges += 1
                if r > rem_max:
                    rem_max = r
        if rem_sum == 0:
            return 0

        # Line ends the new lines must have at each vertex: a unit on edge e
        # at v either ends there or continues on another incident edge.
        ends = 0
        end_vertices = 0
        for inc in self.incident:
            need = []
            finite_room = 0
            unbounded = 0
            fixed = True
            parity = 0
            for e in inc:
                if last[e] < i:
                    continue
                r = fmin[e] - total[e]
                if r < 0:
                    r = 0
                room = self.fmax[e] - total[e]
                if room == INF:
                    unbounded += 1
                    fixed = False
                else:
                    finite_room += room
                    if room != r:
                        fixed = False
                parity += r
                if r:
                    need.append((r, room))
            if not need:
                continue
            forced = 0
            for r, room in need:
                if room == INF:
                    other_unbounded = unbounded - 1
                    other_room = finite_room
                else:
                    other_unbounded = unbounded
                    other_room = finite_room - room
                if not other_unbounded and r - other_room > forced:
                    forced = r - other_room
            if not forced and fixed and parity % 2:
                forced = 1
            if forced:
                ends += forced
                end_vertices += 1

        longest = self.longest[i]
        freq_lb = max(rem_max, -(-rem_sum // longest), -(-ends // 2))
        lines_lb = max(-(-rem_edges // longest), -(-end_vertices // 2), 1)
        return rem_cost + self.cfix * freq_lb + self.dfix * lines_lb

    def _key(self, i: int):
        out = []
        for e in self.open_edges[i]:
            t = self.total[e]
            if self.fmax[e] == INF and t > self.fmin[e]:
                t = self.fmin[e]
            out.append(t)
        return i, tuple(out)

    def run(self, limit=None, incumbent=None):
        """Search for a cheaper concept.

        Without ``limit`` the search minimizes, improving on ``incumbent``
        (a known achievable cost) if given. With ``limit`` it stops at the
        first concept costing at most ``limit``.
        """
        self.limit = limit
        self.best = incumbent
        self.stop = False
        if self.unreachable:
            return
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * len(self.lines) + 1000))
        try:
            self._dfs(0, 0)
        finally:
            sys.setrecursionlimit(old)

    def _pruned(self, lb) -> bool:
        if self.limit is not None:
            return lb > self.limit
        return self.best is not None and lb >= self.best

    def _dfs(self, i: int, cost: int):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 2048 == 0:
            if time.monotonic() > self.deadline:
                raise Timeout("oracle time budget exhausted")
        if self._pruned(cost + self._lower_bound(i)):
            return
        if i == len(self.lines):
            self.best = cost
            self.best_freq = list(self.freq)
            if self.limit is not None:
                self.stop = True
            return
        key = self._key(i)
        seen = self.memo.get(key)
        if seen is not None and seen <= cost:
            return
        if seen is not None or len(self.memo) < self.config.max_memo:
            self.memo[key] = cost

        edges = self.path_edges[i]
        hi = self.caps[i]
        for e in edges:
            slack = self.fmax[e] - self.total[e]
            if slack < hi:
                hi = int(slack)
        lo = 0
        for e in self.closing[i]:
            need = self.fmin[e] - self.total[e]
            if need > lo:
                lo = need
        unit = self.unit[i]
        for f in range(hi, lo - 1, -1):
            if f:
                for e in edges:
                    self.total[e] += f
            self.freq[i] = f
            self._dfs(i + 1, cost + (f * unit + self.dfix if f else 0))
            if f:
                for e in edges:
                    self.total[e] -= f
            self.freq[i] = 0
            if self.stop:
                return

    def concept(self) -> LineConcept:
        return LineConcept.of(
            (line.vertices, f) for line, f in zip(self.lines, self.best_freq) if f
        )


def _trivial(instance: Instance, search: _Search):
    """Cost of one one-edge line per edge at frequency ``fmin``, if allowed."""
    caps = {}
    for line, edges, cap in zip(search.lines, search.path_edges, search.caps):
        if len(edges) == 1:
            caps[edges[0]] = cap
    cost = 0
    for e, f in enumerate(instance.fmin):
        if f == 0:
            continue
        if caps.get(e, 0) < f:
            return None
        cost += f * (search.cfix + search.ce[e]) + search.dfix
    return cost


def oracle_solve(
    instance: Instance, config: OracleConfig | None = None
) -> tuple[Fraction, LineConcept]:
    """Exact optimum over all concepts with per-line frequency within the cap.

    Raises:
        Infeasible: if no concept in the search space is feasible.
        Timeout: if ``config.time_budget`` runs out.
        TooLarge: if the graph or its path catalog exceeds the limits.
    """
    search = _Search(instance, config or OracleConfig())
    start = _trivial(instance, search)
    search.run(incumbent=start)
    if search.best is None:
        raise Infeasible("no feasible line concept within the frequency cap")
    if search.best_freq is None:
        concept = LineConcept.of(
            (instance.graph.edges[e], f) for e, f in enumerate(instance.fmin) if f
        )
    else:
        concept = search.concept()
    return Fraction(search.best, search.scale), concept


def oracle_decide(
    instance: Instance, threshold, config: OracleConfig | None = None
) -> Decision:
    """Whether some feasible concept costs at most ``threshold``.

    An infeasible instance yields ``Decision(False, infeasible=True)``.
    """
    config = config or OracleConfig()
    search = _Search(instance, config)
    limit = Fraction(threshold) * search.scale
    if _trivial(instance, search) is not None or search.unreachable:
        feasible = not search.unreachable
    else:
        try:
            oracle_solve(instance, config)
            feasible = True
        except Infeasible:
            feasible = False
    if not feasible:
        return Decision(False, infeasible=True)
    search.run(limit=limit)
    return Decision(search.best is not None)

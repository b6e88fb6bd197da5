"""Instances, lines and line concepts for line planning on all lines.

Costs are kept exact: every cost parameter is stored as a ``Fraction`` and
frequencies are plain ``int``. An unbounded upper frequency is ``INF``
(``math.inf``), which compares greater than every integer.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidGraph, InvalidInstance, InvalidLine

log = logging.getLogger(__name__)

INF = math.inf

Edge = tuple[int, int]


def as_rational(value, name: str = "value") -> Fraction:
    """Convert ``value`` to a nonnegative ``Fraction`` without rounding."""
    if isinstance(value, float) and not math.isfinite(value):
        raise InvalidInstance(f"{name} must be finite, got {value}")
    try:
        q = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"{name} is not a rational number: {value!r}") from exc
    if q < 0:
        raise InvalidInstance(f"{name} must be nonnegative, got {q}")
    return q


def as_bound(value, name: str = "bound") -> int | float:
    """Normalize a frequency bound to a nonnegative int or ``INF``."""
    if isinstance(value, str) and value.strip().lower() == "inf":
        return INF
    if value == INF:
        return INF
    if isinstance(value, (bool, str)) or int(value) != value:
        raise InvalidInstance(f"{name} must be a nonnegative integer, got {value!r}")
    value = int(value)
    if value < 0:
        raise InvalidInstance(f"{name} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``.

    Edges are stored as ``(u, v)`` with ``u < v``; an edge is identified by
    its position in ``edges``.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidGraph("a graph needs at least one vertex")
        normalized = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidGraph(f"edge {{{u},{v}}} has an endpoint out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InvalidGraph(f"duplicate edge {{{u},{v}}}")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        index = {}
        for i, (u, v) in enumerate(self.edges):
            index[(u, v)] = i
            index[(v, u)] = i
        return index

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def is_tree(self) -> bool:
        return self.edge_count == self.vertex_count - 1 and self.is_connected()

    def star_center(self) -> int | None:
        """Return the center of a star ``K_{1,k}`` (k >= 1), else ``None``.

        For ``K_{1,1}`` the lower-indexed endpoint is the center.
        """
        k = self.edge_count
        if k < 1 or self.vertex_count != k + 1:
            return None
        for v in range(self.vertex_count):
            if self.degree(v) == k:
                return v
        return None


@dataclass(frozen=True)
class Line:
    """A path given by its vertex sequence.

    A single vertex is a zero-edge line; those only appear inside the tree
    dynamic program and are rejected by feasibility checks.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if not vs:
            raise InvalidLine("a line needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise InvalidLine(f"line {vs} repeats a vertex")
        object.__setattr__(self, "vertices", vs)

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def key(self) -> tuple[int, ...]:
        """Orientation-free identity: the lexicographically smaller direction."""
        rev = self.vertices[::-1]
        return min(self.vertices, rev)

    def reversed(self) -> Line:
        return Line(self.vertices[::-1])

    def canonical(self) -> Line:
        return Line(self.key)

    def edge_indices(self, graph: Graph) -> tuple[int, ...]:
        for v in self.vertices:
            if not 0 <= v < graph.vertex_count:
                raise InvalidLine(f"line {self.vertices} uses unknown vertex {v}")
        out = []
        for u, v in zip(self.vertices, self.vertices[1:]):
            try:
                out.append(graph.edge_index[(u, v)])
            except KeyError:
                raise InvalidLine(
                    f"line {self.vertices}: {u} and {v} are not adjacent"
                ) from None
        return tuple(out)

    def __str__(self) -> str:
        return "-".join(map(str, self.vertices))


@dataclass(frozen=True)
class LineConcept:
    """Lines with positive integer frequencies.

    Lines are undirected: entries whose vertex sequences are equal up to
    reversal are merged by summing their frequencies. The first orientation
    seen is kept.
    """

    entries: tuple[tuple[Line, int], ...] = ()

    def __post_init__(self):
        merged: dict[tuple[int, ...], list] = {}
        for line, freq in self.entries:
            if not isinstance(line, Line):
                line = Line(tuple(line))
            if isinstance(freq, bool) or int(freq) != freq or freq < 1:
                raise InvalidLine(f"line {line} has invalid frequency {freq!r}")
            k = line.key
            if k in merged:
                merged[k][1] += int(freq)
            else:
                merged[k] = [line, int(freq)]
        object.__setattr__(
            self, "entries", tuple((line, f) for line, f in merged.values())
        )

    @classmethod
    def of(cls, pairs: Iterable[tuple[Sequence[int], int]]) -> LineConcept:
        """Build from ``(vertex_sequence, frequency)`` pairs; frequency 0 is dropped."""
        return cls(tuple((Line(tuple(vs)), f) for vs, f in pairs if f))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[Line, int]]:
        return iter(self.entries)

    @property
    def lines(self) -> tuple[Line, ...]:
        return tuple(line for line, _ in self.entries)

    def frequency_sum(self) -> int:
        return sum(f for _, f in self.entries)

    def sorted(self) -> LineConcept:
        """Canonical orientation, ordered by endpoint pair then vertex sequence."""
        items = [(line.canonical(), f) for line, f in self.entries]
        items.sort(key=lambda it: (min(it[0].ends), max(it[0].ends), it[0].vertices))
        return LineConcept(tuple(items))

    def same_as(self, other: LineConcept) -> bool:
        """Equality as a multiset of undirected lines."""
        a = {line.key: f for line, f in self.entries}
        b = {line.key: f for line, f in other.entries}
        return a == b


@dataclass(frozen=True)
class Instance:
    """A line planning instance on ``graph``.

    Per-edge data (``edge_cost``, ``fmin``, ``fmax``) is indexed like
    ``graph.edges``.
    """

    graph: Graph
    dfix: Fraction
    cfix: Fraction
    edge_cost: tuple[Fraction, ...]
    fmin: tuple[int, ...]
    fmax: tuple[int | float, ...]

    def __post_init__(self):
        m = self.graph.edge_count
        for name in ("edge_cost", "fmin", "fmax"):
            if len(getattr(self, name)) != m:
                raise InvalidInstance(f"{name} must have one entry per edge ({m})")
        object.__setattr__(self, "dfix", as_rational(self.dfix, "dfix"))
        object.__setattr__(self, "cfix", as_rational(self.cfix, "cfix"))
        object.__setattr__(
            self, "edge_cost", tuple(as_rational(c, "edge cost") for c in self.edge_cost)
        )
        fmin = tuple(as_bound(f, "fmin") for f in self.fmin)
        if any(f == INF for f in fmin):
            raise InvalidInstance("fmin must be finite")
        fmax = tuple(as_bound(f, "fmax") for f in self.fmax)
        for i, (lo, hi) in enumerate(zip(fmin, fmax)):
            if lo > hi:
                raise InvalidInstance(f"edge {i}: fmin {lo} exceeds fmax {hi}")
        object.__setattr__(self, "fmin", fmin)
        object.__setattr__(self, "fmax", fmax)

    @classmethod
    def build(
        cls,
        vertex_count: int,
        edges: Iterable[tuple],
        dfix=0,
        cfix=0,
    ) -> Instance:
        """Build from ``(u, v, cost, fmin, fmax)`` tuples."""
        rows = list(edges)
        graph = Graph(vertex_count, tuple((r[0], r[1]) for r in rows))
        return cls(
            graph,
            dfix,
            cfix,
            tuple(r[2] for r in rows),
            tuple(r[3] for r in rows),
            tuple(r[4] for r in rows),
        )

    def replace(self, **changes) -> Instance:
        fields = dict(
            graph=self.graph,
            dfix=self.dfix,
            cfix=self.cfix,
            edge_cost=self.edge_cost,
            fmin=self.fmin,
            fmax=self.fmax,
        )
        fields.update(changes)
        return Instance(**fields)

    def line_cost(self, line: Line) -> Fraction:
        """Per-unit-frequency cost: cfix plus the edge costs along the line."""
        return self.cfix + sum(
            (self.edge_cost[e] for e in line.edge_indices(self.graph)), Fraction(0)
        )


def total_frequency(concept: LineConcept, graph: Graph) -> tuple[int, ...]:
    """Sum of line frequencies on every edge, indexed like ``graph.edges``."""
    totals = [0] * graph.edge_count
    for line, f in concept:
        for e in line.edge_indices(graph):
            totals[e] += f
    return tuple(totals)


@dataclass(frozen=True)
class Violation:
    edge: int
    total: int
    fmin: int
    fmax: int | float


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.feasible


def is_feasible(concept: LineConcept, instance: Instance) -> FeasibilityReport:
    """Check the frequency bounds on every edge.

    Raises:
        InvalidLine: if a line is not a simple path of the instance graph or
            has no edge.
    """
    for line, _ in concept:
        if line.edge_count == 0:
            raise InvalidLine(f"zero-edge line at vertex {line.vertices[0]}")
    totals = total_frequency(concept, instance.graph)
    bad = tuple(
        Violation(e, t, instance.fmin[e], instance.fmax[e])
        for e, t in enumerate(totals)
        if not instance.fmin[e] <= t <= instance.fmax[e]
    )
    return FeasibilityReport(not bad, bad)


def concept_cost(concept: LineConcept, instance: Instance) -> Fraction:
    """``dfix * |L| + sum of f_l * (cfix + sum of c_e on l)``."""
    cost = instance.dfix * len(concept)
    for line, f in concept:
        cost += f * instance.line_cost(line)
    return cost


def line_ends_at(concept: LineConcept, v: int) -> int:
    """Frequency-weighted number of line ends at ``v``.

    A line contributes its frequency once per end at ``v``; a zero-edge line
    at ``v`` contributes its frequency once.
    """
    total = 0
    for line, f in concept:
        a, b = line.ends
        if a == v:
            total += f
        if b == v and line.edge_count > 0:
            total += f
    return total


def line_ends(concept: LineConcept) -> dict[int, int]:
    """``line_ends_at`` for every vertex that is an end of some line."""
    out: dict[int, int] = defaultdict(int)
    for line, f in concept:
        a, b = line.ends
        out[a] += f
        if line.edge_count > 0:
            out[b] += f
    return dict(out)

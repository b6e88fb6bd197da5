"""Line-oriented text formats for instances and line concepts.

Instance::

    # comment
    vertices 3
    dfix 0
    cfix 1
    edge 0 1 0 2 3
    edge 1 2 1/2 3 inf

Line concept::

    line 2 0 1 2
    line 1 1 2

Blank lines and everything after ``#`` are ignored. Rationals use the
``p/q`` notation of ``fractions.Fraction``; an unbounded ``fmax`` is ``inf``.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from .core import INF, Instance, Line, LineConcept
from .errors import LpalError, ParseError

log = logging.getLogger(__name__)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def _rational(tok: str, lineno: int, what: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} must be a rational, got {tok!r}", lineno) from None


def _bound(tok: str, lineno: int) -> int | float:
    if tok.lower() == "inf":
        return INF
    return _int(tok, lineno, "fmax")


def format_number(q) -> str:
    if q == INF:
        return "inf"
    return str(Fraction(q))


def parse_instance(text: str) -> Instance:
    n = None
    dfix = Fraction(0)
    cfix = Fraction(0)
    rows = []
    for lineno, toks in _tokens(text):
        key = toks[0]
        if key == "vertices":
            if len(toks) != 2:
                raise ParseError("expected 'vertices <n>'", lineno)
            n = _int(toks[1], lineno, "vertex count")
        elif key in ("dfix", "cfix"):
            if len(toks) != 2:
                raise ParseError(f"expected '{key} <rational>'", lineno)
            value = _rational(toks[1], lineno, key)
            if key == "dfix":
                dfix = value
            else:
                cfix = value
        elif key == "edge":
            if len(toks) != 6:
                raise ParseError("expected 'edge <u> <v> <c> <fmin> <fmax|inf>'", lineno)
            rows.append(
                (
                    _int(toks[1], lineno, "vertex"),
                    _int(toks[2], lineno, "vertex"),
                    _rational(toks[3], lineno, "edge cost"),
                    _int(toks[4], lineno, "fmin"),
                    _bound(toks[5], lineno),
                    lineno,
                )
            )
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)
    if n is None:
        raise ParseError("missing 'vertices' declaration")
    try:
        return Instance.build(n, (r[:5] for r in rows), dfix=dfix, cfix=cfix)
    except LpalError as exc:
        raise ParseError(str(exc)) from exc


def format_instance(instance: Instance, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or ()]
    out.append(f"vertices {instance.graph.vertex_count}")
    out.append(f"dfix {format_number(instance.dfix)}")
    out.append(f"cfix {format_number(instance.cfix)}")
    for i, (u, v) in enumerate(instance.graph.edges):
        out.append(
            f"edge {u} {v} {format_number(instance.edge_cost[i])} "
            f"{instance.fmin[i]} {format_number(instance.fmax[i])}"
        )
    return "\n".join(out) + "\n"


def parse_concept(text: str) -> LineConcept:
    """Parse a line concept; repeated lines are merged with a warning."""
    entries = []
    seen = set()
    for lineno, toks in _tokens(text):
        if toks[0] != "line":
            raise ParseError(f"unknown keyword {toks[0]!r}", lineno)
        if len(toks) < 3:
            raise ParseError("expected 'line <freq> <v0> ... <vk>'", lineno)
        freq = _int(toks[1], lineno, "frequency")
        if freq < 1:
            raise ParseError(f"frequency must be positive, got {freq}", lineno)
        try:
            line = Line(tuple(_int(t, lineno, "vertex") for t in toks[2:]))
        except LpalError as exc:
            raise ParseError(str(exc), lineno) from exc
        if line.key in seen:
            log.warning("line %d: duplicate line %s merged", lineno, line)
        seen.add(line.key)
        entries.append((line, freq))
    return LineConcept(tuple(entries))


def format_concept(concept: LineConcept, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or ()]
    for line, f in concept.sorted():
        out.append(f"line {f} " + " ".join(map(str, line.vertices)))
    return "\n".join(out) + "\n"

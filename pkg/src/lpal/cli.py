"""Command-line front end.

Every sub-command reads its instance from a file, or from stdin when no
path is given. Exit status is 0 on success, 1 for an infeasible instance
or concept or a negative decision, and 2 for usage, parse and
method-compatibility errors.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from fractions import Fraction
from typing import TextIO

from .core import Instance, LineConcept, concept_cost, is_feasible
from .errors import Infeasible, LpalError, MethodMismatch, ParseError, Timeout
from .formats import format_concept, format_instance, format_number, parse_concept, parse_instance
from .oracle import AUTO, OracleConfig, oracle_decide, oracle_solve
from .reductions import (
    PartialLatinSquare,
    PmppInstance,
    ThreePartitionInstance,
    instance_product,
    lift_fmax,
    pmpp_to_star,
    plsc_to_pmpp,
    three_partition_to_path,
)
from .star import solve_star
from .tree import solve_tree_dp, solve_tree_fixed_freq

log = logging.getLogger(__name__)

METHODS = ("star", "tree-dp", "tree-fixed", "oracle")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpal", description="Line planning on all lines.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def oracle_flags(p):
        p.add_argument("--cap", type=int, help="per-line frequency cap (default: auto)")
        p.add_argument("--timeout", type=float, help="oracle time budget in seconds")
        p.add_argument("--max-vertices", type=int, default=OracleConfig.max_vertices)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance", nargs="?")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--bound", type=int, help="line-end bound b for tree-dp")
    p.add_argument("--reconstruct", action="store_true", help="tree-dp: also build a concept")
    p.add_argument("--threshold", type=Fraction, help="decide whether cost <= threshold")
    p.add_argument("-o", "--output", help="write the concept here instead of stdout")
    oracle_flags(p)

    p = sub.add_parser("oracle", help="exact brute-force solve on a small graph")
    p.add_argument("instance", nargs="?")
    p.add_argument("--threshold", type=Fraction, help="decide whether cost <= threshold")
    p.add_argument("-o", "--output", help="write the concept here instead of stdout")
    oracle_flags(p)

    for name, text in (("check", "check feasibility and cost"), ("cost", "print the cost")):
        p = sub.add_parser(name, help=text)
        p.add_argument("instance")
        p.add_argument("concept", nargs="?", help="concept file (default: stdin)")

    gen = sub.add_parser("gen", help="generate an instance")
    kinds = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    p = kinds.add_parser("3part", help="path instance from a 3-Partition instance")
    p.add_argument("--set", type=_int_list, required=True, dest="values")
    p.add_argument("--p", type=int, required=True)
    p = kinds.add_parser("pmpp-star", help="star instance from a partition-packing instance")
    p.add_argument("--set", type=_int_list, required=True, dest="values")
    p.add_argument("--k", type=int, required=True)
    p = kinds.add_parser("plsc", help="star instance from a partial Latin square")
    p.add_argument("--file", help="grid file, 0 or '.' for empty cells (default: stdin)")
    p = kinds.add_parser("random-tree", help="random tree instance")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-fmax", type=int, default=4)
    p.add_argument("--cfix", type=Fraction, default=Fraction(1))
    p.add_argument("--fixed", action="store_true", help="fmin = fmax on every edge")

    tr = sub.add_parser("transform", help="transform instances")
    kinds = tr.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    p = kinds.add_parser("lift", help="make fmax unbounded, keeping the decision answer")
    p.add_argument("instance", nargs="?")
    p.add_argument("--k", type=Fraction, required=True)
    p = kinds.add_parser("product", help="glue copies of A into the antenna-free edges of B")
    p.add_argument("a")
    p.add_argument("b")
    return parser


class _Io:
    def __init__(self, stdin: TextIO, stdout: TextIO):
        self.stdin = stdin
        self.stdout = stdout
        self.stdin_used = False

    def read(self, path: str | None) -> str:
        if path is None or path == "-":
            if self.stdin_used:
                raise _Usage("stdin can only supply one input")
            self.stdin_used = True
            return self.stdin.read()
        with open(path) as fh:
            return fh.read()

    def instance(self, path):
        return parse_instance(self.read(path))

    def concept(self, path):
        return parse_concept(self.read(path))

    def write(self, text: str):
        self.stdout.write(text)


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        max_vertices=args.max_vertices,
        frequency_cap=AUTO if args.cap is None else args.cap,
        time_budget=args.timeout,
    )


def _check_method(method: str, instance: Instance):
    graph = instance.graph
    if method == "star" and graph.star_center() is None:
        raise MethodMismatch("method star needs a star graph")
    if method.startswith("tree") and not graph.is_tree():
        raise MethodMismatch(f"method {method} needs a tree")
    if method != "oracle" and instance.dfix != 0:
        raise MethodMismatch(f"method {method} needs dfix = 0")
    if method == "tree-fixed" and instance.fmin != instance.fmax:
        raise MethodMismatch("method tree-fixed needs fmin = fmax on every edge")


def _solve(args, io: _Io) -> int:
    instance = io.instance(args.instance)
    method = getattr(args, "method", "oracle")
    _check_method(method, instance)
    if method == "oracle" and args.threshold is not None:
        decision = oracle_decide(instance, args.threshold, _oracle_config(args))
        if decision.infeasible:
            io.write("infeasible\n")
        else:
            io.write(f"{'true' if decision else 'false'}\n")
        return 0 if decision else 1

    concept: LineConcept | None
    if method == "star":
        concept = solve_star(instance)
        cost = concept_cost(concept, instance)
    elif method == "tree-dp":
        cost, concept = solve_tree_dp(instance, args.bound, reconstruct=args.reconstruct)
    elif method == "tree-fixed":
        concept = solve_tree_fixed_freq(instance)
        cost = concept_cost(concept, instance)
    else:
        cost, concept = oracle_solve(instance, _oracle_config(args))
    log.info("method %s: cost %s", method, cost)

    if args.threshold is not None:
        answer = cost <= args.threshold
        io.write(f"{'true' if answer else 'false'} (cost {format_number(cost)})\n")
        return 0 if answer else 1

    comments = [f"cost {format_number(cost)}"]
    if concept is None:
        io.write(f"cost {format_number(cost)}\n")
    elif args.output:
        with open(args.output, "w") as fh:
            fh.write(format_concept(concept, comments))
        io.write(f"cost {format_number(cost)}\n")
    else:
        io.write(format_concept(concept, comments))
    return 0


def _check(args, io: _Io) -> int:
    instance = io.instance(args.instance)
    concept = io.concept(args.concept)
    try:
        report = is_feasible(concept, instance)
        cost = concept_cost(concept, instance)
    except LpalError as exc:
        io.write(f"invalid: {exc}\n")
        return 1
    if args.command == "cost":
        io.write(f"{format_number(cost)}\n")
        return 0
    if report:
        io.write(f"feasible, cost {format_number(cost)}\n")
        return 0
    io.write(f"infeasible, cost {format_number(cost)}\n")
    for v in report.violations:
        u, w = instance.graph.edges[v.edge]
        io.write(
            f"  edge {u} {w}: total {v.total} outside [{v.fmin}, {format_number(v.fmax)}]\n"
        )
    return 1


def parse_square(text: str) -> PartialLatinSquare:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        try:
            rows.append(tuple(0 if t == "." else int(t) for t in body))
        except ValueError:
            raise ParseError(f"expected colors or '.', got {raw.strip()!r}", lineno) from None
    try:
        return PartialLatinSquare(tuple(rows))
    except LpalError as exc:
        raise ParseError(str(exc)) from exc


def random_tree(
    n: int, rng: random.Random, max_fmax: int = 4, cfix=1, fixed: bool = False
) -> Instance:
    """Random labelled tree; vertex ``v > 0`` hangs off a uniform earlier vertex."""
    if n < 2:
        raise _Usage("a random tree needs at least 2 vertices")
    rows = []
    for v in range(1, n):
        fmax = rng.randint(0, max_fmax)
        fmin = fmax if fixed else rng.randint(0, fmax)
        rows.append((rng.randrange(v), v, rng.randint(0, 1), fmin, fmax))
    return Instance.build(n, rows, dfix=0, cfix=cfix)


def _gen(args, io: _Io) -> int:
    comments = []
    if args.kind == "3part":
        instance, k = three_partition_to_path(ThreePartitionInstance(args.values, args.p))
        comments.append(f"threshold {k}")
    elif args.kind == "pmpp-star":
        instance, k = pmpp_to_star(PmppInstance(args.values, args.k))
        comments.append(f"threshold {k}")
    elif args.kind == "plsc":
        pmpp = plsc_to_pmpp(parse_square(io.read(args.file)))
        instance, k = pmpp_to_star(pmpp)
        comments.append(f"threshold {k}")
    else:
        instance = random_tree(
            args.n, random.Random(args.seed), args.max_fmax, args.cfix, args.fixed
        )
        comments.append(f"seed {args.seed}")
    io.write(format_instance(instance, comments))
    return 0


def _transform(args, io: _Io) -> int:
    if args.kind == "lift":
        lifted, k = lift_fmax(io.instance(args.instance), args.k)
        io.write(format_instance(lifted, [f"threshold {format_number(k)}"]))
    else:
        product = instance_product(io.instance(args.a), io.instance(args.b))
        io.write(format_instance(product))
    return 0


_HANDLERS = {
    "solve": _solve,
    "oracle": _solve,
    "check": _check,
    "cost": _check,
    "gen": _gen,
    "transform": _transform,
}


def run(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    """Run one command and return its exit status."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        if args.verbose:
            logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
        return _HANDLERS[args.command](args, _Io(stdin, stdout))
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return 2
    except (Infeasible, Timeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (LpalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

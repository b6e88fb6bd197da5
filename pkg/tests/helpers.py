"""Shared fixtures: the worked examples and random instance generators."""
import random

from lpal.cli import random_tree
from lpal.core import INF, Instance
from lpal.reductions import (
    ThreePartitionInstance,
    three_partition_solution_to_concept,
    three_partition_to_path,
)

PATH_VALUES = (1, 2, 2, 4, 5, 6)
PATH_FMIN = (10, 20, 19, 17, 15, 11, 6)
PATH_GROUPS = [(4, 5, 1), (2, 2, 6)]


def partition_path():
    tp = ThreePartitionInstance(PATH_VALUES, 2)
    instance, k = three_partition_to_path(tp)
    concept = three_partition_solution_to_concept(tp, PATH_GROUPS)
    return tp, instance, k, concept


def star(demands, cfix=1, dfix=0, costs=None, fmax=None):
    """Star with center 0 and leaf i+1 on edge i."""
    costs = costs or [0] * len(demands)
    fmax = fmax or demands
    rows = [(0, i + 1, c, f, hi) for i, (c, f, hi) in enumerate(zip(costs, demands, fmax))]
    return Instance.build(len(demands) + 1, rows, dfix=dfix, cfix=cfix)


def four_leaf_star():
    return star((5, 3, 4, 2))


def path(demands, cfix=1, dfix=0, fmax=None):
    fmax = fmax or demands
    rows = [(i, i + 1, 0, f, hi) for i, (f, hi) in enumerate(zip(demands, fmax))]
    return Instance.build(len(demands) + 1, rows, dfix=dfix, cfix=cfix)


def random_dp_tree(rng: random.Random, fixed=False, max_n=7, max_f=4):
    """Random tree with n <= max_n, cfix in {0,1,2}, edge costs in {0,1}."""
    n = rng.randint(2, max_n)
    return random_tree(n, rng, max_f, rng.choice((0, 1, 2)), fixed)


def _unit(n, rows):
    return Instance.build(n, [(u, v, 0, f, INF) for u, v, f in rows], dfix=0, cfix=1)


def product_factors():
    """The two factors of the product example.

    Left factor: triangle 0-1-2 with the base 0-1 not required, pendants
    3 (at 0) and 4 (at 1). Right factor: same shape, only the base and the
    pendants required.
    """
    left = _unit(5, [(0, 1, 0), (1, 2, 1), (2, 0, 1), (0, 3, 1), (1, 4, 1)])
    right = _unit(5, [(0, 1, 1), (1, 2, 0), (2, 0, 0), (0, 3, 1), (1, 4, 1)])
    return left, right


def two_line_factor():
    """Nice instance needing two lines: three required edges meet at vertex 1."""
    return _unit(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (3, 4, 0), (4, 1, 0)])

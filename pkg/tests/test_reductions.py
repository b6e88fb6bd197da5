import itertools
import random

import pytest

from lpal.core import INF, concept_cost, is_feasible
from lpal.errors import (
    BadPartition,
    HypothesisViolated,
    InvalidInstance,
    InvalidSolution,
    NotDivisible,
    NotNice,
    TooLarge,
)
from lpal.oracle import OracleConfig, oracle_decide
from lpal.reductions import (
    PartialLatinSquare,
    PmppInstance,
    PmppSolution,
    ThreePartitionInstance,
    brute_force_pmpp,
    brute_force_three_partition,
    find_antennae,
    instance_product,
    is_nice,
    lift_fmax,
    plsc_encoding,
    plsc_to_pmpp,
    pmpp_solution_to_concept,
    pmpp_to_star,
    three_partition_solution_to_concept,
    three_partition_to_path,
)

from helpers import PATH_FMIN, partition_path, product_factors, path, star, two_line_factor


def test_partition_path():
    tp, inst, k, concept = partition_path()
    assert inst.graph.vertex_count == 8 and inst.fmin == PATH_FMIN == inst.fmax
    assert (inst.dfix, inst.cfix, k) == (1, 0, 6)
    assert sorted(f for _, f in concept) == [1, 2, 2, 4, 5, 6]
    assert is_feasible(concept, inst) and concept_cost(concept, inst) == 6


def test_small_path_and_single_group():
    tp = ThreePartitionInstance((1, 1, 1), 1)
    inst, k = three_partition_to_path(tp)
    assert inst.fmin == (3, 2, 1) and k == 3 and inst.graph.vertex_count == 4
    concept = three_partition_solution_to_concept(tp, [(1, 1, 1)])
    assert all(line.canonical().vertices[0] == 0 for line in concept.lines)
    assert is_feasible(concept, inst)


def test_three_partition_errors():
    with pytest.raises(NotDivisible):
        ThreePartitionInstance((1, 1, 2, 1, 1, 1), 2)
    tp = ThreePartitionInstance((1, 2, 2, 4, 5, 6), 2)
    with pytest.raises(BadPartition):
        three_partition_solution_to_concept(tp, [(4, 5, 2), (1, 2, 6)])
    with pytest.raises(BadPartition):
        three_partition_solution_to_concept(tp, [(4, 5, 1)])
    with pytest.raises(BadPartition):
        three_partition_solution_to_concept(tp, [(4, 5, 1), (4, 5, 1)])


@pytest.mark.parametrize("seed", range(30))
def test_random_partitions_give_feasible_concepts(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 3)
    groups = []
    for _ in range(p):
        a, b = sorted(rng.sample(range(1, 12), 2))
        groups.append((a, b - a, 12 - b))
    values = [x for g in groups for x in g]
    rng.shuffle(values)
    tp = ThreePartitionInstance(values, p)
    inst, k = three_partition_to_path(tp)
    assert inst.fmin[-1] == values[-1] > 0
    concept = three_partition_solution_to_concept(tp, groups)
    assert is_feasible(concept, inst) and concept_cost(concept, inst) == k


def test_brute_force_three_partition():
    assert brute_force_three_partition(ThreePartitionInstance((1, 2, 2, 4, 5, 6), 2))
    assert brute_force_three_partition(ThreePartitionInstance((2, 2, 4, 6, 6, 6), 2)) is None
    groups = brute_force_three_partition(ThreePartitionInstance((1, 1, 4, 2, 2, 2), 2), True)
    assert sorted(len(g) for g in groups) == [3, 3]


def test_pmpp_star():
    inst, k = pmpp_to_star(PmppInstance((5, 3, 4, 2), 1))
    assert inst.fmin == (5, 3, 4, 2) == inst.fmax and k == 3 and inst.dfix == 1
    inst, k = pmpp_to_star(PmppInstance((1,), 0))
    assert inst.graph.edge_count == 1 and k == 1
    inst, k = pmpp_to_star(PmppInstance((2, 3, 5), 1))
    assert oracle_decide(inst, k)


def test_pmpp_instance_is_a_set():
    with pytest.raises(InvalidInstance):
        PmppInstance((2, 2, 4), 1)
    with pytest.raises(InvalidInstance):
        PmppInstance((0, 2), 1)


def test_packing_concept_examples():
    inst, k = pmpp_to_star(PmppInstance((5, 2, 3), 1))
    concept = pmpp_solution_to_concept(PmppSolution([((5,), (2, 3))]), inst)
    assert {line.key: f for line, f in concept} == {(1, 0, 2): 2, (1, 0, 3): 3}
    assert len(concept) == 2 == k
    inst, _ = pmpp_to_star(PmppInstance((4,), 0))
    concept = pmpp_solution_to_concept(PmppSolution(()), inst)
    assert [(line.edge_count, f) for line, f in concept] == [(1, 4)]


def test_invalid_pmpp_solutions():
    inst, _ = pmpp_to_star(PmppInstance((5, 2, 3, 7), 1))
    for bad in ([((5,), (2,))], [((5,), ())], [((5,), (2, 3)), ((7,), (5,))], [((9,), (9,))]):
        with pytest.raises(InvalidSolution):
            pmpp_solution_to_concept(PmppSolution(bad), inst)


def test_brute_force_pmpp():
    sol = brute_force_pmpp(PmppInstance((2, 3, 5), 1))
    assert sol is not None and len(sol.pairs) == 1
    assert sorted(map(sorted, sol.pairs[0])) == [[2, 3], [5]]
    assert brute_force_pmpp(PmppInstance((1, 2, 4), 1)) is None
    assert brute_force_pmpp(PmppInstance((1, 2, 4), 0)).pairs == ()
    with pytest.raises(TooLarge):
        brute_force_pmpp(PmppInstance(tuple(range(1, 14)), 1))


def test_plsc_two_by_two():
    square = PartialLatinSquare(((0, 2), (2, 1)))
    enc = plsc_encoding(square)
    assert enc == {9: ("x", 1, 1), 101: ("y", 1, 1), 110: ("z", 1, 1)}
    assert 9 + 101 == 110
    pmpp = plsc_to_pmpp(square)
    assert sorted(pmpp.values) == [9, 101, 110] and pmpp.k == 1


def test_plsc_complete_and_invalid():
    assert plsc_to_pmpp(PartialLatinSquare(((1, 2), (2, 1)))) == PmppInstance((), 0)
    with pytest.raises(InvalidInstance):
        PartialLatinSquare(((1, 1), (0, 0)))


def _triples_that_split(values):
    out = set()
    for t in itertools.combinations(values, 3):
        for x in t:
            if 2 * x == sum(t):
                out.add(frozenset(t))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_plsc_encoding_triples(seed):
    rng = random.Random(seed)
    p = rng.randint(2, 3)
    base = [[(r + c) % p + 1 for c in range(p)] for r in range(p)]
    cells = tuple(tuple(0 if rng.random() < 0.5 else x for x in row) for row in base)
    square = PartialLatinSquare(cells)
    enc = plsc_encoding(square)
    assert len(enc) == 3 * square.empty_cells
    assert min(enc, default=4 * p - 1) >= 4 * p - 1
    for triple in _triples_that_split(enc):
        labels = sorted(enc[x] for x in triple)
        (_, k, c1), (_, l1, c2), (_, k2, l2) = labels
        assert [t for t, _, _ in labels] == ["x", "y", "z"]
        assert c1 == c2 and k == k2 and l1 == l2


def test_lift_fmax():
    _, inst, k, _ = partition_path()
    lifted, k2 = lift_fmax(inst, k)
    assert k2 == 692 == 6 + 7 * sum(PATH_FMIN)
    assert set(lifted.edge_cost) == {7} and set(lifted.fmax) == {INF}
    empty = path((0, 0), cfix=0, dfix=1)
    assert lift_fmax(empty, 0)[1] == 0
    small = path((1, 1), cfix=0, dfix=1)
    lifted, k2 = lift_fmax(small, 1)
    assert oracle_decide(small, 1) and oracle_decide(lifted, k2)


def test_lift_hypotheses():
    with pytest.raises(HypothesisViolated):
        lift_fmax(path((1, 1), cfix=1), 1)
    with pytest.raises(HypothesisViolated):
        lift_fmax(path((1, 1), cfix=0, fmax=(1, 2)), 1)


def test_antennae():
    two = path((1, 1))
    assert sorted(a.tip for a in find_antennae(two)) == [0, 2]
    assert len(find_antennae(star((1, 1, 1, 1)))) == 4
    left, right = product_factors()
    assert sorted(a.tip for a in find_antennae(left)) == [3, 4]
    assert is_nice(left) and is_nice(right)
    # both ends of a lone required edge are tips
    assert len(find_antennae(path((1,)))) == 2


def test_product_shape():
    left, right = product_factors()
    product = instance_product(left, right)
    assert product.graph.vertex_count == 5 + 3 * 3
    assert product.graph.edge_count == 2 + 3 * 5
    assert product.graph.vertex_count <= 25
    assert len(find_antennae(product)) == 2
    cfg = OracleConfig(max_vertices=20)
    assert oracle_decide(product, 1, cfg)


def test_product_of_mixed_factors():
    left, right = product_factors()
    bad = two_line_factor()
    cfg = OracleConfig(max_vertices=20)
    assert is_nice(bad) and not oracle_decide(bad, 1, cfg)
    assert not oracle_decide(instance_product(bad, right), 1, cfg)
    assert not oracle_decide(instance_product(left, bad), 1, cfg)


def test_product_errors():
    left, right = product_factors()
    with pytest.raises(NotNice):
        instance_product(star((1, 1, 1)), right)
    with pytest.raises(NotNice):
        instance_product(left, star((1, 1, 1)))
    with pytest.raises(InvalidInstance):
        instance_product(left, right.replace(cfix=2))

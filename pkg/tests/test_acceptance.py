"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""
import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lpal.core import concept_cost, is_feasible, total_frequency  # noqa: E402
from lpal.oracle import OracleConfig, oracle_decide, oracle_solve  # noqa: E402
from lpal.reductions import (  # noqa: E402
    PmppInstance,
    PmppSolution,
    ThreePartitionInstance,
    brute_force_pmpp,
    brute_force_three_partition,
    find_antennae,
    instance_product,
    lift_fmax,
    pmpp_solution_to_concept,
    pmpp_to_star,
    three_partition_to_path,
)
from lpal.star import solve_star  # noqa: E402
from lpal.tree import solve_tree_dp, solve_tree_fixed_freq  # noqa: E402

from helpers import (  # noqa: E402
    PATH_FMIN,
    partition_path,
    four_leaf_star,
    product_factors,
    path,
    random_dp_tree,
    star,
    two_line_factor,
)
from lpal.cli import random_tree  # noqa: E402


def _emit(line: str, capsys=None):
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        print(f"\n{line}")


def _run(number: int, title: str, body, capsys=None):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # an error counts as a failed criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    status = "PASS" if ok else "FAIL"
    _emit(f"criterion {number:2d} {status}  {title}: {detail} [{elapsed:.2f}s]", capsys)
    return ok


# -- criteria ---------------------------------------------------------------------


def partition_path_fixture():
    start = time.perf_counter()
    _, inst, k, concept = partition_path()
    checks = [
        inst.fmin == PATH_FMIN,
        k == 6,
        bool(is_feasible(concept, inst)),
        concept_cost(concept, inst) == 6,
        bool(oracle_decide(inst, 6)),
        not oracle_decide(inst, 5),
    ]
    elapsed = time.perf_counter() - start
    return all(checks) and elapsed < 5, f"checks {checks}, {elapsed:.2f}s < 5s"


def four_leaf_star_fixture():
    start = time.perf_counter()
    inst = four_leaf_star()
    concept = solve_star(inst)
    one_edge = [f for line, f in concept if line.edge_count == 1]
    oracle_cost = oracle_solve(inst)[0]
    cost = concept_cost(concept, inst)
    elapsed = time.perf_counter() - start
    ok = concept.frequency_sum() == 7 and not one_edge and cost == oracle_cost and elapsed < 1
    return ok, f"sum f = {concept.frequency_sum()}, one-edge {one_edge}, cost {cost} vs oracle {oracle_cost}"


def star_equivalence():
    start = time.perf_counter()
    cases = mismatches = 0
    for leaves in range(2, 6):
        for demands in itertools.product(range(5), repeat=leaves):
            inst = star(demands)
            if concept_cost(solve_star(inst), inst) != oracle_solve(inst)[0]:
                mismatches += 1
            cases += 1
    elapsed = time.perf_counter() - start
    return mismatches == 0 and elapsed < 300, f"{cases} stars, {mismatches} mismatches"


def tree_dp_equivalence():
    rng = random.Random(2024)
    cases = bad = 0
    for _ in range(150):
        inst = random_dp_tree(rng, max_n=7, max_f=4)
        cost, concept = solve_tree_dp(inst, reconstruct=True)
        if cost != oracle_solve(inst)[0]:
            bad += 1
        elif not is_feasible(concept, inst) or concept_cost(concept, inst) != cost:
            bad += 1
        cases += 1
    return bad == 0, f"{cases} trees, {bad} disagreements"


def fixed_frequency_agreement():
    rng = random.Random(77)
    cases = bad = 0
    for _ in range(150):
        inst = random_dp_tree(rng, fixed=True, max_n=7, max_f=5)
        a = concept_cost(solve_tree_fixed_freq(inst), inst)
        b = solve_tree_dp(inst)[0]
        c = oracle_solve(inst)[0]
        bad += not (a == b == c)
        cases += 1
    return bad == 0, f"{cases} trees, {bad} disagreements"


def reduction_equivalences():
    start = time.perf_counter()
    tp_cases = tp_bad = 0
    for values in itertools.combinations_with_replacement(range(1, 7), 6):
        if sum(values) % 2:
            continue
        tp = ThreePartitionInstance(values, 2)
        inst, k = three_partition_to_path(tp)
        yes = brute_force_three_partition(tp) is not None
        tp_bad += yes != bool(oracle_decide(inst, k))
        tp_cases += 1
    pm_cases = pm_bad = 0
    for size in range(1, 7):
        for values in itertools.combinations(range(1, 13), size):
            for k in range(0, size // 2 + 1):
                pm = PmppInstance(values, k)
                inst, threshold = pmpp_to_star(pm)
                yes = brute_force_pmpp(pm) is not None
                pm_bad += yes != bool(oracle_decide(inst, threshold))
                pm_cases += 1
    elapsed = time.perf_counter() - start
    ok = tp_bad == pm_bad == 0 and tp_cases >= 200 and pm_cases >= 200 and elapsed < 600
    return ok, (
        f"3-Partition {tp_cases} cases ({tp_bad} bad), "
        f"partition packing {pm_cases} cases ({pm_bad} bad)"
    )


def fmax_lifting():
    rng = random.Random(5)
    cases = bad = 0
    while cases < 60:
        m = rng.randint(1, 4)
        demands = tuple(rng.randint(0, 3) for _ in range(m))
        shape = rng.choice((path, star))
        inst = shape(demands, cfix=0, dfix=1)
        opt = oracle_solve(inst)[0]
        for k in {max(opt - 1, 0), opt}:
            lifted, k2 = lift_fmax(inst, k)
            if k2 != k + (k + 1) * sum(demands):
                bad += 1
            bad += bool(oracle_decide(inst, k)) != bool(oracle_decide(lifted, k2))
            cases += 1
    return bad == 0, f"{cases} decisions, {bad} disagreements"


def complexity_smoke():
    rng = random.Random(8)
    inst = star(tuple(rng.randint(0, 50) for _ in range(200)))
    start = time.perf_counter()
    solve_star(inst)
    t_star = time.perf_counter() - start

    def dp_time(n):
        tree = random_tree(n, random.Random(n), 8, 1)
        best = float("inf")
        for _ in range(3):
            start = time.perf_counter()
            solve_tree_dp(tree, 8)
            best = min(best, time.perf_counter() - start)
        return best

    t_10k = dp_time(10_000)
    t_20k = dp_time(20_000)
    ratio = t_20k / t_10k
    ok = t_star < 1 and t_10k < 10 and ratio <= 2.5
    return ok, f"star {t_star:.3f}s, dp n=10000 {t_10k:.2f}s, doubling ratio {ratio:.2f}"


def packing_concept_contract():
    rng = random.Random(9)
    cases = bad = 0
    while cases < 150:
        values = tuple(rng.sample(range(1, 25), rng.randint(2, 8)))
        best = brute_force_pmpp(PmppInstance(values, 1))
        if best is None:
            continue
        pairs = [p for p in best.pairs if rng.random() < 0.8]
        sol = PmppSolution(pairs)
        inst, threshold = pmpp_to_star(PmppInstance(values, len(pairs)))
        concept = pmpp_solution_to_concept(sol, inst)
        ok = is_feasible(concept, inst) and total_frequency(concept, inst.graph) == inst.fmin
        bad += not ok or len(concept) > threshold
        cases += 1
    return bad == 0, f"{cases} solutions, {bad} violations"


def product_fixture():
    left, right = product_factors()
    cfg = OracleConfig(max_vertices=20)
    product = instance_product(left, right)
    antennae = len(find_antennae(product))
    one_line = bool(oracle_decide(product, 1, cfg))
    bad = two_line_factor()
    mixed = [
        bool(oracle_decide(instance_product(bad, right), 1, cfg)),
        bool(oracle_decide(instance_product(left, bad), 1, cfg)),
    ]
    ok = antennae == 2 and one_line and not any(mixed) and not oracle_decide(bad, 1, cfg)
    return ok, f"{antennae} antennae, one line solves product: {one_line}, mixed products: {mixed}"


CRITERIA = [
    (1, "three-partition path fixture", partition_path_fixture),
    (2, "four-leaf star fixture", four_leaf_star_fixture),
    (3, "exhaustive star equivalence", star_equivalence),
    (4, "tree DP equals oracle", tree_dp_equivalence),
    (5, "fixed-frequency agreement", fixed_frequency_agreement),
    (6, "reduction equivalences", reduction_equivalences),
    (7, "fmax lifting", fmax_lifting),
    (8, "complexity smoke tests", complexity_smoke),
    (9, "partition-packing concept contract", packing_concept_contract),
    (10, "instance product", product_fixture),
]


@pytest.mark.parametrize("number, title, body", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, body, capsys):
    assert _run(number, title, body, capsys)


if __name__ == "__main__":
    results = [_run(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)

from fractions import Fraction

import pytest

from isoreg import (CycleDetected, Dag, Metric, WeightedFunction, isotonic_check, prune_nonviolating,
                    regression_error, topological_order)
from isoreg.errors import InvalidDelta, InvalidP

DIAMOND = Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_topological_order_examples():
    assert topological_order(Dag.chain(3)) == [0, 1, 2]
    assert topological_order(Dag(3, [(2, 0), (0, 1)])) == [2, 0, 1]
    with pytest.raises(CycleDetected) as info:
        Dag(2, [(0, 1), (1, 0)])
    assert sorted(info.value.cycle) == [0, 1]


def test_cycle_witness_is_a_cycle():
    edges = [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]
    with pytest.raises(CycleDetected) as info:
        Dag(5, edges)
    cyc = info.value.cycle
    assert len(cyc) == 3
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert (a, b) in edges


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (0, 1)], [(0, 2)], [(-1, 0)]])
def test_dag_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Dag(2, edges)


def test_weighted_function_validation():
    with pytest.raises(ValueError):
        WeightedFunction([1, 2], [1, -1])
    with pytest.raises(ValueError):
        WeightedFunction([1, 2], [1])
    with pytest.raises(TypeError):
        WeightedFunction([1.5], [1])
    with pytest.raises(OverflowError):
        WeightedFunction([2**40, 0], [2**30, 1])


def test_prune_examples():
    sub, kept, fixed = prune_nonviolating(Dag.chain(3), WeightedFunction.unweighted([0, 1, 2]))
    assert kept == [] and fixed == {0: 0, 1: 1, 2: 2} and sub.n == 0
    sub, kept, fixed = prune_nonviolating(Dag.chain(2), WeightedFunction.unweighted([1, 0]))
    assert kept == [0, 1] and fixed == {}
    sub, kept, fixed = prune_nonviolating(Dag.chain(5), WeightedFunction.unweighted([0, 5, 3, 4, 9]))
    assert kept == [1, 2, 3] and fixed == {0: 0, 4: 9}
    assert sub.edges == ((0, 1), (1, 2))


def test_prune_uses_reachability_not_just_edges():
    # 0 -> 1 -> 2 with f = (5, 9, 0): vertex 1 sits above 0 and below 2, and violates with 2
    sub, kept, _ = prune_nonviolating(Dag.chain(3), WeightedFunction.unweighted([5, 9, 0]))
    assert kept == [0, 1, 2]


def test_isotonic_check_examples():
    assert isotonic_check(Dag.chain(2), [1, 1]) == []
    assert isotonic_check(Dag.chain(2), [1, 0]) == [(0, 1)]
    assert isotonic_check(DIAMOND, [0, 2, 1, 3]) == []
    with pytest.raises(ValueError):
        isotonic_check(DIAMOND, [0, 1])


def test_regression_error_examples():
    assert regression_error(WeightedFunction.unweighted([1, 0]), [1, 1], "L0") == 1
    err = regression_error(WeightedFunction.unweighted([1, 0]), [Fraction(1, 2), Fraction(1, 2)], "L2")
    assert err == Fraction(1, 2)
    assert regression_error(WeightedFunction([1, 0], [3, 1]), [1, 1], "L1") == 1
    assert regression_error(WeightedFunction.unweighted([0, 2]), [1, 1], Metric("Lp", p=3, delta=0.1)) == 2.0


def test_metric_validation():
    assert Metric("l2").p == 2 and Metric("lp", p=1.5, delta=0.1).kind == "Lp"
    with pytest.raises(InvalidP):
        Metric("Lp", p=1, delta=0.1)
    with pytest.raises(InvalidDelta):
        Metric("Lp", p=2, delta=0)
    with pytest.raises(ValueError):
        Metric("Linf")


def test_components_and_induced():
    dag = Dag(5, [(0, 1), (2, 3)])
    assert sorted(map(sorted, dag.components())) == [[0, 1], [2, 3], [4]]
    assert dag.induced([1, 2, 3]).edges == ((1, 2),)

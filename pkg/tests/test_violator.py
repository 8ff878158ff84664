import numpy as np
import pytest

from isoreg import (Dag, PointSet, SteinerCoordinate, WeightedFunction, box_contains, boxes_to_domination,
                    rendezvous_violator, steiner_relation, transitive_closure, violator_closure,
                    violator_pairwise)
from isoreg.errors import OrderViolation
from isoreg.violator import SteinerRelation, comparison_matrix

DIAMOND = Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def pairs(mat):
    return set(zip(*map(lambda a: a.tolist(), np.nonzero(mat))))


def test_transitive_closure_examples():
    assert pairs(transitive_closure(Dag.chain(3))) == {(0, 1), (0, 2), (1, 2)}
    assert pairs(transitive_closure(Dag(2))) == set()
    assert pairs(transitive_closure(DIAMOND)) == {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}


def test_violator_closure_examples():
    vd = violator_closure(Dag.chain(3), WeightedFunction.unweighted([2, 1, 0]))
    assert vd.edge_set() == {(0, 1), (0, 2), (1, 2)} and vd.steiner_count == 0
    assert violator_closure(Dag.chain(3), WeightedFunction.unweighted([0, 1, 2])).m_hat == 0
    vd = violator_closure(DIAMOND, WeightedFunction.unweighted([3, 1, 2, 0]))
    assert vd.edge_set() == {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}


def test_violator_pairwise_examples():
    r, s, t = ((1, 1), (2, 2)), ((0, 0), (3, 3)), ((-1, -1), (4, 4))
    boxes = [r, s, t]
    vd = violator_pairwise(boxes, lambda a, b: box_contains(b, a), WeightedFunction.unweighted([3, 2, 1]))
    assert vd.edge_set() == {(0, 1), (0, 2), (1, 2)}
    divides = lambda a, b: a != b and b % a == 0  # noqa: E731
    assert violator_pairwise([2, 3, 5], divides, WeightedFunction.unweighted([5, 1, 0])).m_hat == 0
    substr = lambda a, b: a != b and a in b  # noqa: E731
    vd = violator_pairwise(["a", "ab", "abc"], substr, WeightedFunction.unweighted([3, 2, 1]))
    assert vd.edge_set() == {(0, 1), (0, 2), (1, 2)}


def test_comparator_spot_check():
    with pytest.raises(OrderViolation):
        comparison_matrix([0, 1], lambda a, b: True, debug=True)
    # "differs by exactly one" is not transitive
    with pytest.raises(OrderViolation):
        comparison_matrix(list(range(4)), lambda a, b: b - a == 1, debug=True)


def test_steiner_relation_examples():
    assert steiner_relation("00", SteinerCoordinate.parse("0*")) is SteinerRelation.BELOW
    assert steiner_relation("01", SteinerCoordinate.parse("**")) is SteinerRelation.BELOW
    assert steiner_relation("10", SteinerCoordinate.parse("**")) is SteinerRelation.ABOVE
    assert steiner_relation("11", SteinerCoordinate.parse("0*")) is SteinerRelation.NEITHER
    assert steiner_relation("01", SteinerCoordinate.parse("01")) is SteinerRelation.EQUAL
    with pytest.raises(ValueError):
        steiner_relation("0", SteinerCoordinate.parse("0*"))
    with pytest.raises(ValueError):
        SteinerCoordinate.parse("*0")
    assert str(SteinerCoordinate(3, "1")) == "1**"


def test_rendezvous_examples():
    pts = PointSet(np.array([[0, 0], [1, 1]]), WeightedFunction.unweighted([3, 1]))
    vd = rendezvous_violator(pts)
    vd.validate()
    assert vd.reachable_pairs() == {(0, 1)}
    mids = [s for (a, s) in vd.edge_set() if a == 0]
    assert any((s, 1) in vd.edge_set() for s in mids)

    iso = PointSet(np.array([[0, 0], [1, 1], [2, 0]]), WeightedFunction.unweighted([0, 1, 2]))
    assert rendezvous_violator(iso).reachable_pairs() == set()

    line = PointSet(np.array([[0], [1], [2]]), WeightedFunction.unweighted([2, 1, 0]))
    expected = violator_closure(Dag.chain(3), line.wf).edge_set()
    assert rendezvous_violator(line).reachable_pairs() == expected


def test_rendezvous_duplicates_and_ties():
    # identical points are incomparable; equal values never violate
    pts = PointSet(np.array([[1, 1], [1, 1], [2, 2]]), WeightedFunction.unweighted([5, 3, 3]))
    assert rendezvous_violator(pts).reachable_pairs() == {(0, 2)}


def test_boxes_to_domination_examples():
    pts = boxes_to_domination(np.array([[1, 1], [0, 0]]), np.array([[2, 2], [3, 3]]))
    dag = pts.domination_dag()
    assert dag.edges == ((0, 1),)
    same = boxes_to_domination(np.array([[0, 0], [0, 0]]), np.array([[1, 1], [1, 1]]))
    assert same.domination_dag().m == 0
    apart = boxes_to_domination(np.array([[0, 0], [2, 2]]), np.array([[1, 1], [3, 3]]))
    assert apart.domination_dag().m == 0
    with pytest.raises(ValueError):
        boxes_to_domination(np.array([[2, 0]]), np.array([[1, 1]]))


def test_box_contains_is_strict():
    a = (np.array([0, 0]), np.array([2, 2]))
    b = (np.array([0, 0]), np.array([1, 2]))
    assert box_contains(a, b) and not box_contains(b, a) and not box_contains(a, a)


def test_drop_isolated_renumbers():
    vd = violator_closure(Dag.chain(4), WeightedFunction.unweighted([0, 3, 2, 5]))
    small, kept = vd.drop_isolated()
    assert kept == [1, 2] and small.edge_set() == {(0, 1)}


def test_point_set_ranks():
    ps = PointSet(np.array([[10, 5], [30, 5], [20, 7]]))
    assert ps.ranks.tolist() == [[0, 0], [2, 0], [1, 1]]

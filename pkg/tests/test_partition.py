import random
from fractions import Fraction

import numpy as np
import pytest

from isoreg import (Dag, PointSet, WeightedFunction, binary_l1, isotonic_check, l1_regress, l2_exact,
                    lp_approx, oracle_l2_maxmin, oracle_regress, weighted_p_mean)
from isoreg.errors import InvalidDelta, InvalidP

from _util import random_dag, random_wf

HALF = Fraction(1, 2)


def test_binary_l1_examples():
    labels, cost = binary_l1(Dag.chain(2), [1, 0], [1, 1])
    assert cost == 1 and labels in ([0, 0], [1, 1])
    assert binary_l1(Dag.chain(4), [1, 0, 1, 0], [1, 1, 1, 1])[1] == 2
    assert binary_l1(Dag.chain(2), [1, 0], [3, 1]) == ([1, 1], 1)
    with pytest.raises(ValueError):
        binary_l1(Dag.chain(2), [2, 0], [1, 1])


def test_l1_examples():
    r = l1_regress(Dag.chain(3), WeightedFunction.unweighted([2, 1, 0]))
    assert r.values == [1, 1, 1] and r.error == 2
    r = l1_regress(Dag.chain(2), WeightedFunction.unweighted([1, 0]))
    assert r.error == 1 and r.values[0] == r.values[1] in (0, 1)
    r = l1_regress(Dag.chain(3), WeightedFunction.unweighted([0, 4, 7]))
    assert r.values == [0, 4, 7] and r.error == 0


def test_lp_examples():
    r = lp_approx(Dag.chain(2), WeightedFunction.unweighted([1, 0]), p=3, delta=0.25)
    assert r.values[0] == r.values[1] and Fraction(1, 4) <= r.values[0] <= Fraction(3, 4)
    r = lp_approx(Dag.chain(2), WeightedFunction.unweighted([1, 0]), p=2, delta=0.125)
    assert all(abs(v - HALF) <= Fraction(1, 8) for v in r.values)
    for p in (1.5, 2, 4):
        r = lp_approx(Dag.chain(3), WeightedFunction.unweighted([0, 3, 5]), p=p, delta=0.1)
        assert r.values == [0, 3, 5] and r.error == 0


def test_lp_validation():
    wf = WeightedFunction.unweighted([1, 0])
    with pytest.raises(InvalidP):
        lp_approx(Dag.chain(2), wf, p=1, delta=0.1)
    with pytest.raises(InvalidDelta):
        lp_approx(Dag.chain(2), wf, p=2, delta=0)
    with pytest.raises(ValueError):
        lp_approx(Dag.chain(2), wf, p=1.5, delta=0.1, weight_scale=None)


def test_lp_default_delta_and_exact_weights():
    wf = WeightedFunction([4, 0, 2], [1, 2, 1])
    r = lp_approx(Dag.chain(3), wf, p=3)
    assert r.diagnostics["delta"] == Fraction(4, 2**20)
    exact = lp_approx(Dag.chain(3), wf, p=3, delta=Fraction(1, 64), weight_scale=None)
    scaled = lp_approx(Dag.chain(3), wf, p=3, delta=Fraction(1, 64))
    assert exact.values == scaled.values


def test_l2_examples():
    assert l2_exact(Dag.chain(2), WeightedFunction.unweighted([1, 0])).values == [HALF, HALF]
    assert l2_exact(Dag.chain(2), WeightedFunction([1, 0], [3, 1])).values == [Fraction(3, 4)] * 2
    assert l2_exact(Dag.chain(3), WeightedFunction.unweighted([2, 1, 0])).values == [1, 1, 1]


def test_l2_zero_weights():
    r = l2_exact(Dag.chain(3), WeightedFunction([2, 9, 0], [1, 0, 1]))
    assert r.values[0] == r.values[2] == 1 and r.values[1] == 1
    r = l2_exact(Dag.chain(2), WeightedFunction([1, 0], [0, 0]))
    assert r.error == 0 and isotonic_check(Dag.chain(2), r.values) == []


def test_l2_on_points_matches_oracle():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(1, 8))
        pts = PointSet(rng.integers(0, 3, (n, 2)))
        wf = WeightedFunction(rng.integers(0, 5, n).tolist(), rng.integers(1, 4, n).tolist())
        assert l2_exact(pts, wf).values == oracle_l2_maxmin(pts, wf)


def test_weighted_p_mean_examples():
    assert weighted_p_mean([1, 0], [1, 1], 2) == HALF
    assert weighted_p_mean([1, 0], [3, 1], 1) == 1
    assert weighted_p_mean([0, 1], [1, 1], 4) == pytest.approx(0.5, abs=1e-12)
    assert weighted_p_mean([0, 0, 3], [1, 1, 1], 1) == 0
    assert weighted_p_mean([0, 10], [1, 1], 1.5) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        weighted_p_mean([1], [0], 2)


def test_partition_diagnostics():
    r = l1_regress(Dag.chain(8), WeightedFunction.unweighted([7, 6, 5, 4, 3, 2, 1, 0]))
    d = r.diagnostics
    assert d["grid_size"] == 8 and d["levels"] == 4 and d["subproblems"] >= 1


def test_l1_and_l2_against_oracles():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 6)
        dag, wf = random_dag(rng, n), random_wf(rng, n)
        assert l1_regress(dag, wf).error == oracle_regress(dag, wf, "L1")[0]
        r = l2_exact(dag, wf)
        o = oracle_l2_maxmin(dag, wf)
        assert all(o[v] is None or o[v] == r.values[v] for v in range(n))
        assert isotonic_check(dag, r.values) == []


def test_custom_binary_solver_is_used():
    calls = []

    def solver(order, subset, labels, weights):
        calls.append(len(labels))
        # valid only on chains: best step function by brute force
        best = min(range(len(labels) + 1),
                   key=lambda k: (sum(w for b, w in zip(labels[:k], weights[:k]) if b)
                                  + sum(w for b, w in zip(labels[k:], weights[k:]) if not b), -k))
        return [0] * best + [1] * (len(labels) - best)

    r = l1_regress(Dag.chain(4), WeightedFunction.unweighted([3, 0, 2, 1]), binary_solver=solver)
    assert calls and r.error == oracle_regress(Dag.chain(4), WeightedFunction.unweighted([3, 0, 2, 1]), "L1")[0]

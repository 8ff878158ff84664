"""The ten acceptance criteria, each at its stated size and time limit.

Every test records one PASS/FAIL line (shown in the terminal summary).
Criterion 8 is enforced throughout: while this module runs, every
antichain solve is routed through a wrapper that insists on the runtime
checks and re-verifies the flow duality, and the last test reports the tally.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import isoreg.l0
from isoreg import (BoxSet, Dag, PointSet, WeightedFunction, isotonic_check, l0_chain, l0_regress, l1_chain,
                    l1_regress, l2_exact, lp_approx, oracle_antichain, oracle_l2_maxmin, oracle_regress,
                    pav_l2, regression_error, rendezvous_violator, violator_closure)
from isoreg.cli import random_dag as big_random_dag
from isoreg.errors import ExtractionMismatch
from isoreg.flow import is_antichain, max_weight_antichain

from _util import random_dag, random_wf

DUALITY = {"solves": 0, "failures": 0}


@pytest.fixture(scope="module", autouse=True)
def checked_antichains():
    original = isoreg.l0.max_weight_antichain

    def checked(vd, weights, backend="auto", check=True):
        try:
            res = original(vd, weights, backend=backend, check=True)
        except ExtractionMismatch:
            DUALITY["failures"] += 1
            raise
        if res.weight != res.flow_value or res.weight != sum(weights[v] for v in res.members):
            DUALITY["failures"] += 1
            raise ExtractionMismatch("antichain weight differs from min-flow value")
        if not is_antichain(vd, res.members):
            DUALITY["failures"] += 1
            raise ExtractionMismatch("not an antichain")
        DUALITY["solves"] += 1
        return res

    isoreg.l0.max_weight_antichain = checked
    yield
    isoreg.l0.max_weight_antichain = original


def run_criterion(report, number, limit, body):
    start = time.perf_counter()
    try:
        detail = body()
    except BaseException as exc:
        report(number, False, f"{type(exc).__name__}: {exc}"[:200])
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    report(number, ok, f"{detail}; {elapsed:.2f}s (limit {limit}s)")
    assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_two_vertex_example(acceptance_report):
    def body():
        wf = WeightedFunction.unweighted([1, 0])
        half = Fraction(1, 2)
        assert l2_exact(Dag.chain(2), wf).values == [half, half]
        for p in (1.5, 3):
            vals = lp_approx(Dag.chain(2), wf, p=p, delta=0.01).values
            assert vals[0] == vals[1] and abs(vals[0] - half) <= Fraction(1, 100)
        return "L2 = (1/2, 1/2); Lp p in {1.5, 3} equal and within 0.01 of 1/2"

    run_criterion(acceptance_report, 1, 1, body)


def test_criterion_02_l0_oracle(acceptance_report):
    def body():
        rng = random.Random(2002)
        count = 0
        for _ in range(2000):
            n = rng.randint(1, 7)
            dag, wf = random_dag(rng, n), random_wf(rng, n, vmax=4, wmax=4)
            r = l0_regress(dag, wf)
            err, _ = oracle_regress(dag, wf, "L0")
            assert r.error == err, (dag, wf, r.error, err)
            best = oracle_antichain(violator_closure(dag, wf), list(wf.weights))
            pruned = sum(wf.weights) - r.diagnostics["flow_weight"]
            assert r.diagnostics["antichain_weight"] + pruned == best
            count += 1
        return f"{count} random dags: L0 error and antichain weight equal the oracles"

    run_criterion(acceptance_report, 2, 60, body)


def test_criterion_03_l1_oracle(acceptance_report):
    def body():
        rng = random.Random(2003)
        for _ in range(2000):
            n = rng.randint(1, 7)
            dag, wf = random_dag(rng, n), random_wf(rng, n, vmax=4, wmax=4)
            r = l1_regress(dag, wf)
            err, _ = oracle_regress(dag, wf, "L1", sorted(set(wf.values)))
            assert r.error == err, (dag, wf, r.error, err)
        return "2000 random dags: L1 error equals the oracle"

    run_criterion(acceptance_report, 3, 60, body)


def test_criterion_04_l2_exact(acceptance_report):
    def body():
        rng = random.Random(2004)
        compared = 0
        for _ in range(500):
            n = rng.randint(1, 8)
            dag, wf = random_dag(rng, n), random_wf(rng, n, vmax=4, wmax=3)
            r = l2_exact(dag, wf)
            o = oracle_l2_maxmin(dag, wf)
            assert isotonic_check(dag, r.values) == []
            for v in range(n):
                if o[v] is not None:  # zero-weight vertices have no unique optimum
                    assert r.values[v] == o[v], (dag, wf, r.values, o)
                    compared += 1
        return f"500 random dags: {compared} positive-weight values equal the max-min oracle exactly"

    run_criterion(acceptance_report, 4, 120, body)


def two_step_pairs(vd):
    r = vd.real_count
    e = vd.edges
    first = e[(e[:, 0] < r) & (e[:, 1] >= r)]
    second = e[(e[:, 0] >= r) & (e[:, 1] < r)]
    steiner = vd.steiner_count
    if not len(first) or not len(second):
        return set()
    from scipy.sparse import csr_array

    a = csr_array((np.ones(len(first)), (first[:, 0], first[:, 1] - r)), shape=(r, steiner))
    b = csr_array((np.ones(len(second)), (second[:, 0] - r, second[:, 1])), shape=(steiner, r))
    u, v = (a @ b).nonzero()
    return set(zip(u.tolist(), v.tolist()))


def test_criterion_05_rendezvous_correctness(acceptance_report):
    def body():
        rng = np.random.default_rng(2005)
        for _ in range(200):
            d = int(rng.choice([2, 3, 4]))
            n = int(rng.integers(1, 65))
            coords = rng.integers(0, int(rng.integers(2, 9)), (n, d))
            wf = WeightedFunction(rng.integers(0, 6, n).tolist(), rng.integers(0, 4, n).tolist())
            pts = PointSet(coords, wf)
            vd = rendezvous_violator(pts)
            vd.validate()
            expected = violator_closure(pts.domination_dag(), wf).edge_set()
            assert vd.reachable_pairs() == expected
            assert two_step_pairs(vd) == expected
        return "200 point sets, d in {2,3,4}, n <= 64: reachability = violating pairs, all via 2-edge paths"

    run_criterion(acceptance_report, 5, 60, body)


def test_criterion_06_rendezvous_size(acceptance_report):
    c = 2

    def body():
        rng = np.random.default_rng(2006)
        ratios = []
        for n in (1000, 10000):
            coords = rng.random((n, 3))
            wf = WeightedFunction(rng.integers(0, 101, n).tolist(), [1] * n)
            vd = rendezvous_violator(PointSet(coords, wf))
            bound = n * (math.ceil(math.log2(n)) + 1) ** 4
            ratios.append(vd.m_hat / bound)
            assert vd.m_hat <= c * bound, (n, vd.m_hat, bound)
        return f"d=3, n in {{1e3, 1e4}}: m_hat/(n(lg n+1)^4) = {ratios[0]:.4f}, {ratios[1]:.4f} <= c={c}"

    run_criterion(acceptance_report, 6, 120, body)


def test_criterion_07_chain_fast_paths(acceptance_report):
    def body():
        rng = random.Random(2007)
        for _ in range(1000):
            n = rng.randint(1, 10)
            wf = random_wf(rng, n, vmax=6, wmax=4)
            chain = Dag.chain(n)
            assert pav_l2(wf).values == l2_exact(chain, wf).values
            assert l0_chain(wf).error == l0_regress(chain, wf).error
            assert l1_chain(wf).error == l1_regress(chain, wf).error
        return "1000 random chains: PAV = exact L2, chain L0/L1 errors = flow-based errors"

    run_criterion(acceptance_report, 7, 60, body)


def test_criterion_09_scale(acceptance_report):
    def body():
        dag, rng = big_random_dag(2000, 10000, seed=2009)
        wf = WeightedFunction([rng.randint(0, 1000) for _ in range(2000)],
                              [rng.randint(0, 1000) for _ in range(2000)])
        times = []
        for solve, metric in ((l0_regress, "L0"), (l1_regress, "L1")):
            start = time.perf_counter()
            r = solve(dag, wf)
            took = time.perf_counter() - start
            times.append(took)
            assert took < 60, (metric, took)
            assert isotonic_check(dag, r.values) == []
            assert r.error == regression_error(wf, r.values, metric)
            if metric == "L0":
                d = r.diagnostics
                assert r.error == d["flow_weight"] - d["antichain_weight"]
        return f"n=2000, m={dag.m}: L0 {times[0]:.2f}s, L1 {times[1]:.2f}s, isotonic, error identities hold"

    run_criterion(acceptance_report, 9, 120, body)


def test_criterion_10_boxes(acceptance_report):
    def body():
        rng = np.random.default_rng(2010)
        for _ in range(200):
            n = int(rng.integers(1, 41))
            lower = rng.integers(0, 8, (n, 2))
            upper = lower + rng.integers(0, 6, (n, 2))
            wf = WeightedFunction(rng.integers(0, 5, n).tolist(), rng.integers(0, 4, n).tolist())
            boxes = BoxSet(lower, upper, wf)
            via_points = l0_regress(boxes, violator_strategy="rendezvous")
            direct = l0_regress(boxes, violator_strategy="pairwise")
            assert via_points.error == direct.error
        return "200 box sets, d=2, n <= 40: L0 via 4-d domination + rendezvous = direct containment"

    run_criterion(acceptance_report, 10, 60, body)


def test_criterion_08_flow_duality(acceptance_report):
    def body():
        if DUALITY["solves"] == 0:
            # run on its own: solve a representative batch so the checks are exercised
            rng = random.Random(2008)
            for _ in range(300):
                n = rng.randint(1, 7)
                l0_regress(random_dag(rng, n), random_wf(rng, n))
        assert DUALITY["failures"] == 0
        assert DUALITY["solves"] > 0
        return (f"{DUALITY['solves']} antichain solves checked: weight = min-flow value, antichain, "
                "lower bounds and conservation hold")

    run_criterion(acceptance_report, 8, 60, body)

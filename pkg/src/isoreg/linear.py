"""Fast paths for a linear order (a chain): PAV, weighted LIS, step functions.

Vertex ``i`` of a chain precedes vertex ``i + 1``; no violator dag or flow
is needed.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from .l0 import extend_antichain
from .order import Dag, RegressionResult, WeightedFunction
from .partition import l1_regress


def _unpack(wf, weights=None):
    if isinstance(wf, WeightedFunction):
        return list(wf.values), list(wf.weights)
    values = list(wf)
    return values, [1] * len(values) if weights is None else list(weights)


def pav_l2(wf, weights=None) -> RegressionResult:
    """L2 isotonic regression on a chain by pooling adjacent violators.

    Accepts a :class:`WeightedFunction` or plain values (and weights).  Pool
    means are Fractions when all data are integers or rationals, floats
    otherwise.  Zero-weight points do not take part in pooling and are
    filled in from their neighbours.
    """
    f, w = _unpack(wf, weights)
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    exact = all(isinstance(x, numbers.Rational) for x in f + w)
    blocks = []  # [weighted sum, weight, first index, last index]
    for i, (x, wi) in enumerate(zip(f, w)):
        if wi == 0:
            continue
        blocks.append([(Fraction(x) if exact else x) * wi, wi, i, i])
        while len(blocks) > 1 and blocks[-2][0] * blocks[-1][1] > blocks[-1][0] * blocks[-2][1]:
            s, ww, _, last = blocks.pop()
            blocks[-1][0] += s
            blocks[-1][1] += ww
            blocks[-1][3] = last
    values = list(f)
    positive = set()
    for s, ww, first, last in blocks:
        mean = s / ww
        for i in range(first, last + 1):
            if w[i] > 0:
                values[i] = mean
                positive.add(i)
    if len(positive) < len(f):
        values = extend_antichain(Dag.chain(len(f)), values, positive)
    error = sum(wi * (fi - gi) ** 2 for fi, gi, wi in zip(f, values, w))
    return RegressionResult(values, error, {"pools": len(blocks)})


class _PrefixMax:
    """Fenwick tree over ranks holding (best weight, index) prefix maxima."""

    def __init__(self, size):
        self.size = size
        self.tree = [(-1, -1)] * (size + 1)

    def update(self, pos, item):
        pos += 1
        while pos <= self.size:
            if item > self.tree[pos]:
                self.tree[pos] = item
            pos += pos & -pos

    def query(self, pos):
        pos += 1
        best = (-1, -1)
        while pos > 0:
            if self.tree[pos] > best:
                best = self.tree[pos]
            pos -= pos & -pos
        return best


def max_weight_nondecreasing(values, weights):
    """Indices of a maximum-weight weakly increasing subsequence, O(n log n)."""
    ranks = {x: r for r, x in enumerate(sorted(set(values)))}
    fen = _PrefixMax(len(ranks))
    parent = [-1] * len(values)
    best = (-1, -1)
    for i, (x, wi) in enumerate(zip(values, weights)):
        prev_weight, prev = fen.query(ranks[x])
        total = wi + max(prev_weight, 0)
        parent[i] = prev if prev_weight >= 0 else -1
        fen.update(ranks[x], (total, i))
        best = max(best, (total, i))
    kept = []
    i = best[1]
    while i >= 0:
        kept.append(i)
        i = parent[i]
    kept.reverse()
    return kept


def l0_chain(wf) -> RegressionResult:
    """L0 isotonic regression on a chain: keep a heaviest nondecreasing subsequence."""
    f, w = _unpack(wf)
    kept = max_weight_nondecreasing(f, w)
    values = extend_antichain(Dag.chain(len(f)), f, kept)
    error = sum(w) - sum(w[i] for i in kept)
    diag = {"kept": len(kept), "kept_weight": sum(w) - error}
    return RegressionResult(values, error, diag)


def binary_l1_chain(labels, weights=None):
    """Best isotonic 0/1 step labelling ``0^k 1^(n-k)`` of a chain.

    Cost of a split ``k`` is the weight of 1-labels before it plus the weight
    of 0-labels from it on.  Among equally cheap splits the one with the
    most zeros wins.  Returns ``(labels, cost)``.
    """
    labels = list(labels)
    weights = [1] * len(labels) if weights is None else list(weights)
    if any(x not in (0, 1) for x in labels):
        raise ValueError("labels must be 0 or 1")
    cost = sum(wi for b, wi in zip(labels, weights) if b == 0)
    best, best_k = cost, 0
    for k, (b, wi) in enumerate(zip(labels, weights), start=1):
        cost += wi if b == 1 else -wi
        if cost <= best:
            best, best_k = cost, k
    n = len(labels)
    return [0] * best_k + [1] * (n - best_k), best


def _chain_binary(order, subset, labels, weights):
    return binary_l1_chain(labels, weights)[0]


def l1_chain(wf) -> RegressionResult:
    """L1 isotonic regression on a chain: partitioning with step-function binary solves."""
    f, w = _unpack(wf)
    wf = WeightedFunction(f, w)
    return l1_regress(Dag.chain(len(f)), wf, binary_solver=_chain_binary)


def chain_regress(wf, metric) -> RegressionResult:
    """Dispatch a chain instance to its fast path (L0, L1 or L2)."""
    kind = metric.upper() if isinstance(metric, str) else metric.kind.upper()
    if kind == "L0":
        return l0_chain(wf)
    if kind == "L1":
        return l1_chain(wf)
    if kind == "L2":
        return pav_l2(wf)
    raise ValueError(f"no chain fast path for {metric!r}")

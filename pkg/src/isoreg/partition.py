"""L1, approximate Lp and exact L2 isotonic regression by partitioning.

A multi-valued problem is reduced to a sequence of binary ones.  Each
subproblem owns a vertex set and an index range ``[lo, hi]`` into a sorted
grid of candidate regression values.  Splitting the range in the middle
gives a {0,1} labelling with weights; its optimal isotonic relabelling
(a two-label L0 problem) decides which half of the range every vertex
continues in.  The halves are independent because the relabelling is
isotonic, so no vertex sent low succeeds one sent high.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import InvalidDelta, InvalidP
from .instances import instance_function, resolve_order
from .l0 import extend_antichain, solve_l0
from .order import Metric, RegressionResult, regression_error

DEFAULT_WEIGHT_SCALE = 2**20


@dataclass(frozen=True)
class Subproblem:
    """Vertices (global ids, ascending) whose value lies in ``grid[lo..hi]``."""

    vertices: tuple
    lo: int
    hi: int


def weighted_p_mean(values, weights, p):
    """Minimiser of ``sum w_i |x - v_i|^p``.

    p = 1 gives the lower weighted median, p = 2 the weighted mean (a
    Fraction for integer/rational input); other p use bisection on the
    derivative down to 2^-40 of the value range.
    """
    pairs = [(v, w) for v, w in zip(values, weights) if w > 0]
    if not pairs:
        raise ValueError("weighted_p_mean needs at least one positive weight")
    if p < 1:
        raise InvalidP(f"p must be >= 1, got {p!r}")
    if p == 1:
        pairs.sort()
        total = sum(w for _, w in pairs)
        acc = 0
        for v, w in pairs:
            acc += w
            if 2 * acc >= total:
                return v
    if p == 2:
        num = sum(Fraction(v) * w for v, w in pairs)
        return num / sum(w for _, w in pairs)
    lo = float(min(v for v, _ in pairs))
    hi = float(max(v for v, _ in pairs))
    if lo == hi:
        return lo
    tol = (hi - lo) * 2.0**-40

    def slope(x):
        return sum(w * math.copysign(abs(x - v) ** (p - 1), x - v) for v, w in pairs)

    while hi - lo > tol:
        mid = (lo + hi) / 2
        if slope(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# binary problems


def flow_binary(order, subset, labels, weights, backend="auto"):
    """Optimal isotonic {0,1} relabelling of ``subset`` via the L0 pipeline."""
    new, _ = solve_l0(order, list(labels), list(weights), subset=subset, backend=backend)
    return new


def binary_l1(instance, labels, weights, violator_strategy="auto", backend="auto"):
    """Isotonic {0,1} labels of minimum weighted disagreement with ``labels``.

    Returns ``(new_labels, disagreement)``.
    """
    labels = list(labels)
    if any(x not in (0, 1) for x in labels):
        raise ValueError("labels must be 0 or 1")
    if len(labels) != instance.n or len(weights) != instance.n:
        raise ValueError("labels/weights do not match the instance size")
    order = resolve_order(instance, violator_strategy)
    new = flow_binary(order, None, labels, list(weights), backend=backend)
    return new, sum(w for a, b, w in zip(labels, new, weights) if a != b)


def _partition(order, n, size, split, binary_solver, stats):
    """Run the partition recursion; returns the final grid index of every vertex.

    ``split(vertices, lo, mid)`` returns ``(labels, weights)`` for the
    binary problem that separates ``grid[lo..mid]`` from ``grid[mid+1..hi]``.
    """
    index = [0] * n
    stack = [(Subproblem(tuple(range(n)), 0, size - 1), 1)]
    while stack:
        sub, depth = stack.pop()
        stats["levels"] = max(stats["levels"], depth)
        if not sub.vertices:
            continue
        if sub.lo == sub.hi:
            for v in sub.vertices:
                index[v] = sub.lo
            continue
        mid = (sub.lo + sub.hi) // 2
        labels, weights = split(sub.vertices, sub.lo, mid)
        whole = len(sub.vertices) == n
        subset = None if whole else list(sub.vertices)
        if any(labels) and not all(labels):
            new = binary_solver(order, subset, labels, weights)
            stats["subproblems"] += 1
            # independence: nothing sent low may succeed something sent high
            if order.graph(subset).violations(list(new)):
                raise AssertionError("binary relabelling is not isotonic; split would not be independent")
        else:
            new = labels
        low = tuple(v for v, b in zip(sub.vertices, new) if not b)
        high = tuple(v for v, b in zip(sub.vertices, new) if b)
        stack.append((Subproblem(high, mid + 1, sub.hi), depth + 1))
        stack.append((Subproblem(low, sub.lo, mid), depth + 1))
    return index


def _solver(binary_solver, backend):
    if binary_solver is not None:
        return binary_solver
    return lambda order, subset, labels, weights: flow_binary(order, subset, labels, weights, backend)


def l1_regress(instance, wf=None, violator_strategy="auto", binary_solver=None, backend="auto") -> RegressionResult:
    """Exact L1 isotonic regression with values drawn from those of ``wf``."""
    wf = instance_function(instance, wf)
    order = resolve_order(instance, violator_strategy)
    f, w = wf.values, wf.weights
    grid = sorted(set(f))
    stats = {"subproblems": 0, "levels": 0}

    def split(vertices, lo, mid):
        a = grid[mid]
        return [1 if f[v] > a else 0 for v in vertices], [w[v] for v in vertices]

    index = _partition(order, len(f), max(len(grid), 1), split, _solver(binary_solver, backend), stats)
    values = [grid[i] for i in index] if grid else []
    stats.update(strategy=order.strategy, grid_size=len(grid))
    return RegressionResult(values, regression_error(wf, values, "L1"), stats)


def _integer_weights(raw, exact, scale):
    """Turn nonnegative derivative weights into flow-ready integers."""
    if exact:
        den = reduce(math.lcm, (Fraction(x).denominator for x in raw), 1)
        ints = [int(Fraction(x) * den) for x in raw]
        g = reduce(math.gcd, ints, 0)
        return [x // g for x in ints] if g > 1 else ints
    top = max(raw, default=0)
    if top == 0:
        return [0] * len(raw)
    return [int(round(float(x) / float(top) * scale)) for x in raw]


def _grid_partition(instance, wf, p, delta, violator_strategy, binary_solver, backend, weight_scale, exact):
    """Approximate Lp fit on the grid ``f_min + i*delta``; returns (order, grid values, stats)."""
    order = resolve_order(instance, violator_strategy)
    f, w = wf.values, wf.weights
    n = len(f)
    if n == 0:
        return order, [], {"subproblems": 0, "levels": 0, "grid_size": 0}
    delta = Fraction(delta)
    fmin, fmax = min(f), max(f)
    size = math.ceil((fmax - fmin) / delta) + 1
    stats = {"subproblems": 0, "levels": 0, "grid_size": size}

    def point(i):
        return fmin + i * delta

    def split(vertices, lo, mid):
        # threshold halfway between grid[mid] and grid[mid+1]; a vertex is
        # labelled by the side of the threshold its value lies on and weighted
        # by the error derivative there
        m = point(mid) + delta / 2
        labels, raw = [], []
        for v in vertices:
            diff = f[v] - m
            labels.append(1 if diff > 0 else 0)
            if p == 2:
                raw.append(w[v] * abs(diff))
            elif exact:
                raw.append(w[v] * abs(diff) ** int(p - 1))
            else:
                raw.append(w[v] * float(abs(diff)) ** (p - 1))
        return labels, _integer_weights(raw, exact, weight_scale)

    index = _partition(order, n, size, split, _solver(binary_solver, backend), stats)
    return order, [point(i) for i in index], stats


def lp_approx(instance, wf=None, p=2.0, delta=None, violator_strategy="auto", binary_solver=None,
              backend="auto", weight_scale=DEFAULT_WEIGHT_SCALE) -> RegressionResult:
    """Lp isotonic regression to within ``delta`` at every vertex.

    Values come from the grid ``f_min + i*delta``.  ``delta`` defaults to
    the value range divided by 2^20.  Derivative weights are normalised so
    the largest one in each subproblem becomes ``weight_scale`` and then
    rounded, except for integer p when ``weight_scale`` is None (exact
    rational weights).
    """
    wf = instance_function(instance, wf)
    if p is None or not p > 1:
        raise InvalidP(f"Lp needs p > 1, got {p!r}")
    if delta is None:
        spread = max(wf.values, default=0) - min(wf.values, default=0)
        delta = Fraction(spread, 2**20) if spread else Fraction(1)
    if isinstance(delta, float):
        delta = Fraction(repr(delta))  # 0.01 means 1/100, not its binary expansion
    if not delta > 0:
        raise InvalidDelta(f"delta must be positive, got {delta!r}")
    exact = weight_scale is None
    if exact and p != int(p):
        raise ValueError("exact derivative weights need an integer p")
    order, values, stats = _grid_partition(instance, wf, p, delta, violator_strategy, binary_solver,
                                           backend, weight_scale, exact)
    metric = Metric("Lp", p=p, delta=float(delta))
    stats.update(strategy=order.strategy, delta=Fraction(delta))
    return RegressionResult(values, regression_error(wf, values, metric), stats)


def l2_exact(instance, wf=None, violator_strategy="auto", binary_solver=None, backend="auto") -> RegressionResult:
    """The exact L2 isotonic regression, in rational arithmetic.

    Weighted means of vertex sets differ by at least ``1/W^2`` (W the total
    weight), so a grid fit with ``delta = 1/(4 W^2)`` places every level set
    apart from the others; grouping close values and replacing each group by
    its weighted mean recovers the optimum.  Zero-weight vertices, whose
    optimal values are not unique, are filled in isotonically afterwards.
    """
    wf = instance_function(instance, wf)
    f, w = wf.values, wf.weights
    total = sum(w)
    order = resolve_order(instance, violator_strategy)
    if total == 0:
        values = extend_antichain(order.graph(None), list(f), set())
        return RegressionResult(values, 0, {"subproblems": 0, "levels": 0, "strategy": order.strategy})
    delta = Fraction(1, 4 * total * total)
    _, approx, stats = _grid_partition(instance, wf, 2, delta, violator_strategy, binary_solver,
                                       backend, None, True)
    ranked = sorted((approx[v], v) for v in range(len(f)) if w[v] > 0)
    values = [None] * len(f)
    groups = 0
    start = 0
    for i in range(1, len(ranked) + 1):
        if i == len(ranked) or ranked[i][0] - ranked[i - 1][0] > 2 * delta:
            members = [v for _, v in ranked[start:i]]
            mean = Fraction(sum(f[v] * w[v] for v in members), sum(w[v] for v in members))
            for v in members:
                values[v] = mean
            groups += 1
            start = i
    positive = {v for v in range(len(f)) if w[v] > 0}
    if len(positive) < len(f):
        filled = [values[v] if v in positive else f[v] for v in range(len(f))]
        values = extend_antichain(order.graph(None), filled, positive)
    if order.graph(None).violations(values):
        raise AssertionError("level-set means are not isotonic")
    stats.update(strategy=order.strategy, delta=delta, level_groups=groups)
    return RegressionResult(values, regression_error(wf, values, "L2"), stats)

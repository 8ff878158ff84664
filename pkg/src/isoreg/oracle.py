"""Brute-force references for desk-sized instances.

These share no code with the solvers beyond the basic types, so agreement
between the two is meaningful.  Every entry point refuses inputs beyond its
size guard with :class:`TooLarge`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import TooLarge
from .instances import as_dag
from .order import Dag, Metric, WeightedFunction

MAX_VERTICES = 10
MAX_ASSIGNMENTS = 10**7
MAX_ANTICHAIN_VERTICES = 20
MAX_MAXMIN_VERTICES = 8


def _reach_sets(n, edges):
    succ = [[] for _ in range(n)]
    for u, v in edges:
        succ[u].append(v)
    reach = []
    for s in range(n):
        seen = set()
        todo = list(succ[s])
        while todo:
            x = todo.pop()
            if x not in seen:
                seen.add(x)
                todo.extend(succ[x])
        reach.append(seen)
    return reach


def _cost(metric, fv, g, w):
    if metric.kind == "L0":
        return w if fv != g else 0
    d = abs(Fraction(fv) - Fraction(g))
    if metric.p == 1:
        return w * d
    if metric.p == 2:
        return w * d * d
    return w * float(d) ** metric.p


def oracle_regress(order, wf: WeightedFunction, metric, grid=None):
    """Minimum error over all isotonic assignments with values from ``grid``.

    ``grid`` defaults to the distinct values of ``wf``.  Returns
    ``(error, assignment)``; exhaustive depth-first search in topological
    order, pruning non-isotonic partial assignments and branches that cannot
    beat the best found so far.
    """
    dag = order if isinstance(order, Dag) else as_dag(order)
    metric = Metric.coerce(metric)
    n = dag.n
    if len(wf) != n:
        raise ValueError("weighted function length does not match the order")
    grid = sorted(set(wf.values)) if grid is None else sorted(set(grid))
    if n > MAX_VERTICES or len(grid) ** n > MAX_ASSIGNMENTS:
        raise TooLarge(f"oracle refuses n={n} with {len(grid)} grid values")
    if n == 0:
        return 0, []
    topo = list(dag._topo)
    preds = [list(dag.predecessors(v)) for v in range(n)]
    f, w = wf.values, wf.weights
    costs = [[_cost(metric, f[v], g, w[v]) for g in grid] for v in range(n)]
    # cheapest possible completion from each topological position onward
    rest = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rest[i] = rest[i + 1] + min(costs[topo[i]])
    idx = [0] * n
    best = [None, None]

    def search(i, acc):
        if best[0] is not None and acc + rest[i] >= best[0]:
            return
        if i == n:
            best[0], best[1] = acc, list(idx)
            return
        v = topo[i]
        start = max((idx[u] for u in preds[v]), default=0)
        for k in range(start, len(grid)):
            idx[v] = k
            search(i + 1, acc + costs[v][k])

    search(0, 0)
    error = best[0]
    if isinstance(error, Fraction) and error.denominator == 1:
        error = int(error)
    return error, [grid[k] for k in best[1]]


def oracle_antichain(vd, weights):
    """Maximum total weight of original vertices that are pairwise unreachable in ``vd``."""
    r = vd.real_count
    if r > MAX_ANTICHAIN_VERTICES:
        raise TooLarge(f"oracle antichain refuses {r} original vertices")
    if len(weights) != r:
        raise ValueError("one weight per original vertex expected")
    reach = _reach_sets(vd.n_hat, [tuple(e) for e in np.asarray(vd.edges).tolist()])
    conflict = [0] * r
    for u in range(r):
        for v in reach[u]:
            if v < r:
                conflict[u] |= 1 << v
                conflict[v] |= 1 << u
    best = 0
    for mask in range(1 << r):
        ok = True
        total = 0
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            if conflict[u] & mask:
                ok = False
                break
            total += weights[u]
            m ^= low
        if ok and total > best:
            best = total
    return best


def _closed_masks(k, reach_mask, upward):
    out = []
    for mask in range(1, 1 << k):
        ok = True
        m = mask
        while m and ok:
            low = m & -m
            u = low.bit_length() - 1
            need = reach_mask[u][1 if upward else 0]
            ok = (need & ~mask) == 0
            m ^= low
        if ok:
            out.append(mask)
    return out


def oracle_l2_maxmin(order, wf: WeightedFunction):
    """The exact L2 isotonic regression from the upper/lower set formula.

    ``f'(v) = max over upper sets U containing v of min over lower sets L
    containing v of the weighted mean of f on L ∩ U``.  Only positive-weight
    vertices are constrained by the data; zero-weight vertices get ``None``.
    """
    dag = order if isinstance(order, Dag) else as_dag(order)
    n = dag.n
    if n > MAX_MAXMIN_VERTICES:
        raise TooLarge(f"max-min oracle refuses n={n}")
    if len(wf) != n:
        raise ValueError("weighted function length does not match the order")
    f, w = wf.values, wf.weights
    live = [v for v in range(n) if w[v] > 0]
    k = len(live)
    pos = {v: i for i, v in enumerate(live)}
    reach = _reach_sets(n, dag.edges)
    # per live vertex: (mask of live strict predecessors, mask of live strict successors)
    rel = []
    for v in live:
        up = sum(1 << pos[x] for x in reach[v] if x in pos)
        down = sum(1 << pos[u] for u in live if v in reach[u])
        rel.append((down, up))
    lowers = np.array(_closed_masks(k, rel, upward=False), dtype=np.int64)
    uppers = np.array(_closed_masks(k, rel, upward=True), dtype=np.int64)
    masks = np.arange(1 << k, dtype=np.int64)
    sums = np.zeros(1 << k, dtype=np.int64)
    tot = np.zeros(1 << k, dtype=np.int64)
    for i, v in enumerate(live):
        bit = (masks >> i) & 1
        sums += bit * f[v] * w[v]
        tot += bit * w[v]
    out = [None] * n
    for i, v in enumerate(live):
        L = lowers[(lowers >> i) & 1 == 1]
        U = uppers[(uppers >> i) & 1 == 1]
        inter = U[:, None] & L[None, :]
        num, den = sums[inter], tot[inter]
        # inner min over L for each U, exactly: a/b <= c/d  <=>  a*d <= c*b (b, d > 0)
        jmin = np.argmin(num / den, axis=1)
        bn = num[np.arange(len(U)), jmin]
        bd = den[np.arange(len(U)), jmin]
        if np.any(num * bd[:, None] < bn[:, None] * den):
            raise ArithmeticError("inexact minimum in max-min oracle")
        jmax = int(np.argmax(bn / bd))
        if np.any(bn * bd[jmax] > bn[jmax] * bd):
            raise ArithmeticError("inexact maximum in max-min oracle")
        out[v] = Fraction(int(bn[jmax]), int(bd[jmax]))
    return out

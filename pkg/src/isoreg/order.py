"""Partially ordered instances: dags, weighted functions, metrics and results.

Everything here is immutable after construction.  Vertex ids are 0-based and
an edge ``(u, v)`` means ``u`` precedes ``v``.
"""

from __future__ import annotations

import math
import numbers
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CycleDetected

_INT64_MAX = 2**63 - 1


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, numbers.Integral):
        raise TypeError(f"{what} must be an integer, got {x!r}")
    return int(x)


def _kahn(n, succ, indeg):
    indeg = list(indeg)
    queue = deque(v for v in range(n) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order, indeg


def _find_cycle(n, pred, remaining):
    # every vertex left over by Kahn has a predecessor that is also left over
    v = next(iter(remaining))
    seen = {}
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = next(u for u in pred[v] if u in remaining)
    cycle = path[seen[v]:]
    cycle.reverse()
    return cycle


@dataclass(frozen=True)
class Dag:
    """Directed acyclic order on ``n`` vertices.

    Construction validates the edge list (range, self-loops, duplicates) and
    raises :class:`CycleDetected` if the relation is cyclic.
    """

    n: int
    edges: tuple = ()
    _succ: tuple = field(init=False, repr=False, compare=False)
    _pred: tuple = field(init=False, repr=False, compare=False)
    _topo: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = _as_int(self.n, "n")
        if n < 0:
            raise ValueError("n must be nonnegative")
        edges = tuple((_as_int(u, "vertex id"), _as_int(v, "vertex id")) for u, v in self.edges)
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            succ[u].append(v)
            pred[v].append(u)
        order, left = _kahn(n, succ, [len(p) for p in pred])
        if len(order) < n:
            remaining = {v for v in range(n) if left[v] > 0}
            raise CycleDetected(_find_cycle(n, pred, remaining))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "_pred", tuple(tuple(p) for p in pred))
        object.__setattr__(self, "_topo", tuple(order))

    @classmethod
    def chain(cls, n):
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def m(self):
        return len(self.edges)

    def successors(self, v):
        return self._succ[v]

    def predecessors(self, v):
        return self._pred[v]

    def induced(self, vertices):
        """Subdag on ``vertices`` (local ids follow the given order) and induced edges."""
        local = {v: i for i, v in enumerate(vertices)}
        edges = [(local[u], local[v]) for u, v in self.edges if u in local and v in local]
        return Dag(len(local), edges)

    def components(self):
        """Weakly connected components, each a sorted list of vertex ids."""
        comp = [-1] * self.n
        out = []
        for root in range(self.n):
            if comp[root] >= 0:
                continue
            comp[root] = len(out)
            stack, members = [root], []
            while stack:
                u = stack.pop()
                members.append(u)
                for v in self._succ[u] + self._pred[u]:
                    if comp[v] < 0:
                        comp[v] = comp[root]
                        stack.append(v)
            out.append(sorted(members))
        return out


@dataclass(frozen=True)
class WeightedFunction:
    """Integer values ``f`` and nonnegative integer weights ``w``."""

    values: tuple
    weights: tuple

    def __post_init__(self):
        values = tuple(_as_int(x, "value") for x in self.values)
        weights = tuple(_as_int(x, "weight") for x in self.weights)
        if len(values) != len(weights):
            raise ValueError("values and weights differ in length")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if values and sum(weights) * max(abs(x) for x in values) > _INT64_MAX:
            raise OverflowError("sum of weights times max |value| exceeds 64-bit range")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def unweighted(cls, values):
        values = tuple(values)
        return cls(values, (1,) * len(values))

    def __len__(self):
        return len(self.values)

    @property
    def total_weight(self):
        return sum(self.weights)

    def subset(self, ids):
        return WeightedFunction([self.values[i] for i in ids], [self.weights[i] for i in ids])


@dataclass(frozen=True)
class Metric:
    """``kind`` is one of L0, L1, L2, Lp; Lp needs ``p > 1`` and ``delta > 0``."""

    kind: str
    p: float | None = None
    delta: float | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in ("L0", "L1", "L2", "LP"):
            raise ValueError(f"unknown metric {self.kind!r}")
        kind = "Lp" if kind == "LP" else kind
        object.__setattr__(self, "kind", kind)
        if kind == "Lp":
            from .errors import InvalidDelta, InvalidP

            if self.p is None or not self.p > 1:
                raise InvalidP(f"Lp needs p > 1, got {self.p!r}")
            if self.delta is None or not self.delta > 0:
                raise InvalidDelta(f"Lp needs delta > 0, got {self.delta!r}")
        elif kind == "L1":
            object.__setattr__(self, "p", 1)
        elif kind == "L2":
            object.__setattr__(self, "p", 2)

    @classmethod
    def coerce(cls, metric):
        return metric if isinstance(metric, Metric) else cls(metric)


@dataclass
class RegressionResult:
    """Regression values, error and run diagnostics.

    ``error`` is the weighted count of changed vertices for L0 and the p-th
    power sum ``sum w |f - g|^p`` otherwise.
    """

    values: list
    error: object
    diagnostics: dict = field(default_factory=dict)


def topological_order(dag: Dag) -> list:
    """Vertex ids with ``u`` before ``v`` for every edge; cycles are rejected when the Dag is built."""
    return list(dag._topo)


def isotonic_check(dag: Dag, values: Sequence) -> list:
    """Edges ``(u, v)`` with ``values[u] > values[v]``; empty means isotonic."""
    if len(values) != dag.n:
        raise ValueError(f"expected {dag.n} values, got {len(values)}")
    return [(u, v) for u, v in dag.edges if values[u] > values[v]]


def prune_nonviolating(dag: Dag, wf: WeightedFunction):
    """Remove vertices that belong to no violating pair.

    Returns ``(subdag, kept, fixed)``: the subdag on the kept vertices with
    induced edges, the original ids of the kept vertices (subdag vertex ``i``
    is ``kept[i]``), and ``{v: f(v)}`` for every removed vertex.
    """
    if len(wf) != dag.n:
        raise ValueError("weighted function length does not match the dag")
    f = wf.values
    topo = dag._topo
    # running max of f over strict predecessors, min over strict successors
    below = [-math.inf] * dag.n
    for v in topo:
        for u in dag._pred[v]:
            below[v] = max(below[v], below[u], f[u])
    above = [math.inf] * dag.n
    for u in reversed(topo):
        for v in dag._succ[u]:
            above[u] = min(above[u], above[v], f[v])
    kept = [v for v in range(dag.n) if not below[v] <= f[v] <= above[v]]
    fixed = {v: f[v] for v in range(dag.n) if below[v] <= f[v] <= above[v]}
    return dag.induced(kept), kept, fixed


def regression_error(wf: WeightedFunction, values: Sequence, metric) -> object:
    """Weighted distance between ``wf.values`` and ``values`` (p-th power sum for p >= 1)."""
    metric = Metric.coerce(metric)
    if len(values) != len(wf):
        raise ValueError("length mismatch")
    f, w = wf.values, wf.weights
    if metric.kind == "L0":
        return sum(wi for fi, gi, wi in zip(f, values, w) if fi != gi)
    p = metric.p
    if p == 1:
        return sum(wi * abs(fi - gi) for fi, gi, wi in zip(f, values, w))
    if p == 2:
        return sum(wi * (fi - gi) ** 2 for fi, gi, wi in zip(f, values, w))
    return sum(wi * abs(float(fi - gi)) ** p for fi, gi, wi in zip(f, values, w))

"""Uniform access to the orders the regressions run on.

An instance is a :class:`~isoreg.order.Dag`, a :class:`~isoreg.violator.PointSet`,
a :class:`BoxSet` or a :class:`Pairwise` comparator order.  :func:`resolve_order`
wraps it in an adapter exposing two things the pipeline needs for any
vertex subset: a violator dag for given values, and a graph representing
the base order (used to extend antichains and to check isotonicity).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._graph import OrderGraph
from .order import Dag, WeightedFunction, prune_nonviolating
from .violator import (PointSet, _matrix_violator, box_contains,
                       boxes_to_domination, comparison_matrix, rendezvous_order,
                       rendezvous_violator, transitive_closure, violator_closure)

STRATEGIES = ("auto", "closure", "rendezvous", "pairwise")


@dataclass(frozen=True)
class Pairwise:
    """Order given by a strict-partial-order comparator over opaque items."""

    items: Sequence
    precedes: Callable
    wf: WeightedFunction | None = None
    debug: bool = False

    @property
    def n(self):
        return len(self.items)


@dataclass(frozen=True)
class BoxSet:
    """Axis-parallel boxes ordered by strict containment."""

    lower: np.ndarray
    upper: np.ndarray
    wf: WeightedFunction | None = None

    def __post_init__(self):
        object.__setattr__(self, "lower", np.asarray(self.lower))
        object.__setattr__(self, "upper", np.asarray(self.upper))
        boxes_to_domination(self.lower, self.upper)  # validates

    @property
    def n(self):
        return len(self.lower)

    def boxes(self):
        return list(zip(self.lower, self.upper))


def _subset_edges(edges, n, subset):
    if subset is None:
        return edges
    local = np.full(n, -1, dtype=np.int64)
    local[np.asarray(subset, dtype=np.int64)] = np.arange(len(subset))
    e = local[edges] if len(edges) else edges
    return e[(e[:, 0] >= 0) & (e[:, 1] >= 0)] if len(e) else e


class DagOrder:
    """Explicit dag; violators come from its transitive closure.

    Adapters share one convention: ``violator(values, subset)`` takes values
    aligned with ``subset`` (or with all vertices when ``subset`` is None)
    and returns ``(vd, pos)`` where original vertex ``i`` of ``vd`` sits at
    position ``pos[i]`` of that alignment; ``graph(subset)`` numbers its
    real vertices the same way.
    """

    strategy = "closure"

    def __init__(self, dag: Dag):
        self.dag = dag
        self.n = dag.n
        self._edges = np.asarray(dag.edges, dtype=np.int64).reshape(-1, 2)
        self._reach = None

    @property
    def reach(self):
        if self._reach is None:
            self._reach = transitive_closure(self.dag)
        return self._reach

    def violator(self, values, subset=None):
        if subset is None:
            # prune first; the closure is then only built on the violating part
            subdag, kept, _ = prune_nonviolating(self.dag, WeightedFunction.unweighted(values))
            return violator_closure(subdag, WeightedFunction.unweighted([values[i] for i in kept])), kept
        idx = np.asarray(subset, dtype=np.int64)
        return _matrix_violator(self.reach[np.ix_(idx, idx)], values, "closure"), list(range(len(idx)))

    def graph(self, subset=None):
        # subsets handed out by partitioning are order-convex, so induced edges keep reachability
        k = self.n if subset is None else len(subset)
        return OrderGraph(k, k, _subset_edges(self._edges, self.n, subset))


class MatrixOrder:
    """Order held as an explicit comparability matrix (pairwise comparisons)."""

    def __init__(self, matrix, origin="pairwise"):
        self.matrix = matrix
        self.n = len(matrix)
        self.strategy = origin

    def violator(self, values, subset=None):
        ids = list(range(self.n)) if subset is None else list(subset)
        idx = np.asarray(ids, dtype=np.int64)
        return _matrix_violator(self.matrix[np.ix_(idx, idx)], values, self.strategy), list(range(len(ids)))

    def graph(self, subset=None):
        ids = list(range(self.n)) if subset is None else list(subset)
        idx = np.asarray(ids, dtype=np.int64)
        u, v = np.nonzero(self.matrix[np.ix_(idx, idx)])
        return OrderGraph(len(ids), len(ids), np.stack([u, v], axis=1))


class PointOrder:
    strategy = "rendezvous"

    def __init__(self, points: PointSet):
        self.points = points
        self.n = points.n

    def _sub(self, subset):
        return self.points if subset is None else PointSet(self.points.coords[list(subset)])

    def violator(self, values, subset=None):
        pts = self._sub(subset)
        return rendezvous_violator(pts, values), list(range(pts.n))

    def graph(self, subset=None):
        pts = self._sub(subset)
        count, edges = rendezvous_order(pts)
        return OrderGraph(pts.n, pts.n + count, edges)


def _domination(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return bool(np.all(a <= b) and np.any(a != b))


def resolve_order(instance, strategy="auto"):
    """Adapter for ``instance`` using the requested violator construction."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown violator strategy {strategy!r}")
    if isinstance(instance, Dag):
        if strategy not in ("auto", "closure"):
            raise ValueError(f"strategy {strategy!r} needs points, boxes or a comparator")
        return DagOrder(instance)
    if isinstance(instance, BoxSet):
        if strategy == "pairwise":
            return MatrixOrder(comparison_matrix(instance.boxes(), lambda r, s: box_contains(s, r)))
        return resolve_order(boxes_to_domination(instance.lower, instance.upper), strategy)
    if isinstance(instance, PointSet):
        if strategy == "auto":
            strategy = "rendezvous" if instance.d >= 2 else "closure"
        if strategy == "rendezvous":
            return PointOrder(instance)
        if strategy == "closure":
            order = DagOrder(instance.domination_dag())
            return order
        rows = [tuple(r) for r in instance.ranks.tolist()]
        return MatrixOrder(comparison_matrix(rows, _domination))
    if isinstance(instance, Pairwise):
        if strategy not in ("auto", "pairwise"):
            raise ValueError("comparator orders only support the pairwise strategy")
        return MatrixOrder(comparison_matrix(instance.items, instance.precedes, debug=instance.debug))
    raise TypeError(f"unsupported instance type {type(instance).__name__}")


def instance_function(instance, wf):
    """The weighted function to regress: ``wf`` if given, else the one attached to ``instance``."""
    if wf is None:
        wf = getattr(instance, "wf", None)
    if wf is None:
        raise ValueError("no weighted function given")
    n = instance.n
    if len(wf) != n:
        raise ValueError(f"weighted function has {len(wf)} entries, instance has {n} vertices")
    return wf


def as_dag(instance):
    """Explicit dag of the base order (all comparable pairs for non-dag instances)."""
    if isinstance(instance, Dag):
        return instance
    if isinstance(instance, BoxSet):
        instance = boxes_to_domination(instance.lower, instance.upper)
    if isinstance(instance, PointSet):
        return instance.domination_dag()
    if isinstance(instance, Pairwise):
        mat = comparison_matrix(instance.items, instance.precedes)
        u, v = np.nonzero(mat)
        return Dag(len(mat), list(zip(u.tolist(), v.tolist())))
    raise TypeError(f"unsupported instance type {type(instance).__name__}")



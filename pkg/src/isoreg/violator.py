"""Violator dags: graphs whose reachability between the original vertices is
exactly the violating-pair order (``u`` before ``v`` and ``f(u) > f(v)``).

Three constructions are provided: transitive closure of an explicit dag,
direct pairwise comparison of opaque items, and the Steiner-vertex
rendezvous graph for coordinate-wise domination of points.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

import numpy as np

from . import _graph
from .errors import OrderViolation
from .order import Dag, WeightedFunction


@dataclass(frozen=True)
class ViolatorDag:
    """Original vertices are ``0..real_count-1``; Steiner vertices follow."""

    real_count: int
    steiner_count: int
    edges: np.ndarray
    origin: str

    def __post_init__(self):
        object.__setattr__(self, "edges", _graph.edge_array(self.edges))

    @property
    def n_hat(self):
        return self.real_count + self.steiner_count

    @property
    def m_hat(self):
        return len(self.edges)

    def edge_set(self):
        return set(map(tuple, self.edges.tolist()))

    def reachable_pairs(self):
        """All ``(u, v)`` of original vertices with a path ``u -> v``."""
        reach = _graph.reach_bits(self.n_hat, self.edges)
        mask = (1 << self.real_count) - 1
        out = set()
        for u in range(self.real_count):
            r = reach[u] & mask
            while r:
                low = r & -r
                out.add((u, low.bit_length() - 1))
                r ^= low
        return out

    def validate(self):
        """Check acyclicity and, for rendezvous graphs, bipartiteness between real and Steiner."""
        _graph.topo_order(self.n_hat, self.edges)
        if self.origin == "rendezvous" and len(self.edges):
            real = self.edges < self.real_count
            if np.any(real[:, 0] == real[:, 1]):
                raise AssertionError("rendezvous edge joins two vertices of the same kind")

    def drop_isolated(self):
        """Remove original vertices with no incident edge.

        Returns ``(vd, kept)`` where original vertex ``i`` of the result is
        ``kept[i]`` here.  Steiner vertices are kept and renumbered.
        """
        r = self.real_count
        touched = np.zeros(self.n_hat, dtype=bool)
        touched[self.edges.ravel()] = True
        kept = np.flatnonzero(touched[:r])
        remap = np.full(self.n_hat, -1, dtype=np.int64)
        remap[kept] = np.arange(len(kept))
        remap[r:] = len(kept) + np.arange(self.steiner_count)
        vd = ViolatorDag(len(kept), self.steiner_count, remap[self.edges], self.origin)
        return vd, kept.tolist()


def transitive_closure(dag: Dag) -> np.ndarray:
    """Boolean reachability matrix: ``[u, v]`` is True iff a path ``u -> v`` exists."""
    rows = _graph.reach_bits(dag.n, dag.edges, order=dag._topo)
    return _graph.bits_to_matrix(rows, dag.n)


def _matrix_violator(reach, values, origin):
    f = np.asarray(values)
    viol = reach & (f[:, None] > f[None, :])
    u, v = np.nonzero(viol)
    return ViolatorDag(len(f), 0, np.stack([u, v], axis=1), origin)


def violator_closure(dag: Dag, wf: WeightedFunction) -> ViolatorDag:
    """Violator dag on the same vertices: edge ``(u, v)`` iff ``u`` reaches ``v`` and ``f(u) > f(v)``."""
    if len(wf) != dag.n:
        raise ValueError("weighted function length does not match the dag")
    return _matrix_violator(transitive_closure(dag), wf.values, "closure")


def comparison_matrix(items, precedes, debug=False, seed=0, samples=2000):
    """``[u, v]`` = ``precedes(items[u], items[v])`` for ``u != v`` (n*(n-1) comparator calls).

    With ``debug`` the relation is spot-checked for asymmetry and
    transitivity on random pairs/triples.
    """
    n = len(items)
    mat = np.zeros((n, n), dtype=bool)
    for u in range(n):
        for v in range(n):
            if u != v and precedes(items[u], items[v]):
                mat[u, v] = True
    if debug and n >= 2:
        rng = random.Random(seed)
        both = np.argwhere(mat & mat.T)
        if len(both):
            u, v = both[0]
            raise OrderViolation(f"items {u} and {v} precede each other")
        for _ in range(samples if n >= 3 else 0):
            a, b, c = rng.sample(range(n), 3)
            if mat[a, b] and mat[b, c] and not mat[a, c]:
                raise OrderViolation(f"not transitive on items {a}, {b}, {c}")
    return mat


def violator_pairwise(items, precedes, wf: WeightedFunction, debug=False) -> ViolatorDag:
    """Violator dag from direct pairwise comparisons; ``precedes`` must be a strict partial order."""
    if len(items) != len(wf):
        raise ValueError("weighted function length does not match the items")
    return _matrix_violator(comparison_matrix(items, precedes, debug=debug), wf.values, "pairwise")


# ---------------------------------------------------------------------------
# Steiner coordinates


@dataclass(frozen=True)
class SteinerCoordinate:
    """A ``k``-bit string whose last ``k - len(prefix)`` positions are wildcards."""

    k: int
    prefix: str

    def __post_init__(self):
        if len(self.prefix) > self.k or set(self.prefix) - {"0", "1"}:
            raise ValueError(f"bad Steiner prefix {self.prefix!r} for k={self.k}")

    @classmethod
    def parse(cls, s):
        prefix = s.rstrip("*")
        if "*" in prefix:
            raise ValueError(f"wildcards must form a suffix: {s!r}")
        return cls(len(s), prefix)

    def __str__(self):
        return self.prefix + "*" * (self.k - len(self.prefix))


class SteinerRelation(enum.Enum):
    EQUAL = "q = t"
    BELOW = "q <= t"
    ABOVE = "t <= q"
    NEITHER = "incomparable"


def steiner_relation(q: str, t) -> SteinerRelation:
    """Relation between a vertex bit string ``q`` and a Steiner coordinate ``t``."""
    if not isinstance(t, SteinerCoordinate):
        t = SteinerCoordinate.parse(t)
    if len(q) != t.k or set(q) - {"0", "1"}:
        raise ValueError(f"vertex coordinate {q!r} must be a {t.k}-bit string")
    j = len(t.prefix)
    if j == t.k:
        return SteinerRelation.EQUAL if q == t.prefix else SteinerRelation.NEITHER
    if q[:j] != t.prefix:
        return SteinerRelation.NEITHER
    return SteinerRelation.BELOW if q[j] == "0" else SteinerRelation.ABOVE


# ---------------------------------------------------------------------------
# Points and the rendezvous construction


def _ranks(column):
    _, inv = np.unique(np.asarray(column), return_inverse=True)
    return inv.astype(np.int64).ravel()


def _bits(ranks):
    return int(ranks.max()).bit_length() if len(ranks) else 0


@dataclass(frozen=True)
class PointSet:
    """``n`` points with ``d`` linearly ordered coordinates each, plus their data.

    ``v`` dominates ``u`` iff every coordinate of ``u`` is <= that of ``v``
    and the points differ.
    """

    coords: np.ndarray
    wf: WeightedFunction | None = None
    ranks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coords = np.asarray(self.coords)
        if coords.ndim != 2:
            raise ValueError("coords must be an (n, d) array")
        if self.wf is not None and len(self.wf) != len(coords):
            raise ValueError("weighted function length does not match the points")
        object.__setattr__(self, "coords", coords)
        ranks = np.stack([_ranks(coords[:, i]) for i in range(coords.shape[1])], axis=1) \
            if coords.shape[1] else np.zeros((len(coords), 0), dtype=np.int64)
        object.__setattr__(self, "ranks", ranks.reshape(len(coords), coords.shape[1]))

    @property
    def n(self):
        return self.coords.shape[0]

    @property
    def d(self):
        return self.coords.shape[1]

    def subset(self, ids):
        ids = list(ids)
        wf = self.wf.subset(ids) if self.wf is not None else None
        return PointSet(self.coords[ids], wf)

    def dominance_matrix(self):
        r = self.ranks
        le = np.all(r[:, None, :] <= r[None, :, :], axis=2)
        ne = np.any(r[:, None, :] != r[None, :, :], axis=2)
        return le & ne

    def domination_dag(self):
        u, v = np.nonzero(self.dominance_matrix())
        return Dag(self.n, list(zip(u.tolist(), v.tolist())))


def _slot_table(q, k):
    """Steiner ids reachable from coordinates ``q`` in one dimension.

    Slot ``j < k`` is the coordinate sharing ``q``'s first ``j`` bits with
    wildcards after; slot ``k`` is ``q`` itself.  Ids use heap numbering
    ``(1 << j) | prefix``.  ``below[i, j]`` says ``q[i]`` lies below slot
    ``j`` (next bit 0), ``above`` the reverse; slot ``k`` is both.
    """
    n = len(q)
    ids = np.empty((n, k + 1), dtype=np.int64)
    below = np.empty((n, k + 1), dtype=bool)
    for j in range(k):
        ids[:, j] = (1 << j) | (q >> (k - j))
        below[:, j] = ((q >> (k - 1 - j)) & 1) == 0
    ids[:, k] = (1 << k) | q
    below[:, k] = True
    above = ~below
    above[:, k] = True
    return ids, below, above


def _rendezvous(ranks, strict, require_any):
    """Rendezvous graph for domination on integer ``ranks`` (n, D).

    A Steiner vertex is a tuple of per-dimension Steiner coordinates.  Point
    ``u`` gets an edge to every Steiner vertex it lies below in all
    dimensions, and every Steiner vertex it lies above gets an edge to ``u``.
    Steiner tuples must have a wildcard in each dimension listed in
    ``strict`` and in at least one dimension of ``require_any``; tuples
    without both an in- and an out-edge are dropped.

    Returns ``(steiner_count, edges)`` with Steiner ids starting at ``n``.
    """
    n, D = ranks.shape
    dims = []
    for i in range(D):
        k = _bits(ranks[:, i])
        if k == 0:
            if i in strict:
                return 0, np.zeros((0, 2), dtype=np.int64)
            continue
        dims.append((i, k))
    if not any(i in require_any for i, _ in dims):
        return 0, np.zeros((0, 2), dtype=np.int64)

    # entries for both sides at once so that key re-ranking stays consistent
    pt = np.concatenate([np.arange(n), np.arange(n)])
    side = np.concatenate([np.zeros(n, dtype=bool), np.ones(n, dtype=bool)])  # False: u -> s
    key = np.zeros(2 * n, dtype=np.int64)
    wild_any = np.zeros(2 * n, dtype=bool)
    used_bits = 0
    for i, k in dims:
        ids, below, above = _slot_table(ranks[:, i], k)
        slots = range(k) if i in strict else range(k + 1)
        if used_bits + k + 1 > 62:
            _, inv = np.unique(key, return_inverse=True)
            key = inv.astype(np.int64).ravel()
            used_bits = _bits(key) if len(key) else 0
        parts = []
        for j in slots:
            ok = np.where(side, above[pt, j], below[pt, j])
            sel = np.flatnonzero(ok)
            parts.append((sel, ids[pt[sel], j], j < k))
        sel = np.concatenate([p[0] for p in parts])
        new_ids = np.concatenate([p[1] for p in parts])
        wild = np.concatenate([np.full(len(p[0]), p[2] and i in require_any) for p in parts])
        pt, side = pt[sel], side[sel]
        key = (key[sel] << (k + 1)) | new_ids
        wild_any = wild_any[sel] | wild
        used_bits += k + 1
        del sel, new_ids, wild, parts

    pt, side, key = pt[wild_any], side[wild_any], key[wild_any]
    meet = np.intersect1d(key[~side], key[side], assume_unique=False)
    pos = np.searchsorted(meet, key)
    pos[pos == len(meet)] = 0
    keep = meet[pos] == key if len(meet) else np.zeros(len(key), dtype=bool)
    pt, side, sid = pt[keep], side[keep], n + pos[keep]
    edges = np.where(side[:, None], np.stack([sid, pt], axis=1), np.stack([pt, sid], axis=1))
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return len(meet), edges[order]


def rendezvous_violator(points: PointSet, values=None) -> ViolatorDag:
    """Rendezvous violator dag for points under domination.

    The function value becomes an extra coordinate with reversed order
    (``-f``), so original ``u`` reaches original ``v`` - always through a
    single Steiner vertex - iff ``v`` dominates ``u`` and ``f(u) > f(v)``.
    """
    if values is None:
        if points.wf is None:
            raise ValueError("points carry no function values")
        values = points.wf.values
    neg = _ranks(-np.asarray(values, dtype=np.int64)) if points.n else np.zeros(0, dtype=np.int64)
    ranks = np.concatenate([points.ranks, neg[:, None]], axis=1)
    d = points.d
    count, edges = _rendezvous(ranks, strict={d}, require_any=set(range(d)))
    return ViolatorDag(points.n, count, edges, "rendezvous")


def rendezvous_order(points: PointSet):
    """Steiner 2-transitive closure of domination alone, as ``(steiner_count, edges)``."""
    return _rendezvous(points.ranks, strict=set(), require_any=set(range(points.d)))


def boxes_to_domination(lower, upper, wf=None) -> PointSet:
    """Map axis-parallel boxes to ``2d``-dimensional points so that box
    containment becomes domination: ``(-lower, upper)``."""
    lower = np.asarray(lower)
    upper = np.asarray(upper)
    if lower.shape != upper.shape or lower.ndim != 2:
        raise ValueError("lower and upper corners must be (n, d) arrays of equal shape")
    bad = np.flatnonzero(np.any(lower > upper, axis=1))
    if len(bad):
        raise ValueError(f"malformed box {int(bad[0])}: lower corner exceeds upper corner")
    return PointSet(np.concatenate([-lower, upper], axis=1), wf)


def box_contains(outer, inner):
    """Strict containment of boxes given as ``(lower, upper)`` pairs."""
    (ol, ou), (il, iu) = outer, inner
    ol, ou, il, iu = map(np.asarray, (ol, ou, il, iu))
    inside = np.all(ol <= il) and np.all(iu <= ou)
    return bool(inside and (np.any(ol != il) or np.any(ou != iu)))

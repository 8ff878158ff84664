"""Array-backed helpers for graphs given as (vertex count, edge array)."""

from collections import deque

import numpy as np

from .errors import CycleDetected


def edge_array(edges):
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    return arr.reshape(-1, 2)


def adjacency(nv, edges):
    """CSR successor lists: ``indices[indptr[u]:indptr[u+1]]``."""
    edges = edge_array(edges)
    order = np.argsort(edges[:, 0], kind="stable")
    indices = edges[order, 1]
    indptr = np.zeros(nv + 1, dtype=np.int64)
    np.cumsum(np.bincount(edges[:, 0], minlength=nv), out=indptr[1:])
    return indptr, indices


def topo_order(nv, edges):
    edges = edge_array(edges)
    indptr, indices = adjacency(nv, edges)
    indeg = np.bincount(edges[:, 1], minlength=nv).tolist()
    indptr, indices = indptr.tolist(), indices.tolist()
    queue = deque(v for v in range(nv) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) < nv:
        raise CycleDetected([v for v in range(nv) if indeg[v] > 0][:1])
    return order


def reach_bits(nv, edges, order=None):
    """Python-int successor bitsets: bit ``v`` of ``reach[u]`` iff a path u -> v exists."""
    edges = edge_array(edges)
    if order is None:
        order = topo_order(nv, edges)
    indptr, indices = adjacency(nv, edges)
    indptr, indices = indptr.tolist(), indices.tolist()
    reach = [0] * nv
    for u in reversed(order):
        r = 0
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            r |= reach[v] | (1 << v)
        reach[u] = r
    return reach


def bits_to_matrix(rows, n, ncols=None):
    ncols = n if ncols is None else ncols
    nbytes = (ncols + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(packed, axis=1, count=ncols, bitorder="little").astype(bool)


class OrderGraph:
    """A dag whose first ``real_count`` vertices carry data; the rest are Steiner.

    Reachability between real vertices is the order being represented.
    """

    def __init__(self, real_count, total, edges):
        self.real_count = real_count
        self.total = total
        self.edges = edge_array(edges)
        self._topo = None
        self._adj = None

    @property
    def topo(self):
        if self._topo is None:
            self._topo = topo_order(self.total, self.edges)
        return self._topo

    def _lists(self):
        if self._adj is None:
            pred = [[] for _ in range(self.total)]
            succ = [[] for _ in range(self.total)]
            for u, v in self.edges.tolist():
                pred[v].append(u)
                succ[u].append(v)
            self._adj = (pred, succ)
        return self._adj

    def max_below(self, values, members=None):
        """For each vertex, max of ``values`` over real strict predecessors in ``members`` (None if none)."""
        pred, _ = self._lists()
        r = self.real_count
        best = [None] * self.total
        for v in self.topo:
            b = None
            for u in pred[v]:
                for cand in (best[u], values[u] if u < r and (members is None or u in members) else None):
                    if cand is not None and (b is None or cand > b):
                        b = cand
            best[v] = b
        return best

    def min_above(self, values, members=None):
        _, succ = self._lists()
        r = self.real_count
        best = [None] * self.total
        for u in reversed(self.topo):
            b = None
            for v in succ[u]:
                for cand in (best[v], values[v] if v < r and (members is None or v in members) else None):
                    if cand is not None and (b is None or cand < b):
                        b = cand
            best[u] = b
        return best

    def violations(self, values):
        """Real vertices whose value is below some real predecessor's value."""
        below = self.max_below(values)
        return [v for v in range(self.real_count) if below[v] is not None and below[v] > values[v]]

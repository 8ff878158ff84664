"""Minimum flow with lower bounds and maximum-weight antichains.

A violator dag is turned into a split-vertex network (``v_in -> v_out``
carries the vertex weight as a lower bound).  The minimum feasible flow
equals the maximum antichain weight, and the antichain is read off the
final residual network.

Max-flow solvers are pluggable: a backend is any callable
``backend(num_nodes, tails, heads, caps, source, sink) -> (value, flows)``
on a simple directed graph (antiparallel arcs allowed).  Two ship with the
package: ``"dinic"`` (pure Python, arbitrary-size integers) and ``"scipy"``
(``scipy.sparse.csgraph.maximum_flow``, 32-bit capacities).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .errors import ExtractionMismatch

_INT32_MAX = 2**31 - 1
# below this many nodes pure Python beats building scipy sparse matrices
SMALL_GRAPH = 256


@dataclass
class FlowNetwork:
    """Arcs ``tail[i] -> head[i]`` with ``lower[i] <= flow <= cap[i]``.

    ``inf_cap`` is the capacity standing in for infinity; arcs carrying it
    never saturate in a min-flow computation.
    """

    num_nodes: int
    source: int
    sink: int
    tail: np.ndarray
    head: np.ndarray
    lower: np.ndarray
    cap: np.ndarray
    inf_cap: int | None = None

    @property
    def num_arcs(self):
        return len(self.tail)

    def arcs(self):
        return list(zip(self.tail.tolist(), self.head.tolist(), self.lower.tolist(), self.cap.tolist()))


@dataclass(frozen=True)
class AntichainResult:
    members: frozenset
    weight: int
    flow_value: int


# ---------------------------------------------------------------------------
# max-flow backends


def dinic(num_nodes, tails, heads, caps, source, sink):
    """Blocking-flow max flow (BFS level graph, DFS with current-arc pointers)."""
    tails, heads, caps = list(tails), list(heads), [int(c) for c in caps]
    m = len(tails)
    to = [0] * (2 * m)
    res = [0] * (2 * m)
    adj = [[] for _ in range(num_nodes)]
    for i in range(m):
        a, b = tails[i], heads[i]
        to[2 * i], to[2 * i + 1] = b, a
        res[2 * i] = caps[i]
        adj[a].append(2 * i)
        adj[b].append(2 * i + 1)
    total = 0
    if source == sink:
        return 0, [0] * m
    while True:
        level = [-1] * num_nodes
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if res[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[sink] < 0:
            break
        ptr = [0] * num_nodes
        while True:
            # walk one augmenting path in the level graph
            path = []
            u = source
            while u != sink:
                arcs = adj[u]
                while ptr[u] < len(arcs):
                    e = arcs[ptr[u]]
                    if res[e] > 0 and level[to[e]] == level[u] + 1:
                        break
                    ptr[u] += 1
                if ptr[u] == len(arcs):
                    if u == source:
                        break
                    level[u] = -1
                    e = path.pop()
                    u = to[e ^ 1]
                    ptr[u] += 1
                    continue
                e = arcs[ptr[u]]
                path.append(e)
                u = to[e]
            if u != sink:
                break
            push = min(res[e] for e in path)
            for e in path:
                res[e] -= push
                res[e ^ 1] += push
            total += push
    flows = [caps[i] - res[2 * i] for i in range(m)]
    return total, flows


def scipy_dinic(num_nodes, tails, heads, caps, source, sink):
    """``scipy.sparse.csgraph.maximum_flow`` (method ``dinic``); capacities must fit in int32."""
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    caps = np.asarray(caps, dtype=np.int64)
    if source == sink or len(tails) == 0:
        return 0, np.zeros(len(tails), dtype=np.int64)
    graph = csr_array((caps.astype(np.int32), (tails, heads)), shape=(num_nodes, num_nodes))
    graph.sort_indices()
    result = maximum_flow(graph, source, sink, method="dinic")
    net = result.flow.tocsr()
    net.sort_indices()
    # net flow on (a, b) is f_ab - f_ba; split it back onto the arcs
    along = _lookup(net, tails, heads)
    return int(result.flow_value), np.maximum(along, 0)


def _lookup(mat, rows, cols):
    indptr, indices, data = mat.indptr, mat.indices, mat.data
    out = np.zeros(len(rows), dtype=np.int64)
    if len(rows) == 0 or len(data) == 0:
        return out
    n = mat.shape[1]
    keys = np.repeat(np.arange(mat.shape[0], dtype=np.int64), np.diff(indptr)) * n + indices
    want = rows * n + cols
    pos = np.searchsorted(keys, want)
    pos[pos == len(keys)] = 0
    hit = keys[pos] == want
    out[hit] = data[pos[hit]]
    return out


BACKENDS = {"dinic": dinic, "scipy": scipy_dinic}


def register_backend(name, fn):
    """Make a max-flow solver available under ``name``."""
    BACKENDS[name] = fn


def _pick(backend, caps, tails, heads, num_nodes):
    if backend != "auto":
        return BACKENDS[backend]
    if len(caps) == 0 or num_nodes <= SMALL_GRAPH:
        return dinic
    big = max(int(c) for c in caps) if np.asarray(caps).dtype == object else int(np.max(caps))
    if big > _INT32_MAX:
        return dinic
    keys = np.asarray(tails, dtype=np.int64) * num_nodes + np.asarray(heads, dtype=np.int64)
    if len(np.unique(keys)) != len(keys):
        return dinic
    return scipy_dinic


def max_flow(net: FlowNetwork, source=None, sink=None, backend="auto") -> int:
    """Maximum flow value from ``source`` to ``sink`` under ``cap`` (lower bounds ignored)."""
    source = net.source if source is None else source
    sink = net.sink if sink is None else sink
    solve = _pick(backend, net.cap, net.tail, net.head, net.num_nodes)
    value, _ = solve(net.num_nodes, net.tail, net.head, net.cap, source, sink)
    return int(value)


# ---------------------------------------------------------------------------
# antichain network and min flow


def build_antichain_network(vd, weights) -> FlowNetwork:
    """Split-vertex network for a violator dag.

    Node ``2v`` is ``v_in``, ``2v+1`` is ``v_out``; ``s = 2n``, ``t = 2n+1``.
    Per vertex: ``s -> v_in``, ``v_in -> v_out`` (lower bound ``w(v)``, 0 for
    Steiner vertices), ``v_out -> t``; per violator edge ``(u, v)``:
    ``u_out -> v_in``.  Every capacity is infinite.
    """
    weights = list(weights)
    if len(weights) != vd.real_count:
        raise ValueError("one weight per original vertex required")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    nh = vd.n_hat
    s, t = 2 * nh, 2 * nh + 1
    v = np.arange(nh, dtype=np.int64)
    w = np.zeros(nh, dtype=np.int64 if sum(weights) <= _INT32_MAX else object)
    w[: vd.real_count] = weights
    zeros = np.zeros(nh, dtype=w.dtype)
    e = vd.edges
    tail = np.concatenate([np.full(nh, s), 2 * v, 2 * v + 1, 2 * e[:, 0] + 1]).astype(np.int64)
    head = np.concatenate([2 * v, 2 * v + 1, np.full(nh, t), 2 * e[:, 1]]).astype(np.int64)
    # interleave per-vertex arcs: s->in, in->out, out->t
    per_vertex = np.arange(3 * nh).reshape(3, nh).T.ravel()
    order = np.concatenate([per_vertex, 3 * nh + np.arange(len(e))])
    lower = np.concatenate([zeros, w, zeros, np.zeros(len(e), dtype=w.dtype)])
    inf = int(sum(weights)) + 1
    cap = np.full(len(tail), inf, dtype=w.dtype)
    return FlowNetwork(2 * nh + 2, s, t, tail[order], head[order], lower[order], cap[order], inf)


def flow_value(net, flow):
    flow = np.asarray(flow)
    out = flow[net.tail == net.source].sum() - flow[net.head == net.source].sum()
    return int(out)


def check_flow(net, flow):
    """Raise :class:`ExtractionMismatch` unless bounds and conservation hold."""
    flow = np.asarray(flow)
    if np.any(flow < net.lower) or np.any(flow > net.cap):
        raise ExtractionMismatch("flow violates an arc bound")
    inflow = np.zeros(net.num_nodes, dtype=flow.dtype)
    outflow = np.zeros(net.num_nodes, dtype=flow.dtype)
    np.add.at(inflow, net.head, flow)
    np.add.at(outflow, net.tail, flow)
    bal = inflow - outflow
    bal[[net.source, net.sink]] = 0
    if np.any(bal != 0):
        raise ExtractionMismatch("flow is not conserved")


def _residual(net, flow):
    """Residual arcs: forward with ``cap - flow`` (infinite stays infinite), backward with ``flow - lower``."""
    fwd = net.cap - flow
    if net.inf_cap is not None:
        fwd = np.where(net.cap == net.inf_cap, net.cap, fwd)
    bwd = flow - net.lower
    tails = np.concatenate([net.tail, net.head])
    heads = np.concatenate([net.head, net.tail])
    caps = np.concatenate([fwd, bwd])
    return tails, heads, caps


def _feasible_flow(net):
    flow = np.zeros(net.num_arcs, dtype=net.lower.dtype)
    from_s = {int(net.head[i]): i for i in np.flatnonzero(net.tail == net.source).tolist()}
    to_t = {int(net.tail[i]): i for i in np.flatnonzero(net.head == net.sink).tolist()}
    for i in np.flatnonzero(net.lower > 0).tolist():
        a, b = int(net.tail[i]), int(net.head[i])
        try:
            into, out = from_s[a], to_t[b]
        except KeyError:
            raise ValueError(f"arc {a}->{b} has a lower bound but no source/sink routing") from None
        flow[[into, i, out]] += net.lower[i]
    return flow


def min_flow_lower_bounds(net: FlowNetwork, backend="auto") -> np.ndarray:
    """Per-arc flow of minimum value meeting every lower bound.

    A feasible flow routes each lower bound along ``s -> a -> b -> t``;
    it is then reduced by a maximum ``t -> s`` flow in the residual network.
    """
    flow = _feasible_flow(net)
    tails, heads, caps = _residual(net, flow)
    keep = np.flatnonzero(caps > 0)
    solve = _pick(backend, caps[keep], tails[keep], heads[keep], net.num_nodes)
    _, moved = solve(net.num_nodes, tails[keep], heads[keep], caps[keep], net.sink, net.source)
    delta = np.zeros(len(caps), dtype=flow.dtype)
    delta[keep] = np.asarray(moved, dtype=flow.dtype)
    m = net.num_arcs
    return flow + delta[:m] - delta[m:]


def _reachable_from(num_nodes, tails, heads, caps, start):
    keep = caps > 0
    if num_nodes <= SMALL_GRAPH:
        return bfs_seen(num_nodes, tails[keep].tolist(), heads[keep].tolist(), start)
    g = csr_array((np.ones(int(keep.sum()), dtype=np.int8), (tails[keep], heads[keep])),
                  shape=(num_nodes, num_nodes))
    nodes = breadth_first_order(g, start, directed=True, return_predecessors=False)
    seen = np.zeros(num_nodes, dtype=bool)
    seen[nodes] = True
    return seen


def bfs_seen(num_nodes, tails, heads, start):
    """Boolean mask of nodes reachable from ``start`` (plain-Python BFS)."""
    succ = [[] for _ in range(num_nodes)]
    for a, b in zip(tails, heads):
        succ[a].append(b)
    seen = [False] * num_nodes
    seen[start] = True
    queue = deque([start])
    while queue:
        for b in succ[queue.popleft()]:
            if not seen[b]:
                seen[b] = True
                queue.append(b)
    return np.array(seen, dtype=bool)


def is_antichain(vd, members):
    """True iff no member of ``members`` reaches another in ``vd``."""
    members = np.asarray(sorted(members), dtype=np.int64)
    if len(members) < 2 or vd.m_hat == 0:
        return True
    nh = vd.n_hat
    e = vd.edges
    start = nh
    in_c = np.zeros(nh, dtype=bool)
    in_c[members] = True
    first = e[in_c[e[:, 0]], 1]
    tails = np.concatenate([e[:, 0], np.full(len(first), start)])
    heads = np.concatenate([e[:, 1], first])
    seen = _reachable_from(nh + 1, tails, heads, np.ones(len(tails), dtype=np.int8), start)
    return not np.any(seen[members])


def max_weight_antichain(vd, weights, backend="auto", check=True) -> AntichainResult:
    """Maximum-weight antichain of ``vd`` (original vertices only) via min flow.

    ``C = {v : v_out reachable from t in the final residual, v_in not}``.
    With ``check`` the flow bounds, conservation, antichain property and
    weight/flow equality are verified.
    """
    net = build_antichain_network(vd, weights)
    flow = min_flow_lower_bounds(net, backend=backend)
    value = flow_value(net, flow)
    tails, heads, caps = _residual(net, flow)
    seen = _reachable_from(net.num_nodes, tails, heads, caps, net.sink)
    r = vd.real_count
    v = np.arange(r)
    members = v[seen[2 * v + 1] & ~seen[2 * v]]
    weight = int(sum(weights[i] for i in members.tolist()))
    if check:
        check_flow(net, flow)
        if seen[net.source]:
            raise ExtractionMismatch("source still reachable from sink: flow not minimal")
        if weight != value:
            raise ExtractionMismatch(f"antichain weight {weight} != min flow value {value}")
        if not is_antichain(vd, members.tolist()):
            raise ExtractionMismatch("extracted set is not an antichain")
    return AntichainResult(frozenset(members.tolist()), weight, value)

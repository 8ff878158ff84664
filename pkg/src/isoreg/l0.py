"""L0 (Hamming distance) isotonic regression.

Build a violator dag, take a maximum-weight antichain of it (the vertices
left unchanged), and fill every other vertex from its antichain
predecessors or successors.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import breadth_first_order

from ._graph import OrderGraph
from .errors import NotAntichain
from .flow import SMALL_GRAPH, bfs_seen, max_weight_antichain
from .instances import instance_function, resolve_order
from .order import RegressionResult, WeightedFunction, regression_error


def extend_antichain(order, wf, members) -> list:
    """Isotonic values that agree with ``wf`` on ``members``.

    A vertex outside ``members`` takes the largest member value below it,
    or failing that the smallest member value above it.  Taken alone that
    rule is not always isotonic (a vertex with no member below can sit
    under one whose members below are all small), so every vertex without
    a member below is finally lowered to the smallest such value over its
    successors.  Member values and the "largest below" values are never
    changed by this.  ``order`` is a :class:`Dag` or an order graph
    (possibly with Steiner vertices).
    """
    graph = order if isinstance(order, OrderGraph) else OrderGraph(order.n, order.n, order.edges)
    f = wf.values if isinstance(wf, WeightedFunction) else list(wf)
    if len(f) != graph.real_count:
        raise ValueError("value count does not match the order")
    members = set(members)
    below = graph.max_below(f, members)
    for c in members:
        if below[c] is not None and below[c] > f[c]:
            raise NotAntichain(f"vertex {c} lies above a member with a larger value")
    above = graph.min_above(f, members)
    rule = []
    for v in range(graph.real_count):
        if v in members:
            rule.append(f[v])
        elif below[v] is not None:
            rule.append(below[v])
        elif above[v] is not None:
            rule.append(above[v])
        else:
            rule.append(f[v])
    later = graph.min_above(rule)
    out = list(rule)
    for v in range(graph.real_count):
        if below[v] is None and later[v] is not None and later[v] < out[v]:
            out[v] = later[v]
    return out


def _comparable(vd, members):
    """Original vertices comparable (either direction) with some member."""
    nh = vd.n_hat
    hit = np.zeros(nh, dtype=bool)
    if not members or vd.m_hat == 0:
        return hit[: vd.real_count]
    members = np.asarray(sorted(members), dtype=np.int64)
    for e in (vd.edges, vd.edges[:, ::-1]):
        in_c = np.zeros(nh, dtype=bool)
        in_c[members] = True
        first = e[in_c[e[:, 0]], 1]
        tails = np.concatenate([e[:, 0], np.full(len(first), nh)])
        heads = np.concatenate([e[:, 1], first])
        if nh < SMALL_GRAPH:
            hit |= bfs_seen(nh + 1, tails.tolist(), heads.tolist(), nh)[:nh]
            continue
        g = csr_array((np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(nh + 1, nh + 1))
        hit[breadth_first_order(g, nh, directed=True, return_predecessors=False)[1:]] = True
    return hit[: vd.real_count]


def _maximalize(vd, members, weights):
    # zero-weight vertices may be left out of a maximum-weight antichain;
    # the extension rule needs every outsider comparable to a member
    members = set(members)
    zero = [i for i in range(vd.real_count) if weights[i] == 0 and i not in members]
    if not zero:
        return members
    comp = _comparable(vd, members)
    for z in zero:
        if not comp[z]:
            members.add(z)
            comp = _comparable(vd, members)
    return members


def solve_l0(order, values, weights, subset=None, backend="auto"):
    """Run the L0 pipeline on an order adapter.

    ``values``/``weights`` are aligned with ``subset`` (all vertices when
    None).  Returns ``(new_values, diagnostics)``.
    """
    vd, pos = order.violator(values, subset)
    full_hat, full_m = vd.n_hat, vd.m_hat
    vd, kept = vd.drop_isolated()
    pos = [pos[i] for i in kept]
    w = [weights[p] for p in pos]
    diag = {"n_hat": full_hat, "m_hat": full_m, "steiner_count": vd.steiner_count,
            "flow_vertices": len(pos), "flow_weight": sum(w), "antichain_weight": 0, "flow_value": 0}
    in_flow = set(pos)
    members = set(p for p in range(len(values)) if p not in in_flow)
    if vd.real_count:
        res = max_weight_antichain(vd, w, backend=backend)
        chosen = _maximalize(vd, res.members, w)
        members.update(pos[i] for i in chosen)
        diag["antichain_weight"] = res.weight
        diag["flow_value"] = res.flow_value
    graph = order.graph(subset)
    new = extend_antichain(graph, values, members)
    if graph.violations(new):
        raise AssertionError("antichain extension is not isotonic")
    return new, diag


def l0_regress(instance, wf=None, violator_strategy="auto", backend="auto") -> RegressionResult:
    """Optimal L0 isotonic regression.

    ``instance`` is a :class:`Dag`, :class:`~isoreg.violator.PointSet`,
    :class:`~isoreg.instances.BoxSet` or :class:`~isoreg.instances.Pairwise`;
    ``wf`` defaults to the function attached to the instance.
    """
    wf = instance_function(instance, wf)
    order = resolve_order(instance, violator_strategy)
    values, diag = solve_l0(order, list(wf.values), list(wf.weights), backend=backend)
    error = regression_error(wf, values, "L0")
    if error != diag["flow_weight"] - diag["antichain_weight"]:
        raise AssertionError("L0 error differs from flow-vertex weight minus antichain weight")
    diag.update(strategy=order.strategy, pruned=len(wf) - diag["flow_vertices"])
    return RegressionResult(values, error, diag)

"""Points under coordinate-wise domination, and boxes under containment.

For points the violator dag can be built with Steiner vertices instead of
listing every violating pair; reachability is the same either way.
"""

import numpy as np

from isoreg import (BoxSet, PointSet, WeightedFunction, l0_regress, l1_regress,
                    rendezvous_violator, violator_pairwise)

rng = np.random.default_rng(7)
n = 200
coords = rng.integers(0, 50, size=(n, 2))
wf = WeightedFunction(rng.integers(0, 100, n).tolist(), rng.integers(1, 5, n).tolist())
points = PointSet(coords, wf)

steiner = rendezvous_violator(points)
print(f"rendezvous violator: {steiner.n_hat} vertices ({steiner.steiner_count} Steiner), {steiner.m_hat} edges")

def dominated(a, b):
    return bool(np.all(a <= b) and np.any(a != b))

direct = violator_pairwise(list(coords), dominated, wf)
print(f"pairwise violator:   {direct.n_hat} vertices, {direct.m_hat} edges")

for strategy in ("rendezvous", "closure"):
    r = l0_regress(points, wf, violator_strategy=strategy)
    print(f"L0 via {strategy:10s} error {r.error}")
print("L1 error", l1_regress(points, wf).error)

# boxes: a box precedes every box that strictly contains it
lower = rng.integers(0, 10, size=(30, 2))
upper = lower + rng.integers(0, 10, size=(30, 2))
bwf = WeightedFunction(rng.integers(0, 20, 30).tolist(), [1] * 30)
boxes = BoxSet(lower, upper, bwf)
print("boxes: L0 error", l0_regress(boxes, bwf).error, " L1 error", l1_regress(boxes, bwf).error)

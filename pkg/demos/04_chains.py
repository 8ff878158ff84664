"""On a chain (a total order) the general machinery still works, but the fast
paths are simpler: pooling adjacent violators for L2, a heaviest
nondecreasing subsequence for L0, and step functions for the binary L1 solves.
"""

import random

from isoreg import Dag, WeightedFunction, l0_chain, l0_regress, l1_chain, l1_regress, l2_exact, pav_l2

rng = random.Random(3)
n = 12
wf = WeightedFunction([rng.randint(0, 9) for _ in range(n)], [rng.randint(1, 3) for _ in range(n)])
chain = Dag.chain(n)
print("data ", wf.values)

fast, general = pav_l2(wf), l2_exact(chain, wf)
print("L2   ", [str(v) for v in fast.values])
print("     PAV error", fast.error, "== flow-based", general.error, ":", fast.error == general.error)

fast, general = l0_chain(wf), l0_regress(chain, wf)
print("L0   ", fast.values, " error", fast.error, "== flow-based", general.error)

fast, general = l1_chain(wf), l1_regress(chain, wf)
print("L1   ", fast.values, " error", fast.error, "== flow-based", general.error)

"""L0 regression on a small dag: keep the heaviest set of vertices whose
values are already consistent, and move everything else.

Behind the scenes: violator dag -> maximum-weight antichain by minimum flow
-> isotonic extension of the kept values.
"""

from isoreg import Dag, WeightedFunction, isotonic_check, l0_regress, violator_closure

#      0 -> 1 -> 3
#      0 -> 2 -> 3
dag = Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
wf = WeightedFunction([5, 2, 6, 4], [1, 3, 1, 2])

vd = violator_closure(dag, wf)
print("violating pairs (u before v, f(u) > f(v)):", sorted(map(tuple, vd.edges.tolist())))

r = l0_regress(dag, wf)
print("fit      ", r.values)
print("changed  ", [i for i, (a, b) in enumerate(zip(wf.values, r.values)) if a != b])
print("error    ", r.error, "(total weight of changed vertices)")
print("order violations in the fit:", isotonic_check(dag, r.values))
print("diagnostics", r.diagnostics)

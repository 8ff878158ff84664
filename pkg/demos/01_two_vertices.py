"""The smallest interesting case: two vertices a < b with f(a)=1, f(b)=0.

The data violate the order, so every fit must change something.
"""

from isoreg import Dag, WeightedFunction, l0_regress, l1_regress, l2_exact, lp_approx

dag = Dag(2, [(0, 1)])
wf = WeightedFunction([1, 0], [1, 1])

print("data        ", wf.values)
for name, fit in [("L0", l0_regress), ("L1", l1_regress), ("L2", l2_exact)]:
    r = fit(dag, wf)
    print(f"{name} fit      ", [str(v) for v in r.values], " error", r.error)

# Lp on a grid of spacing 0.01: both vertices land within 0.01 of 1/2
for p in (1.5, 3):
    r = lp_approx(dag, wf, p=p, delta=0.01)
    print(f"L{p} fit    ", [float(v) for v in r.values], " error", round(float(r.error), 6))

"""
Monotonicity and prioritized default rules
==========================================

Revision matrices preserve the specialization order, conditioning matrices
do not.  The "birds fly, penguins don't" rules on the refined frame give a
matrix that is not monotonic either.
"""

from massflow import MassDistribution, apply, conditional_matrix, is_monotonic, make_frame, revision_matrix, tweety
from massflow.specialization import violates_monotonicity

frame = make_frame(["a", "b", "c"])
e = frame.subset(["a", "b"])
print("R(E) monotonic:", is_monotonic(revision_matrix(frame, e)).monotonic)
report = is_monotonic(conditional_matrix(frame, e))
a, b, c = report.counterexample
print("C(E) monotonic:", report.monotonic, "counterexample",
      frame.format(a), frame.format(b), frame.format(c))

tw = tweety()
f = tw.fine
birds = f.cylinder("animals", ["eagles", "penguins"])
penguins = f.cylinder("animals", ["penguins"])
fly = f.cylinder("flight", ["fly"])

for src in (birds, penguins):
    out = apply(MassDistribution(f, {src: 1.0}), tw.penguins_dont).result
    print(f.format(src), "->", [f.format(x) for x in out.focal])

print("rules monotonic on the fine frame:", is_monotonic(tw.penguins_dont).monotonic)
print("penguins / not-flying penguins / birds is a violation:",
      violates_monotonicity(tw.penguins_dont, penguins, penguins & ~fly & f.full, birds))
print("birds rule alone, coarse frame, monotonic:", is_monotonic(tw.birds_fly).monotonic)

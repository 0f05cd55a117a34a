"""
Conditioning and revision
=========================

Two ways to take in the news that the truth lies in E: keep only what
already supported E, or move every focal set into E.
"""

from massflow import ConditioningUndefined, condition, make_frame, make_mass, revise, revised_belief, tables

frame = make_frame(["a", "b", "c"])
m = make_mass(frame, [(["a"], 0.4), (["a", "b"], 0.6)])
e = frame.subset(["b"])

out = revise(m, e)
print("revised:", out.result, "discarded:", out.discarded, "belief vanishes:", out.belief_vanishes)

try:
    condition(m, e)
except ConditioningUndefined as exc:
    print("conditioning on {b}:", exc)

ab = frame.subset(["a", "b"])
print("conditioned on {a,b}:", condition(m, ab).result)

# the revised belief has a closed form in the original tables
for a in range(1 << frame.size):
    closed = revised_belief(m, ab, a)
    dense = tables(revise(m, ab).result).bel[a]
    print(f"Bel({frame.format(a)} | revised) = {closed:.3f}  (tables: {dense:.3f})")

"""
Specialization matrices and flow witnesses
==========================================

Every specialization comes from moving mass to subsets.  Given two
distributions, find the flow that turns one into the other.
"""

from massflow import (
    NotASpecialization,
    apply,
    flow_to_matrix,
    is_specialization,
    make_frame,
    make_mass,
    make_matrix,
    strong_inclusion,
    witness_flow,
)

frame = make_frame(["a", "b", "c"])
t = make_mass(frame, [(["a"], 0.4), (["a", "b"], 0.6)])

# a hand-made matrix: {a,b} splits between {b} and {a,b}; {a} is emptied
v = make_matrix(frame, {
    frame.subset(["a", "b"]): [(frame.subset(["b"]), 0.5), (frame.subset(["a", "b"]), 0.5)],
    frame.subset(["a"]): [(0, 1.0)],
})
s, c = apply(t, v)
print("s =", s, "consistency", c)
print("s specializes t:", is_specialization(s, t))
print("strongly included:", strong_inclusion(s, t))

plan = witness_flow(s, t)
for (src, dst), x in plan.flows.items():
    print(f"  {frame.format(src)} -> {frame.format(dst)}: {x:.3f}")
print("best consistency", plan.consistency, "monotonic witness", plan.monotonic)
print("rebuilt:", apply(t, flow_to_matrix(plan, t)).result)

try:
    witness_flow(t, s)
except NotASpecialization as exc:
    print("the other way round:", exc)

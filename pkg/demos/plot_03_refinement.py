"""
Refinements, projection and vacuous extension
=============================================

A coarse frame of animal kinds and flight, refined so that birds split into
eagles and penguins.
"""

from massflow import make_mass, outer_reduction, project, tweety, vacuous_extension, validate_refinement

tw = tweety()
r = tw.refinement
print("coarse:", tw.coarse.labels)
print("fine:  ", tw.fine.labels)
print("valid refinement:", bool(validate_refinement(r)))

coarse_m = make_mass(tw.coarse, [([("birds", "fly")], 0.7), (tw.coarse.full, 0.3)])
fine_m = vacuous_extension(r, coarse_m)
print("extended:", fine_m)
print("projected back:", project(r, fine_m))

penguins_not_flying = tw.fine.subset([("penguins", "not fly")])
print("outer reduction of {(penguins, not fly)}:",
      tw.coarse.format(outer_reduction(r, penguins_not_flying)))

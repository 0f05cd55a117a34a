"""
Compatibility relations
=======================

Each set of animal kinds is told which flight values it allows.  The
relation compiles to a specialization matrix on the product frame, and an
irregular relation (a larger set allowing values a smaller one rules out)
gives a non-monotonic matrix.
"""

from massflow import compatibility_to_matrix, is_irregular, is_monotonic, make_frame, make_relation

animals = make_frame(["birds", "penguins"])
flight = make_frame(["fly", "not fly"])

regular = make_relation(animals, flight, [
    (["birds"], "fly"),
    (["penguins"], "not fly"),
    (["birds", "penguins"], "fly"),
    (["birds", "penguins"], "not fly"),
], x_name="animals", y_name="flight")
irregular = make_relation(animals, flight, [
    (["birds"], "fly"),
    (["penguins"], "not fly"),
    (["birds", "penguins"], "fly"),
], x_name="animals", y_name="flight")

for name, rel in (("regular", regular), ("irregular", irregular)):
    found = is_irregular(rel)
    v = compatibility_to_matrix(rel)
    witness = found.witness and tuple(animals.format(t) for t in found.witness)
    print(f"{name}: irregular={found.irregular} witness={witness} "
          f"monotonic={is_monotonic(v).monotonic} rows={len(v.nontrivial_rows())}")

"""JSON encoding of frames, masses, matrices, rules and relations.

Subsets are label arrays in frame order; product cells are arrays of
per-dimension labels; the empty set is ``[]``.  Floats go through
``repr``, which is the shortest decimal that round-trips a float64.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InvalidInput
from .frame import Frame, Refinement, labels_to_json, make_frame, make_product_frame, validate_refinement
from .mass import EvidenceTables, MassDistribution, make_mass
from .rules import CompatibilityRelation, ImplicationRule, make_relation
from .specialization import FlowPlan, SpecializationMatrix, make_matrix


def _label(x: Any) -> Any:
    return tuple(x) if isinstance(x, list) else x


def _need(obj: Any, key: str, what: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput(f"{what} JSON needs a {key!r} field")
    return obj[key]


# -- frames -------------------------------------------------------------------


def frame_to_json(frame: Frame) -> dict:
    if frame.dimensions is not None:
        return {"dimensions": [{"name": n, "labels": list(v)} for n, v in frame.dimensions]}
    return {"elements": list(frame.labels)}


def frame_from_json(obj: Any) -> Frame:
    if isinstance(obj, dict) and "dimensions" in obj:
        return make_product_frame(
            (_need(d, "name", "dimension"), _need(d, "labels", "dimension")) for d in obj["dimensions"]
        )
    return make_frame(_label(x) for x in _need(obj, "elements", "frame"))


def subset_to_json(frame: Frame, mask: int) -> list:
    return labels_to_json(frame, mask)


def subset_from_json(frame: Frame, labels: Any) -> int:
    if not isinstance(labels, list):
        raise InvalidInput(f"a subset is a JSON array of labels, got {labels!r}")
    return frame.subset(_label(x) for x in labels)


# -- masses -------------------------------------------------------------------


def mass_to_json(m: MassDistribution) -> dict:
    return {
        "frame": frame_to_json(m.frame),
        "masses": [{"set": subset_to_json(m.frame, a), "mass": v} for a, v in m.items()],
    }


def mass_from_json(obj: Any, frame: Frame | None = None, normalize: bool = False) -> MassDistribution:
    if frame is None:
        frame = frame_from_json(_need(obj, "frame", "mass"))
    pairs = [
        (subset_from_json(frame, _need(e, "set", "mass entry")), _need(e, "mass", "mass entry"))
        for e in _need(obj, "masses", "mass")
    ]
    return make_mass(frame, pairs, normalize=normalize)


def tables_to_json(t: EvidenceTables) -> dict:
    f = t.frame
    return {
        "frame": frame_to_json(f),
        "tables": [
            {
                "set": subset_to_json(f, a),
                "bel": float(t.bel[a]),
                "pl": float(t.pl[a]),
                "q": float(t.q[a]),
            }
            for a in range(1 << f.size)
        ],
    }


def tables_from_json(obj: Any) -> EvidenceTables:
    frame = frame_from_json(_need(obj, "frame", "tables"))
    size = 1 << frame.size
    bel, pl, q = np.zeros(size), np.zeros(size), np.zeros(size)
    for e in _need(obj, "tables", "tables"):
        a = subset_from_json(frame, e["set"])
        bel[a], pl[a], q[a] = e["bel"], e["pl"], e["q"]
    return EvidenceTables(frame, bel, pl, q)


# -- refinements --------------------------------------------------------------


def refinement_to_json(r: Refinement) -> dict:
    return {
        "coarse": frame_to_json(r.coarse),
        "fine": frame_to_json(r.fine),
        "image": [
            {"element": labels_to_json(r.coarse, 1 << i)[0], "cells": subset_to_json(r.fine, img)}
            for i, img in enumerate(r.image)
        ],
    }


def refinement_from_json(obj: Any) -> Refinement:
    coarse = frame_from_json(_need(obj, "coarse", "refinement"))
    fine = frame_from_json(_need(obj, "fine", "refinement"))
    image = [0] * coarse.size
    for e in _need(obj, "image", "refinement"):
        i = coarse.index(_label(_need(e, "element", "image entry")))
        image[i] = subset_from_json(fine, _need(e, "cells", "image entry"))
    r = Refinement(coarse, fine, tuple(image))
    report = validate_refinement(r)
    if not report:
        raise InvalidInput("not a refinement: " + "; ".join(report.violations()))
    return r


# -- matrices and flows -------------------------------------------------------


def matrix_to_json(v: SpecializationMatrix) -> dict:
    f = v.frame
    return {
        "frame": frame_to_json(f),
        "default": "identity",
        "rows": [
            {
                "from": subset_to_json(f, a),
                "to": [{"set": subset_to_json(f, b), "weight": w} for b, w in row],
            }
            for a, row in v.nontrivial_rows().items()
        ],
    }


def matrix_from_json(obj: Any, frame: Frame | None = None) -> SpecializationMatrix:
    if frame is None:
        frame = frame_from_json(_need(obj, "frame", "matrix"))
    default = obj.get("default", "identity") if isinstance(obj, dict) else None
    if default != "identity":
        raise InvalidInput(f"unsupported default row policy {default!r}")
    rows = []
    for r in _need(obj, "rows", "matrix"):
        a = subset_from_json(frame, _need(r, "from", "row"))
        targets = [
            (subset_from_json(frame, _need(t, "set", "row target")), _need(t, "weight", "row target"))
            for t in _need(r, "to", "row")
        ]
        rows.append((a, targets))
    return make_matrix(frame, rows)


def flow_to_json(p: FlowPlan) -> dict:
    f = p.frame
    return {
        "frame": frame_to_json(f),
        "consistency": p.consistency,
        "monotonic": p.monotonic,
        "flows": [
            {"from": subset_to_json(f, a), "to": subset_to_json(f, b), "mass": x}
            for (a, b), x in p.flows.items()
        ],
    }


def flow_from_json(obj: Any) -> FlowPlan:
    frame = frame_from_json(_need(obj, "frame", "flow plan"))
    flows = {}
    for e in _need(obj, "flows", "flow plan"):
        key = (subset_from_json(frame, e["from"]), subset_from_json(frame, e["to"]))
        flows[key] = float(e["mass"])
    return FlowPlan(frame, flows, float(obj["consistency"]), obj.get("monotonic"))


# -- rules and relations ------------------------------------------------------


def rules_to_json(rules: list[ImplicationRule], frame: Frame | None = None) -> dict:
    out: dict[str, Any] = {}
    if frame is not None:
        out["frame"] = frame_to_json(frame)
    out["rules"] = [
        {
            "premise": {"dim": r.premise_dim, "labels": list(r.premise)},
            "conclusion": {"dim": r.conclusion_dim, "labels": list(r.conclusion)},
            "priority": r.priority,
        }
        for r in rules
    ]
    return out


def rules_from_json(obj: Any) -> list[ImplicationRule]:
    out = []
    for r in _need(obj, "rules", "rules"):
        prem = _need(r, "premise", "rule")
        conc = _need(r, "conclusion", "rule")
        out.append(
            ImplicationRule(
                _need(prem, "dim", "premise"),
                [_label(x) for x in _need(prem, "labels", "premise")],
                _need(conc, "dim", "conclusion"),
                [_label(x) for x in _need(conc, "labels", "conclusion")],
                int(r.get("priority", 0)),
            )
        )
    return out


def relation_to_json(r: CompatibilityRelation) -> dict:
    pairs = []
    for t, w in r.pairs.items():
        for y in r.y_frame.members(w):
            pairs.append({"T": subset_to_json(r.x_frame, t), "y": y})
    return {
        "x_name": r.x_name,
        "y_name": r.y_name,
        "x_frame": frame_to_json(r.x_frame),
        "y_frame": frame_to_json(r.y_frame),
        "pairs": pairs,
    }


def relation_from_json(obj: Any, x_frame: Frame | None = None, y_frame: Frame | None = None) -> CompatibilityRelation:
    x_frame = x_frame or frame_from_json(_need(obj, "x_frame", "relation"))
    y_frame = y_frame or frame_from_json(_need(obj, "y_frame", "relation"))
    pairs = [
        ([_label(x) for x in _need(p, "T", "pair")], _label(_need(p, "y", "pair")))
        for p in _need(obj, "pairs", "relation")
    ]
    return make_relation(x_frame, y_frame, pairs, obj.get("x_name", "x"), obj.get("y_name", "y"))


# -- files --------------------------------------------------------------------


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)

"""JSON encoding of domain objects.

Rationals are ``[numerator, denominator]`` pairs and points are ``[x, y]``
pairs; nothing is ever written as a decimal. Encoders produce canonically
ordered data, and every ``encode_*`` has a matching ``decode_*`` such that
``decode(encode(obj)) == obj``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .fan import (
    CensusEntry,
    CompletenessCertificate,
    FanCensus,
    SecondaryCone,
    SeveriConeCheck,
    WitnessReport,
)
from .geometry import MarkedPolygon, Point, Segment, as_point
from .multiplicity import MultiplicityReport
from .subdivision import (
    ClassificationReport,
    HeightFunction,
    MarkedCell,
    Subdivision,
    subdivision_from_cells,
)
from .tropcurve import BoundedEdge, Ray, TropicalCurve

_POINT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
_RATIONAL = {
    "anyOf": [
        {"type": "integer"},
        {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
    ]
}
_CELL = {
    "type": "object",
    "properties": {
        "vertices": {"type": "array", "items": _POINT, "minItems": 3},
        "marks": {"type": "array", "items": _POINT},
    },
    "required": ["vertices"],
}

INPUT_SCHEMA = {
    "type": "object",
    "properties": {
        "polygon": {"type": "array", "items": _POINT, "minItems": 3},
        "marks": {"type": "array", "items": _POINT},
        "heights": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_POINT, _RATIONAL], "minItems": 2, "maxItems": 2},
        },
        "subdivision": {
            "type": "object",
            "properties": {"cells": {"type": "array", "items": _CELL, "minItems": 1}},
            "required": ["cells"],
        },
    },
    "required": ["polygon"],
}


def validate_input(doc: Any) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``doc`` is a valid job input."""
    jsonschema.validate(doc, INPUT_SCHEMA, cls=jsonschema.Draft202012Validator)


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, one key per line, short arrays kept
    on one line, trailing newline."""
    return _format(data, 0) + "\n"


def _format(v: Any, level: int) -> str:
    pad = "  " * (level + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_format(v[k], level + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(v, list):
        flat = json.dumps(v, separators=(", ", ": "), sort_keys=True)
        if len(flat) <= 80 and not any(isinstance(x, dict) for x in v):
            return flat
        items = [pad + _format(x, level + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(v)


# -- scalars --------------------------------------------------------------------

def encode_rational(q) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def decode_rational(data) -> Fraction:
    if isinstance(data, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(data, int):
        return Fraction(data)
    num, den = data
    if not isinstance(num, int) or not isinstance(den, int) or den == 0:
        raise ValueError(f"bad rational {data!r}")
    return Fraction(num, den)


def encode_point(p) -> list[int]:
    return [p[0], p[1]]


def decode_point(data) -> Point:
    return as_point(data)


def encode_segment(s: Segment) -> list[list[int]]:
    return [encode_point(s[0]), encode_point(s[1])]


def decode_segment(data) -> Segment:
    return Segment(decode_point(data[0]), decode_point(data[1]))


# -- polygons, heights, subdivisions ---------------------------------------------------

def encode_polygon(P: MarkedPolygon) -> dict:
    return {"polygon": [encode_point(v) for v in P.vertices], "marks": [encode_point(m) for m in P.marks]}


def decode_polygon(data: dict) -> MarkedPolygon:
    marks = data.get("marks")
    return MarkedPolygon.from_points(
        [decode_point(p) for p in data["polygon"]],
        None if marks is None else [decode_point(m) for m in marks],
    )


def encode_heights(psi: HeightFunction) -> list:
    return [[encode_point(a), encode_rational(v)] for a, v in zip(psi.base.marks, psi.values)]


def decode_heights(base: MarkedPolygon, data: list) -> HeightFunction:
    mapping = {}
    for point, value in data:
        p = decode_point(point)
        if p in mapping:
            raise ValueError(f"two heights given for {p}")
        mapping[p] = decode_rational(value)
    return HeightFunction.from_mapping(base, mapping)


def _encode_cells(cells) -> list:
    return [
        {"vertices": [encode_point(v) for v in c.vertices], "marks": [encode_point(m) for m in c.marks]}
        for c in cells
    ]


def encode_subdivision(S: Subdivision) -> dict:
    return {"cells": _encode_cells(S.cells)}


def decode_subdivision(base: MarkedPolygon, data: dict, validate: bool = True) -> Subdivision:
    cells = []
    for c in data["cells"]:
        marks = c.get("marks")
        cells.append((
            [decode_point(v) for v in c["vertices"]],
            None if marks is None else [decode_point(m) for m in marks],
        ))
    return subdivision_from_cells(base, cells, validate=validate)


# -- cones and census -------------------------------------------------------------------

def encode_cone(C: SecondaryCone) -> dict:
    return {"equalities": [list(r) for r in C.equalities], "inequalities": [list(r) for r in C.inequalities]}


def decode_cone(base: MarkedPolygon, data: dict) -> SecondaryCone:
    return SecondaryCone(
        base,
        tuple(tuple(r) for r in data["equalities"]),
        tuple(tuple(r) for r in data["inequalities"]),
    )


def encode_certificate(c: CompletenessCertificate) -> dict:
    return {"seed": c.seed, "samples": c.samples, "failures": c.failures, "distinct_hits": c.distinct_hits}


def decode_certificate(data: dict) -> CompletenessCertificate:
    return CompletenessCertificate(data["seed"], data["samples"], data["failures"], data["distinct_hits"])


def encode_census(census: FanCensus) -> dict:
    return {
        **encode_polygon(census.base),
        "certificate": encode_certificate(census.certificate),
        "entries": [
            {
                "subdivision": encode_subdivision(e.subdivision),
                "cone": encode_cone(e.cone),
                "dimension": e.dimension,
                "effective": e.effective,
                "interior_point": [encode_rational(v) for v in e.interior_point],
            }
            for e in census.entries
        ],
    }


def decode_census(data: dict) -> FanCensus:
    base = decode_polygon(data)
    entries = tuple(
        CensusEntry(
            decode_subdivision(base, e["subdivision"], validate=False),
            decode_cone(base, e["cone"]),
            e["dimension"],
            e["effective"],
            tuple(decode_rational(v) for v in e["interior_point"]),
        )
        for e in data["entries"]
    )
    return FanCensus(base, entries, decode_certificate(data["certificate"]))


# -- curves ---------------------------------------------------------------------------

def encode_curve(curve: TropicalCurve) -> dict:
    return {
        "vertices": [[encode_rational(x), encode_rational(y)] for x, y in curve.vertices],
        "bounded_edges": [
            {"vertices": [e.start, e.end], "weight": e.weight, "dual": encode_segment(e.dual)}
            for e in curve.bounded_edges
        ],
        "rays": [
            {"vertex": r.vertex, "direction": list(r.direction), "weight": r.weight, "dual": encode_segment(r.dual)}
            for r in curve.rays
        ],
        "cells": _encode_cells(curve.cells),
    }


def decode_curve(data: dict) -> TropicalCurve:
    return TropicalCurve(
        vertices=tuple((decode_rational(x), decode_rational(y)) for x, y in data["vertices"]),
        bounded_edges=tuple(
            BoundedEdge(e["vertices"][0], e["vertices"][1], e["weight"], decode_segment(e["dual"]))
            for e in data["bounded_edges"]
        ),
        rays=tuple(
            Ray(r["vertex"], tuple(r["direction"]), r["weight"], decode_segment(r["dual"]))
            for r in data["rays"]
        ),
        cells=tuple(
            MarkedCell(tuple(decode_point(v) for v in c["vertices"]), tuple(decode_point(m) for m in c["marks"]))
            for c in data["cells"]
        ),
    )


# -- reports ---------------------------------------------------------------------------

def encode_classification(r: ClassificationReport) -> dict:
    return {
        "is_effective": r.is_effective,
        "is_simple": r.is_simple,
        "is_nodal": r.is_nodal,
        "special_points": [
            {"cell": i, "points": [encode_point(p) for p in pts]} for i, pts in sorted(r.special_points.items())
        ],
        "edge_classes": [[encode_segment(e) for e in cls] for cls in r.edge_classes],
    }


def decode_classification(data: dict) -> ClassificationReport:
    return ClassificationReport(
        is_effective=data["is_effective"],
        is_simple=data["is_simple"],
        is_nodal=data["is_nodal"],
        special_points={
            s["cell"]: tuple(decode_point(p) for p in s["points"]) for s in data["special_points"]
        },
        edge_classes=tuple(tuple(decode_segment(e) for e in cls) for cls in data["edge_classes"]),
    )


def encode_multiplicity(r: MultiplicityReport) -> dict:
    return {
        "mode": r.mode,
        "triangle_factor": r.triangle_factor,
        "parallelogram_factor": r.parallelogram_factor,
        "edge_product_full": r.edge_product_full,
        "edge_product_classes": r.edge_product_classes,
        "l_vs": r.l_vs,
        "l_vs_source": r.l_vs_source,
        "value": encode_rational(r.value),
    }


def decode_multiplicity(data: dict) -> MultiplicityReport:
    fields = dict(data)
    fields["value"] = decode_rational(data["value"])
    return MultiplicityReport(**fields)


def encode_severi_check(c: SeveriConeCheck) -> dict:
    return {
        "dimension": c.dimension,
        "expected_dimension": c.expected_dimension,
        "is_simple": c.is_simple,
        "is_nodal": c.is_nodal,
        "special_point_free": c.special_point_free,
        "contained": c.contained,
    }


def decode_severi_check(data: dict) -> SeveriConeCheck:
    fields = {k: v for k, v in data.items() if k != "contained"}
    return SeveriConeCheck(**fields)


def encode_witness(w: WitnessReport) -> dict:
    return {
        "effective": w.effective,
        "rank": w.rank,
        "expected_dimension": w.expected_dimension,
        "cone_dim_psi": w.cone_dim_psi,
        "candidate": w.candidate,
        "mechanism_holds": w.mechanism_holds,
        "tropical_membership": w.tropical_membership,
    }


def decode_witness(data: dict) -> WitnessReport:
    return WitnessReport(**data)

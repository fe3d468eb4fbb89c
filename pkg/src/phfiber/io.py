"""JSON and DOT serialization for the command line documents.

Every document is built from JSON-native values only (dicts, lists, strings,
ints, bools, None), so dumping and re-loading is exact. Rational numbers are
rendered as "num/den" strings, endpoint symbols as the tokens zero, one, inf,
or a positive rank.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .barcodes import format_barcode_type, symbol_token
from .category import MorphismClass
from .errors import ParseError
from .fiber import FiberComplex, TriangulatedFiber, fiber_dimension
from .monodromy import MonodromyMap
from .simplicial import SimplicialComplex, build_complex, simplex
from .strata import BarcodeStratumRecord, FilterStratum

MODE_TOKENS = {"all": "all", "interior_only": "interior", "lower_star": "lower-star"}


def dumps(doc) -> str:
    """The one JSON rendering used by every subcommand."""
    return json.dumps(doc, indent=2) + "\n"


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    try:
        if not sep:
            raise ValueError
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {text!r}, expected num/den") from None


def complex_from_doc(doc) -> SimplicialComplex:
    """Build a complex from {"maximal_simplices": [[v, ...], ...]}."""
    if not isinstance(doc, dict) or "maximal_simplices" not in doc:
        raise ParseError('complex document must contain "maximal_simplices"')
    sims = doc["maximal_simplices"]
    well_formed = isinstance(sims, list) and all(
        isinstance(s, list)
        and all(isinstance(v, int) and not isinstance(v, bool) for v in s)
        for s in sims
    )
    if not well_formed:
        raise ParseError("maximal_simplices must be a list of integer lists")
    return build_complex(sims)


def complex_doc(K: SimplicialComplex) -> dict:
    """A loadable document listing the maximal simplices."""
    maximal = [
        list(s.vertices)
        for s in K.simplices
        if not any(set(s.vertices) < set(t.vertices) for t in K.simplices)
    ]
    return {"maximal_simplices": maximal}


def load_complex(path: str) -> SimplicialComplex:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"complex file {path} is not valid JSON: {exc}") from exc
    return complex_from_doc(doc)


def stratum_doc(stratum: FilterStratum, K: SimplicialComplex) -> dict:
    return {
        "blocks": [
            [list(s.vertices) for s in sorted(block, key=lambda s: s.sort_key)]
            for block in stratum.blocks
        ],
        "at_zero": stratum.at_zero,
        "at_one": stratum.at_one,
    }


def parse_stratum_doc(doc) -> FilterStratum:
    try:
        blocks = tuple(
            frozenset(simplex(vs) for vs in block) for block in doc["blocks"]
        )
        return FilterStratum(blocks, bool(doc["at_zero"]), bool(doc["at_one"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed stratum document: {exc}") from exc


def strata_doc(K: SimplicialComplex, strata: Iterable[FilterStratum]) -> list:
    return [stratum_doc(st, K) for st in strata]


def image_doc(records: Iterable[BarcodeStratumRecord]) -> list:
    return [
        {
            "barcode_type": format_barcode_type(r.barcode_type),
            "member_ids": list(r.member_ids),
            "codim": r.codim,
            "bounded_deficit": fraction_str(r.bounded_deficit),
        }
        for r in records
    ]


def fiber_doc(fc: FiberComplex) -> dict:
    m = fc.barcode_type.dim
    return {
        "barcode_type": format_barcode_type(fc.barcode_type),
        "field": fc.field.characteristic,
        "mode": MODE_TOKENS[fc.mode],
        "cells": [
            {"id": i, "dim": c.dim, "stratum": stratum_doc(c.stratum, fc.complex)}
            for i, c in enumerate(fc.cells)
        ],
        "face_relation": [list(pair) for pair in fc.face_relation],
        "gap_shapes": [list(c.gap_shape) for c in fc.cells],
        "vertices": [
            {
                "cell": i,
                "rank_vector": [
                    symbol_token(s, m) for s in fc.cells[i].rank_vector
                ],
            }
            for i in fc.zero_cells()
        ],
    }


def _bar_tokens(bar: tuple[int, int], m: int) -> list[str]:
    return [symbol_token(bar[0], m), symbol_token(bar[1], m)]


def morphism_class_doc(cls: MorphismClass) -> dict:
    ms, mt = cls.source.dim, cls.target.dim
    return {
        "source": format_barcode_type(cls.source),
        "target": format_barcode_type(cls.target),
        "representative": [symbol_token(r, mt) for r in cls.representative.rank_images],
        "index": [list(part) for part in cls.index],
        "bar_matching": [
            [
                {
                    "bar": _bar_tokens(bar, ms),
                    "image": None if img is None else _bar_tokens(img, mt),
                }
                for bar, img in deg
            ]
            for deg in cls.bar_matching
        ],
        "is_identity": cls.is_identity,
    }


def morphisms_doc(classes: Iterable[MorphismClass]) -> list:
    return [morphism_class_doc(c) for c in classes]


def monodromy_doc(mm: MonodromyMap) -> dict:
    return {
        "vertex_map": [list(pair) for pair in mm.vertex_map],
        "cell_map": list(mm.cell_map),
        "collapsed_cells": list(mm.collapsed_cells),
        "surviving_cells": list(mm.surviving_cells),
    }


def bounds_doc(rows) -> list:
    return [
        {
            "barcode_type": format_barcode_type(r.barcode_type),
            "fiber_dim": r.fiber_dim,
            "bounded_deficit": fraction_str(r.bounded_deficit),
            "codim": r.codim,
            "tight": r.tight,
        }
        for r in rows
    ]


def essential_doc(essential: bool, witness) -> dict:
    return {
        "essential": essential,
        "removable_subset": None
        if witness is None
        else [list(s.vertices) for s in witness],
    }


def symmetries_doc(
    fc: FiberComplex,
    perms: Sequence[dict],
    actions: Sequence[tuple[int, ...]],
    orbits: Sequence[tuple[int, ...]],
) -> dict:
    return {
        "barcode_type": format_barcode_type(fc.barcode_type),
        "automorphisms": [
            {"permutation": [[v, perm[v]] for v in sorted(perm)], "cells": list(action)}
            for perm, action in zip(perms, actions)
        ],
        "orbits": [list(o) for o in orbits],
    }


def emit_dot(tf: TriangulatedFiber) -> str:
    """DOT text for the triangulation's graph, nodes labeled by rank vectors.

    For fibers of dimension at most 1 this is the whole fiber; otherwise only
    the 1-skeleton is drawn and a comment line says so.
    """
    m = tf.fiber.barcode_type.dim
    lines = ["graph fiber {"]
    d = fiber_dimension(tf.fiber)
    if d > 1:
        lines.append(f"  // 1-skeleton only: fiber dimension {d}")
    for i, vec in enumerate(tf.vertices):
        label = ",".join(symbol_token(s, m) for s in vec)
        lines.append(f'  n{i} [label="({label})"];')
    for a, b in tf.edges():
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Shared fixtures: standard complexes, named barcode types, golden counts."""

from fractions import Fraction

import pytest

import phfiber as ph

# Barcode types of the hollow triangle, keyed by the shape of their fiber or
# the structure of their bars.
TYPE_STRINGS = {
    # codimension 0: two bounded component bars and the infinite pair
    "bars_disjoint": "0:(1,inf),(2,3),(4,5);1:(6,inf)",
    "bars_crossing": "0:(1,inf),(2,4),(3,5);1:(6,inf)",
    "bars_nested": "0:(1,inf),(2,5),(3,4);1:(6,inf)",
    # codimension 2: fiber is two disjoint circles
    "two_circles": "0:(1,inf),(2,3);1:(4,inf)",
    # codimension 3: fiber is one 18-gon circle
    "circle_shared_birth": "0:(1,2),(1,inf);1:(3,inf)",
    "circle_shared_death": "0:(1,inf),(2,3);1:(3,inf)",
    # codimension 4
    "mobius": "0:(1,inf);1:(2,inf)",
    "hexagon": "0:(1,2),(1,inf);1:(2,inf)",
    "twin_pairs": "0:(1,2),(1,2),(1,inf);1:(2,inf)",
    # codimension 5: the single most degenerate interior type
    "point": "0:(1,inf);1:(1,inf)",
}

# Fiber cell counts by dimension and Betti numbers of the triangulation.
FIBER_CENSUS = {
    "bars_disjoint": ({0: 12}, (12, 0)),
    "bars_crossing": ({0: 12}, (12, 0)),
    "bars_nested": ({0: 24}, (24, 0)),
    "two_circles": ({0: 48, 1: 48}, (2, 2)),
    "circle_shared_birth": ({0: 18, 1: 18}, (1, 1)),
    "circle_shared_death": ({0: 18, 1: 18}, (1, 1)),
    "mobius": ({0: 9, 1: 21, 2: 12}, (1, 1, 0)),
    "hexagon": ({0: 6, 1: 6}, (1, 1)),
    "twin_pairs": ({0: 1}, (1, 0)),
    "point": ({0: 1}, (1, 0)),
}

# Number of interior barcode strata of the triangle per codimension.
TRIANGLE_CODIM_COUNTS = {0: 3, 1: 9, 2: 11, 3: 7, 4: 3, 5: 1}


@pytest.fixture(scope="session")
def triangle():
    return ph.build_complex([[0, 1], [1, 2], [0, 2]])


@pytest.fixture(scope="session")
def interval():
    return ph.build_complex([[0, 1]])


@pytest.fixture(scope="session")
def path5():
    return ph.build_complex([[0, 1], [1, 2], [2, 3], [3, 4]])


@pytest.fixture(scope="session")
def two_intervals():
    return ph.build_complex([[0, 1], [2, 3]])


@pytest.fixture(scope="session")
def wedge():
    return ph.build_complex([[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [2, 4]])


@pytest.fixture(scope="session")
def types():
    return {k: ph.parse_barcode_type(v) for k, v in TYPE_STRINGS.items()}


@pytest.fixture(scope="session")
def triangle_records(triangle):
    strata = ph.enumerate_filter_strata(triangle, "interior_only")
    return ph.group_strata_by_barcode(triangle, strata)


@pytest.fixture(scope="session")
def triangle_fibers(triangle, triangle_records):
    return {
        ph.format_barcode_type(r.barcode_type): ph.fiber_complex(
            triangle, r.barcode_type
        )
        for r in triangle_records
    }


def random_monotone_filter(K, rng, denominator=64):
    """A random filter: raw values pushed up to the max over faces."""
    raw = {s: Fraction(rng.randrange(denominator + 1), denominator) for s in K.simplices}
    values = {}
    for s in K.simplices:
        v = raw[s]
        for f in s.facets():
            v = max(v, values[f])
        values[s] = v
    return ph.make_filter(K, values)


COMPLEX_POOL = [
    [[0, 1]],
    [[0, 1], [1, 2]],
    [[0, 1], [2, 3]],
    [[0, 1], [1, 2], [0, 2]],
    [[0, 1, 2]],
    [[0, 1], [1, 2], [2, 3], [0, 3]],
    [[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [2, 4]],
    [[0, 1, 2], [1, 2, 3]],
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    [[0, 1, 2, 3]],
]

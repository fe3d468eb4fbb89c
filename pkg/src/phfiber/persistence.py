"""Sublevel-set persistence of monotone filters, with exact rational values.

A filter assigns each simplex a rational value in [0, 1], faces getting values
no larger than their cofaces. Its total barcode is a tuple, indexed by
homology degree 0..dim K, of sorted bar tuples (birth, death); deaths are
either a Fraction or INF. Zero-length bars are suppressed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError
from .linalg import rank_mod_p
from .simplicial import F2, FieldSpec, Simplex, SimplicialComplex, boundary_matrix

INF = float("inf")

Bar = tuple  # (birth: Fraction, death: Fraction | INF)
TotalBarcode = tuple  # one tuple of bars per degree 0..dim K


def _as_unit_fraction(v) -> Fraction:
    try:
        f = Fraction(v)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a filter: value {v!r} is not rational") from exc
    if isinstance(v, float):
        raise DomainError(f"not a filter: float value {v!r}, use Fraction")
    if not 0 <= f <= 1:
        raise DomainError(f"not a filter: value {f} outside [0, 1]")
    return f


@dataclass(frozen=True)
class Filter:
    """A monotone map from the simplices of a fixed complex to [0, 1]."""

    complex: SimplicialComplex
    values: tuple[Fraction, ...]  # aligned with complex.simplices

    def __post_init__(self) -> None:
        K = self.complex
        if len(self.values) != len(K):
            raise DomainError("not a filter: value count does not match the complex")
        for s, v in zip(K.simplices, self.values):
            for facet in s.facets():
                if self.values[K.index[facet]] > v:
                    raise DomainError(
                        f"not a filter: face {facet} has larger value than {s}"
                    )

    def __getitem__(self, s: Simplex) -> Fraction:
        return self.values[self.complex.index[s]]

    def value_set(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.values)))


def make_filter(K: SimplicialComplex, values: Mapping[Simplex, object]) -> Filter:
    """Build a Filter from a simplex-keyed mapping, validating everything."""
    missing = [s for s in K.simplices if s not in values]
    if missing:
        raise DomainError(f"not a filter: no value for simplex {missing[0]}")
    return Filter(K, tuple(_as_unit_fraction(values[s]) for s in K.simplices))


def barcode_of_filter(filt: Filter, field: FieldSpec = F2) -> TotalBarcode:
    """Total barcode of the sublevel filtration, by column reduction.

    Columns are processed in filtration order with ties broken by the
    canonical simplex order; a column reducing to zero creates a class, a
    surviving column kills the class created at its pivot row.
    """
    K = filt.complex
    p = field.characteristic
    n = len(K)
    # Canonical ids are already sorted by dimension then lex, so (value, id)
    # is a valid filtration order (faces never come after cofaces).
    order = sorted(range(n), key=lambda i: (filt.values[i], i))
    pos = {idx: j for j, idx in enumerate(order)}

    reduced: dict[int, dict[int, int]] = {}  # pivot row -> its reduced column
    killed: set[int] = set()
    creators: set[int] = set()
    bars: list[list[Bar]] = [[] for _ in range(K.dim + 1)]

    for j, idx in enumerate(order):
        s = K.simplices[idx]
        col: dict[int, int] = {}
        for i, facet in enumerate(s.facets()):
            col[pos[K.index[facet]]] = (-1) ** i % p
        while col:
            low = max(col)
            if low not in reduced:
                break
            other = reduced[low]
            factor = col[low] * pow(other[low], -1, p) % p
            for r, c in other.items():
                v = (col.get(r, 0) - factor * c) % p
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
        if col:
            low = max(col)
            reduced[low] = col
            killed.add(low)
            creator = K.simplices[order[low]]
            birth = filt.values[order[low]]
            death = filt.values[idx]
            if birth < death:
                bars[creator.dim].append((birth, death))
        else:
            creators.add(j)

    for j in sorted(creators - killed):
        s = K.simplices[order[j]]
        bars[s.dim].append((filt.values[order[j]], INF))

    return tuple(tuple(sorted(b, key=_bar_key)) for b in bars)


def _bar_key(bar: Bar):
    birth, death = bar
    return (birth, death == INF, death)


def betti_numbers(K: SimplicialComplex, field: FieldSpec = F2) -> tuple[int, ...]:
    """Betti numbers over F_p for degrees 0..dim K."""
    p = field.characteristic
    ranks = [rank_mod_p(boundary_matrix(K, q, field), p) for q in range(K.dim + 1)]
    ranks.append(0)
    counts = [len(K.p_simplices(q)) for q in range(K.dim + 1)]
    return tuple(counts[q] - ranks[q] - ranks[q + 1] for q in range(K.dim + 1))


def infinite_bar_counts(barcode: TotalBarcode) -> tuple[int, ...]:
    return tuple(sum(1 for _, d in deg if d == INF) for deg in barcode)


def bounded_bar_counts(barcode: TotalBarcode) -> tuple[int, ...]:
    return tuple(sum(1 for _, d in deg if d != INF) for deg in barcode)


def constant_filter(K: SimplicialComplex, value) -> Filter:
    v = _as_unit_fraction(value)
    return Filter(K, tuple(v for _ in K.simplices))


def filter_from_values(K: SimplicialComplex, values: Iterable[object]) -> Filter:
    """Build a Filter from values listed in canonical simplex order."""
    return Filter(K, tuple(_as_unit_fraction(v) for v in values))

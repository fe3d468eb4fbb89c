"""Fibers of the persistence map, as explicit polyhedral complexes.

The fiber over a barcode type T is assembled from the filter strata whose
barcode is T. Each such stratum is one closed cell, affinely a product of
simplices: writing the pinned symbols in value order as ZERO < 1 < ... < m <
ONE, the free blocks falling strictly between consecutive pinned symbols form
the gaps, and a gap with k free blocks contributes a k-simplex factor. The
face relation is stratum coarsening, so the whole complex is combinatorial;
no coordinates beyond symbol rank vectors are ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .barcodes import ZERO, CombinatorialBarcode, canonicalize_barcode
from .errors import DomainError
from .persistence import INF, Filter, barcode_of_filter, betti_numbers
from .simplicial import F2, FieldSpec, SimplicialComplex, build_complex
from .strata import (
    FilterStratum,
    _closed_subsets,
    barcode_of_stratum,
    is_lower_star_stratum,
    representative_filter,
    serialize_stratum,
    stratum_closure_leq,
)

FIBER_MODES = ("all", "lower_star")


@dataclass(frozen=True)
class FiberCell:
    """One cell of a fiber: a filter stratum plus its product-of-simplices shape.

    rank_vector is set on 0-cells only; it assigns each simplex (in canonical
    order) the symbol of its block's pinned value.
    """

    stratum: FilterStratum
    gap_shape: tuple[int, ...]
    rank_vector: tuple[int, ...] | None

    @property
    def dim(self) -> int:
        return sum(self.gap_shape)


@dataclass(frozen=True)
class FiberComplex:
    """The fiber over one barcode type, with cells sorted by (dim, id string)."""

    complex: SimplicialComplex
    barcode_type: CombinatorialBarcode
    field: FieldSpec
    mode: str
    cells: tuple[FiberCell, ...]
    face_relation: tuple[tuple[int, int], ...]  # (face id, cell id) pairs

    def bounded_deficit(self) -> Fraction:
        return Fraction(
            len(self.complex) - self.barcode_type.finite_endpoint_count(), 2
        )

    def zero_cells(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cells) if c.dim == 0)

    def cell_index(self, stratum: FilterStratum) -> int:
        for i, c in enumerate(self.cells):
            if c.stratum == stratum:
                return i
        raise DomainError("stratum is not a cell of this fiber")

    def zero_faces_of(self, cell_id: int) -> tuple[int, ...]:
        """Ids of the 0-cells in the closure of the given cell."""
        faces = {i for i, j in self.face_relation if j == cell_id}
        faces.add(cell_id)
        return tuple(i for i in self.zero_cells() if i in faces)


def _symbol_events(T: CombinatorialBarcode) -> tuple[dict[int, int], set[int]]:
    """Per finite symbol: Euler count of births minus deaths, and presence."""
    chi: dict[int, int] = {s: 0 for s in range(ZERO, T.one + 1)}
    present: set[int] = set()
    for p, deg in enumerate(T.degrees):
        sign = (-1) ** p
        for b, d in deg:
            chi[b] += sign
            present.add(b)
            if d != T.inf:
                chi[d] -= sign
                present.add(d)
    return chi, present


def _candidate_strata(K: SimplicialComplex, T: CombinatorialBarcode) -> set[FilterStratum]:
    """Monotone partitions that could map to T, by Euler-count pruning.

    Every block entering at a pinned symbol must change the sublevel Euler
    characteristic by that symbol's birth/death balance, and blocks at free
    values must not change it at all. These conditions are necessary, so the
    survivors are rechecked against the exact barcode by the caller.
    """
    m = T.dim
    chi, present = _symbol_events(T)
    sign = tuple((-1) ** s.dim for s in K.simplices)
    full = (1 << len(K)) - 1

    def chi_of(mask: int) -> int:
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += sign[i]
            mask >>= 1
            i += 1
        return total

    out: set[FilterStratum] = set()

    def emit(blocks: tuple[int, ...], at_zero: bool, at_one: bool) -> None:
        if not blocks:
            return
        simplex_blocks = tuple(
            frozenset(K.simplices[i] for i in range(len(K)) if b >> i & 1)
            for b in blocks
        )
        if len(blocks) == 1 and at_zero and at_one:
            return
        out.add(FilterStratum(simplex_blocks, at_zero, at_one))

    def rec(placed: int, blocks: tuple[int, ...], at_zero: bool, next_rank: int) -> None:
        rest = full & ~placed
        if next_rank > m:
            # Inside the last gap; close with the 1-end or finish flagless.
            if T.one in present:
                if rest and chi_of(rest) == chi[T.one]:
                    emit(blocks + (rest,), at_zero, True)
            else:
                if rest == 0:
                    emit(blocks, at_zero, False)
                elif chi_of(rest) == 0:
                    # A block at value 1 whose events all cancel in pairs.
                    emit(blocks + (rest,), at_zero, True)
        for S in _closed_subsets(K, rest, placed):
            c = chi_of(S)
            if c == 0:
                rec(placed | S, blocks + (S,), at_zero, next_rank)
            if next_rank <= m and c == chi[next_rank]:
                rec(placed | S, blocks + (S,), at_zero, next_rank + 1)

    if ZERO in present:
        for S in _closed_subsets(K, full, 0):
            if chi_of(S) == chi[ZERO]:
                rec(S, (S,), True, 1)
    else:
        rec(0, (), False, 1)
    return out


def cell_block_labels(
    K: SimplicialComplex, stratum: FilterStratum, T: CombinatorialBarcode, field: FieldSpec
) -> tuple[tuple[str, int], ...]:
    """Per block, ("pin", symbol of T) or ("free", gap index).

    A block is pinned when its representative value is an endpoint of the
    representative barcode; pinned interior blocks carry the ranks 1..m in
    order, and a free block belongs to the gap after the last rank seen.
    """
    rep = representative_filter(K, stratum)
    bc = barcode_of_filter(rep, field)
    endpoints = {
        e for deg in bc for bar in deg for e in bar if e != INF and 0 < e < 1
    }
    d = stratum.interior_dim
    pinned = [Fraction(i, d + 1) in endpoints for i in range(1, d + 1)]
    if sum(pinned) != T.dim:
        raise DomainError("stratum does not lie over the given barcode type")
    labels = []
    rank = 0
    n_blocks = len(stratum.blocks)
    for i in range(n_blocks):
        if stratum.at_zero and i == 0:
            labels.append(("pin", ZERO))
        elif stratum.at_one and i == n_blocks - 1:
            labels.append(("pin", T.dim + 1))
        elif pinned[len(labels) - (1 if stratum.at_zero else 0)]:
            rank += 1
            labels.append(("pin", rank))
        else:
            labels.append(("free", rank))
    return tuple(labels)


def _gap_shape(
    K: SimplicialComplex, stratum: FilterStratum, T: CombinatorialBarcode, field: FieldSpec
) -> tuple[int, ...]:
    """Free-block counts per gap, read off the representative barcode."""
    shape = [0] * (T.dim + 1)
    for kind, pos in cell_block_labels(K, stratum, T, field):
        if kind == "free":
            shape[pos] += 1
    return tuple(shape)


def _rank_vector(K: SimplicialComplex, cell_stratum: FilterStratum, m: int) -> tuple[int, ...]:
    """Symbol per simplex for a 0-cell: all interior blocks are pinned."""
    symbol: dict = {}
    rank = 0
    for i, block in enumerate(cell_stratum.blocks):
        if cell_stratum.at_zero and i == 0:
            sym = ZERO
        elif cell_stratum.at_one and i == len(cell_stratum.blocks) - 1:
            sym = m + 1
        else:
            rank += 1
            sym = rank
        for s in block:
            symbol[s] = sym
    return tuple(symbol[s] for s in K.simplices)


def fiber_complex(
    K: SimplicialComplex,
    T: CombinatorialBarcode,
    field: FieldSpec = F2,
    mode: str = "all",
) -> FiberComplex:
    """All cells of the fiber over T together with their face poset.

    mode "lower_star" keeps only cells that are strata of lower-star filters;
    the resulting complex is still closed under faces.
    """
    if mode not in FIBER_MODES:
        raise DomainError(f"unknown fiber mode {mode!r}, expected one of {FIBER_MODES}")
    kept = [
        st
        for st in _candidate_strata(K, T)
        if barcode_of_stratum(K, st, field) == T
    ]
    if mode == "lower_star":
        kept = [st for st in kept if is_lower_star_stratum(st)]
    if not kept:
        raise DomainError("empty fiber")

    m = T.dim
    shaped = []
    for st in kept:
        shape = _gap_shape(K, st, T, field)
        vec = _rank_vector(K, st, m) if sum(shape) == 0 else None
        shaped.append(FiberCell(st, shape, vec))
    shaped.sort(key=lambda c: (c.dim, serialize_stratum(c.stratum, K)))

    relation = []
    for i, low in enumerate(shaped):
        for j, high in enumerate(shaped):
            if i != j and stratum_closure_leq(low.stratum, high.stratum):
                relation.append((i, j))
    return FiberComplex(K, T, field, mode, tuple(shaped), tuple(relation))


def fiber_dimension(fc: FiberComplex) -> int:
    d = max(c.dim for c in fc.cells)
    assert Fraction(d) <= fc.bounded_deficit()
    return d


def fiber_vertices(fc: FiberComplex) -> tuple[Filter, ...]:
    """The 0-cells realized as filters with values 0, i/(m+1), 1."""
    m = fc.barcode_type.dim
    values = {ZERO: Fraction(0), m + 1: Fraction(1)}
    for i in range(1, m + 1):
        values[i] = Fraction(i, m + 1)
    out = []
    for i in fc.zero_cells():
        vec = fc.cells[i].rank_vector
        out.append(Filter(fc.complex, tuple(values[s] for s in vec)))
    return tuple(out)


@dataclass(frozen=True)
class TriangulatedFiber:
    """A simplicial complex supported on the fiber.

    Vertices are the deduplicated rank vectors of the fiber's 0-cells; the
    simplices are the chains of those vectors under the pointwise symbol
    order, taken within each cell. provenance[k] is the smallest cell id
    whose chains produced maximal_simplices[k].
    """

    fiber: FiberComplex
    vertices: tuple[tuple[int, ...], ...]
    maximal_simplices: tuple[tuple[int, ...], ...]
    provenance: tuple[int, ...]

    @property
    def dim(self) -> int:
        return max(len(s) for s in self.maximal_simplices) - 1

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All 1-simplices of the triangulation (pairs inside some chain)."""
        pairs = {
            (a, b)
            for chain in self.maximal_simplices
            for a in chain
            for b in chain
            if a < b
        }
        return tuple(sorted(pairs))


def _pointwise_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _maximal_chains(vectors: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
    below = {
        v: [w for w in vectors if w != v and _pointwise_leq(w, v)] for v in vectors
    }
    covers: dict[tuple[int, ...], list[tuple[int, ...]]] = {v: [] for v in vectors}
    for v in vectors:
        for w in below[v]:
            if not any(u != w and _pointwise_leq(w, u) for u in below[v]):
                covers[w].append(v)

    def extend(chain: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        nxt = covers[chain[-1]]
        if not nxt:
            yield chain
            return
        for v in nxt:
            yield from extend(chain + [v])

    for v in vectors:
        if not below[v]:
            yield from extend([v])


def triangulate_fiber(fc: FiberComplex) -> TriangulatedFiber:
    """Staircase triangulation: per cell, the order complex of its 0-faces.

    Chains coming from a shared face agree, so the per-cell triangulations
    glue; globally maximal chains are kept as the maximal simplices.
    """
    vertices = sorted(fc.cells[i].rank_vector for i in fc.zero_cells())
    vid = {v: k for k, v in enumerate(vertices)}

    chains: dict[tuple[int, ...], int] = {}
    for ci, cell in enumerate(fc.cells):
        vecs = [fc.cells[i].rank_vector for i in fc.zero_faces_of(ci)]
        for chain in _maximal_chains(vecs):
            assert len(chain) == cell.dim + 1
            key = tuple(sorted(vid[v] for v in chain))
            if key not in chains or ci < chains[key]:
                chains[key] = ci
    keys = sorted(chains)
    sets = [frozenset(k) for k in keys]
    maximal = [
        k
        for i, k in enumerate(keys)
        if not any(j != i and sets[i] < sets[j] for j in range(len(keys)))
    ]
    return TriangulatedFiber(
        fiber=fc,
        vertices=tuple(vertices),
        maximal_simplices=tuple(maximal),
        provenance=tuple(chains[k] for k in maximal),
    )


def fiber_homology(tf: TriangulatedFiber, field: FieldSpec = F2) -> tuple[int, ...]:
    """Betti numbers of the triangulated fiber, degrees 0..max(1, fiber dim)."""
    K_t = build_complex([list(s) for s in tf.maximal_simplices])
    betti = list(betti_numbers(K_t, field))
    want = max(1, fiber_dimension(tf.fiber)) + 1
    while len(betti) < want:
        betti.append(0)
    return tuple(betti)


def boundary_circuits(tf: TriangulatedFiber) -> int:
    """Connected components of the edges lying on exactly one triangle."""
    if any(len(s) != 3 for s in tf.maximal_simplices):
        raise DomainError("boundary circuits need a pure 2-dimensional fiber")
    incidence: dict[tuple[int, int], int] = {}
    for a, b, c in tf.maximal_simplices:
        for e in ((a, b), (a, c), (b, c)):
            incidence[e] = incidence.get(e, 0) + 1
    boundary = [e for e, n in incidence.items() if n == 1]
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in boundary:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        parent[find(a)] = find(b)
    return len({find(x) for x in parent})


@dataclass(frozen=True)
class DimensionBoundRow:
    barcode_type: CombinatorialBarcode
    fiber_dim: int
    bounded_deficit: Fraction
    codim: int
    tight: bool


def check_dimension_bound(
    K: SimplicialComplex, records, field: FieldSpec = F2
) -> tuple[DimensionBoundRow, ...]:
    """Verify fiber_dim <= bounded deficit <= codim for each barcode record."""
    rows = []
    for rec in records:
        fc = fiber_complex(K, rec.barcode_type, field)
        d = fiber_dimension(fc)
        assert Fraction(d) <= rec.bounded_deficit <= Fraction(rec.codim)
        rows.append(
            DimensionBoundRow(
                barcode_type=rec.barcode_type,
                fiber_dim=d,
                bounded_deficit=rec.bounded_deficit,
                codim=rec.codim,
                tight=Fraction(d) == rec.bounded_deficit,
            )
        )
    return tuple(rows)

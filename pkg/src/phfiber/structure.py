"""Removable subsets, essential complexes, lower-star filters, symmetries.

A subset of simplices is removable when deleting it leaves a subcomplex whose
inclusion induces an isomorphism on homology; a complex with no nonempty
removable subset is essential. Lower-star filters are the filters determined
by their vertex values. The automorphism group of the complex acts on every
fiber by permuting cells.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError
from .fiber import FiberComplex
from .linalg import nullspace_mod_p, rank_mod_p
from .persistence import Filter, betti_numbers, make_filter
from .simplicial import (
    F2,
    FieldSpec,
    Simplex,
    SimplicialComplex,
    apply_permutation,
    automorphisms,
    boundary_matrix,
    is_automorphism,
)
from .strata import FilterStratum

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class RemovabilityReport:
    """Outcome of testing one subset of simplices for removability."""

    subset: tuple[Simplex, ...]
    is_subcomplex_complement: bool
    homology_preserved: bool

    @property
    def removable(self) -> bool:
        return self.is_subcomplex_complement and self.homology_preserved


def _inclusion_is_iso(
    K: SimplicialComplex, sub: SimplicialComplex, field: FieldSpec
) -> bool:
    """True when the inclusion sub -> K is a homology isomorphism.

    Equal Betti numbers alone do not suffice; the rank of the induced map is
    computed in each degree as rank([cycles(sub) | boundaries(K)]) minus
    rank(boundaries(K)), with the cycle columns embedded into K's chain basis.
    """
    p = field.characteristic
    betti_K = betti_numbers(K, field)
    betti_sub = list(betti_numbers(sub, field))
    betti_sub += [0] * (len(betti_K) - len(betti_sub))
    if tuple(betti_sub) != betti_K:
        return False
    for q in range(K.dim + 1):
        rows = K.p_simplices(q)
        row_index = {s: i for i, s in enumerate(rows)}
        if q <= sub.dim:
            cycles = nullspace_mod_p(boundary_matrix(sub, q, field), p)
            embedded = np.zeros((len(rows), cycles.shape[1]), dtype=np.int64)
            positions = np.array(
                [row_index[s] for s in sub.p_simplices(q)], dtype=np.int64
            )
            embedded[positions] = cycles
        else:
            embedded = np.zeros((len(rows), 0), dtype=np.int64)
        if q < K.dim:
            boundaries = boundary_matrix(K, q + 1, field)
        else:
            boundaries = np.zeros((len(rows), 0), dtype=np.int64)
        stacked = np.hstack([embedded, boundaries])
        induced_rank = rank_mod_p(stacked, p) - rank_mod_p(boundaries, p)
        if induced_rank != betti_K[q]:
            return False
    return True


def is_removable(
    K: SimplicialComplex, subset: Iterable[Simplex], field: FieldSpec = F2
) -> RemovabilityReport:
    """Test whether deleting the subset preserves the homology of K."""
    chosen = set(subset)
    for s in chosen:
        if s not in K:
            raise DomainError(f"subset simplex {s} is not in the complex")
    ordered = tuple(s for s in K.simplices if s in chosen)
    rest = tuple(s for s in K.simplices if s not in chosen)
    if not rest:
        return RemovabilityReport(ordered, True, False)
    closed = all(facet not in chosen for s in rest for facet in s.facets())
    if not closed:
        return RemovabilityReport(ordered, False, False)
    if not chosen:
        return RemovabilityReport(ordered, True, True)
    sub = SimplicialComplex(rest)
    return RemovabilityReport(ordered, True, _inclusion_is_iso(K, sub, field))


def _upward_closed_masks(K: SimplicialComplex, budget: int) -> list[int]:
    """Masks of the nonempty coface-closed subsets, smallest first.

    Only these subsets have subcomplex complements. Ids are processed in
    descending order so a simplex may join only after all of its cofaces,
    which always have larger ids, already did.
    """
    n = len(K)
    coface_masks = [0] * n
    for j in range(n):
        faces = K.face_masks[j]
        for i in range(n):
            if faces >> i & 1:
                coface_masks[i] |= 1 << j
    out: list[int] = []

    def rec(pos: int, mask: int) -> None:
        if pos < 0:
            if mask:
                out.append(mask)
                if len(out) > budget:
                    raise DomainError("too large for exhaustive essentiality")
            return
        rec(pos - 1, mask)
        if coface_masks[pos] & ~mask == 0:
            rec(pos - 1, mask | 1 << pos)

    rec(n - 1, 0)
    return sorted(out, key=lambda m: (bin(m).count("1"), m))


def find_removable_subset(
    K: SimplicialComplex, field: FieldSpec = F2, budget: int = DEFAULT_BUDGET
) -> tuple[Simplex, ...] | None:
    """First nonempty removable subset in (size, mask) order, or None."""
    for mask in _upward_closed_masks(K, budget):
        subset = tuple(K.simplices[i] for i in range(len(K)) if mask >> i & 1)
        if is_removable(K, subset, field).removable:
            return subset
    return None


def is_essential(
    K: SimplicialComplex, field: FieldSpec = F2, budget: int = DEFAULT_BUDGET
) -> bool:
    """True when the complex has no nonempty removable subset."""
    return find_removable_subset(K, field, budget) is None


def lower_star_extension(
    K: SimplicialComplex, vertex_values: Mapping[int, object]
) -> Filter:
    """The filter sending each simplex to the max of its vertex values."""
    unknown = sorted(set(vertex_values) - set(K.vertex_ids))
    if unknown:
        raise DomainError(f"value given for unknown vertex {unknown[0]}")
    missing = [v for v in K.vertex_ids if v not in vertex_values]
    if missing:
        raise DomainError(f"no value for vertex {missing[0]}")
    values = {s: max(vertex_values[v] for v in s.vertices) for s in K.simplices}
    return make_filter(K, values)


def symmetry_action_on_fiber(
    fc: FiberComplex, perm: Mapping[int, int]
) -> tuple[int, ...]:
    """Cell permutation induced by f -> f o s^{-1} for an automorphism s.

    Block i of the image stratum is s applied to block i, flags unchanged, so
    the barcode type is preserved and the fiber's cells are permuted with
    0-cells going to 0-cells.
    """
    if not is_automorphism(fc.complex, perm):
        raise DomainError("permutation is not an automorphism of the complex")
    out = []
    for cell in fc.cells:
        st = cell.stratum
        mapped = FilterStratum(
            tuple(
                frozenset(apply_permutation(perm, s) for s in block)
                for block in st.blocks
            ),
            st.at_zero,
            st.at_one,
        )
        out.append(fc.cell_index(mapped))
    return tuple(out)


def fiber_symmetry_orbits(fc: FiberComplex) -> tuple[tuple[int, ...], ...]:
    """Orbits of the fiber's cells under all automorphisms of the complex."""
    parent = list(range(len(fc.cells)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in automorphisms(fc.complex):
        for i, j in enumerate(symmetry_action_on_fiber(fc, perm)):
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(fc.cells)):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for g in sorted(groups.values()))

"""Finite abstract simplicial complexes with a fixed canonical simplex order.

The canonical order (dimension first, then lexicographic on vertex tuples) is
the tie-breaking order used everywhere else in the package, so a complex is
immutable once built and every simplex has a stable integer id.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Simplex:
    """A face, stored as a strictly increasing tuple of integer vertex ids."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        v = self.vertices
        if len(v) == 0:
            raise DomainError("malformed simplex: empty vertex tuple")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in v):
            raise DomainError(f"malformed simplex: non-integer vertex in {v!r}")
        if any(a >= b for a, b in zip(v, v[1:])):
            raise DomainError(f"malformed simplex: vertices {v!r} not strictly increasing")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.vertices), self.vertices)

    def facets(self) -> tuple[Simplex, ...]:
        """Codimension-1 faces, in the order used for boundary signs."""
        v = self.vertices
        if len(v) == 1:
            return ()
        return tuple(Simplex(v[:i] + v[i + 1:]) for i in range(len(v)))

    def proper_faces(self) -> tuple[Simplex, ...]:
        v = self.vertices
        out = []
        for k in range(1, len(v)):
            out.extend(Simplex(c) for c in combinations(v, k))
        return tuple(out)

    def __lt__(self, other: Simplex) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.vertices) + "}"


def simplex(vertices: Iterable[int]) -> Simplex:
    """Build a Simplex from an unsorted vertex iterable, rejecting duplicates."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise DomainError(f"malformed simplex: duplicate vertices in {vs!r}")
    return Simplex(tuple(sorted(vs)))


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p used as homology coefficients."""

    characteristic: int = 2

    def __post_init__(self) -> None:
        p = self.characteristic
        if not isinstance(p, int) or p < 2:
            raise DomainError(f"field characteristic must be a prime >= 2, got {p!r}")
        if any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise DomainError(f"field characteristic {p} is not prime")


F2 = FieldSpec(2)


class SimplicialComplex:
    """A face-closed finite set of simplices in canonical order.

    Use :func:`build_complex` to construct one; the constructor trusts its
    input to be face-closed and sorted.
    """

    def __init__(self, simplices: tuple[Simplex, ...]):
        self.simplices = simplices
        self.index = {s: i for i, s in enumerate(simplices)}
        self.dim = max(s.dim for s in simplices)
        self.vertex_ids = tuple(sorted({v for s in simplices for v in s.vertices}))
        # Proper faces of each simplex as a bitmask over canonical ids; faces
        # always have smaller ids than their cofaces.
        self.face_masks = tuple(
            sum(1 << self.index[f] for f in s.proper_faces()) for s in simplices
        )

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def p_simplices(self, p: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if s.dim == p)

    def euler_characteristic(self) -> int:
        return sum((-1) ** s.dim for s in self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.simplices)} simplices, dim {self.dim})"


def build_complex(maximal_simplices: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Generate the face closure of the given simplices.

    Input simplices may be unsorted and redundant; duplicate vertices within
    one simplex are rejected. An empty input is rejected ("empty complex").
    """
    seeds = [simplex(vs) for vs in maximal_simplices]
    if not seeds:
        raise DomainError("empty complex")
    closure: set[Simplex] = set()
    for s in seeds:
        closure.add(s)
        closure.update(s.proper_faces())
    ordered = tuple(sorted(closure, key=lambda s: s.sort_key))
    return SimplicialComplex(ordered)


def boundary_matrix(K: SimplicialComplex, p: int, field: FieldSpec = F2) -> np.ndarray:
    """Signed incidence matrix of the boundary map C_p -> C_{p-1} over F_p.

    Rows are the (p-1)-simplices, columns the p-simplices, both in canonical
    order. Signs come from the sorted vertex order, reduced mod the field
    characteristic.
    """
    if p < 0 or p > K.dim:
        raise DomainError(f"degree {p} out of range for a complex of dimension {K.dim}")
    q = field.characteristic
    cols = K.p_simplices(p)
    rows = K.p_simplices(p - 1) if p > 0 else ()
    row_index = {s: i for i, s in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, s in enumerate(cols):
        for i, facet in enumerate(s.facets()):
            if facet in row_index:
                mat[row_index[facet], j] = (-1) ** i % q
    return mat


def _vertex_signature(K: SimplicialComplex, v: int) -> tuple[int, ...]:
    """Multiset of dimensions of simplices containing v, as a sorted tuple."""
    return tuple(sorted(s.dim for s in K.simplices if v in s.vertices))


def automorphisms(K: SimplicialComplex) -> tuple[dict[int, int], ...]:
    """All vertex permutations preserving the simplex set.

    Backtracking over vertex images; candidates are pruned to vertices with
    the same star signature (multiset of incident simplex dimensions), and
    every simplex whose vertices are fully assigned must land in the complex.
    """
    verts = K.vertex_ids
    sig = {v: _vertex_signature(K, v) for v in verts}
    # For pruning, check each simplex as soon as its last vertex (in the
    # assignment order) gets an image.
    order = list(verts)
    last_pos = {
        s: max(order.index(v) for v in s.vertices) for s in K.simplices if s.dim > 0
    }
    check_at: dict[int, list[Simplex]] = {i: [] for i in range(len(order))}
    for s, pos in last_pos.items():
        check_at[pos].append(s)

    found: list[dict[int, int]] = []
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> None:
        if pos == len(order):
            found.append(dict(image))
            return
        v = order[pos]
        for w in verts:
            if w in used or sig[w] != sig[v]:
                continue
            image[v] = w
            used.add(w)
            ok = all(
                Simplex(tuple(sorted(image[x] for x in s.vertices))) in K
                for s in check_at[pos]
            )
            if ok:
                extend(pos + 1)
            used.remove(w)
            del image[v]

    extend(0)
    found.sort(key=lambda g: tuple(g[v] for v in verts))
    return tuple(found)


def apply_permutation(perm: Mapping[int, int], s: Simplex) -> Simplex:
    return Simplex(tuple(sorted(perm[v] for v in s.vertices)))


def is_automorphism(K: SimplicialComplex, perm: Mapping[int, int]) -> bool:
    if sorted(perm) != list(K.vertex_ids) or sorted(perm.values()) != list(K.vertex_ids):
        return False
    return all(apply_permutation(perm, s) in K for s in K.simplices)

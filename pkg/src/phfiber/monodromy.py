"""Monodromy maps between fibers induced by barcode degenerations.

A morphism class from type T to type T' acts on the fiber over T by
postcomposition of filters with its representative reparametrization. The
action carries each cell of the fiber onto a cell of the fiber over T',
projecting away the gaps whose two delimiting endpoints are identified.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .barcodes import ZERO, canonicalize_barcode, compose_endpoint_maps
from .category import MorphismClass, _class_of_map
from .errors import DomainError
from .fiber import FiberComplex, cell_block_labels
from .persistence import Filter, barcode_of_filter
from .simplicial import SimplicialComplex
from .strata import FilterStratum


@dataclass(frozen=True)
class MonodromyMap:
    """The action of one morphism class on a pair of fibers.

    cell_map[i] is the target cell id of source cell i; vertex_map restricts
    it to the 0-cells. Collapsed cells are those whose image has strictly
    smaller dimension.
    """

    source: FiberComplex
    target: FiberComplex
    morphism: MorphismClass
    vertex_map: tuple[tuple[int, int], ...]
    cell_map: tuple[int, ...]

    @property
    def collapsed_cells(self) -> tuple[int, ...]:
        return tuple(
            i
            for i, j in enumerate(self.cell_map)
            if self.target.cells[j].dim < self.source.cells[i].dim
        )

    @property
    def surviving_cells(self) -> tuple[int, ...]:
        collapsed = set(self.collapsed_cells)
        return tuple(i for i in range(len(self.cell_map)) if i not in collapsed)

    def map_rank_vector(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        phi = self.morphism.representative
        return tuple(phi(s) for s in vec)


def _image_stratum(
    fc: FiberComplex, stratum: FilterStratum, phi
) -> FilterStratum:
    """Push a fiber cell forward along a simplicial endpoint map.

    Blocks sharing an image value merge; a free block keeps its gap when the
    gap's delimiters stay distinct and is pinned at their common image
    otherwise. Bucket order follows the target values: the pin at symbol t
    sits between the free blocks of gaps t-1 and t.
    """
    T = fc.barcode_type
    labels = cell_block_labels(fc.complex, stratum, T, fc.field)
    mp = phi.target_dim
    pins: dict[int, set] = {t: set() for t in range(ZERO, mp + 2)}
    frees: list[tuple[int, int, frozenset]] = []
    for i, (block, (kind, pos)) in enumerate(zip(stratum.blocks, labels)):
        if kind == "pin":
            pins[phi(pos)].update(block)
        else:
            lo, hi = phi(pos), phi(pos + 1)
            if lo == hi:
                pins[lo].update(block)
            else:
                frees.append((lo, i, block))
    blocks: list[frozenset] = []
    for t in range(ZERO, mp + 2):
        if pins[t]:
            blocks.append(frozenset(pins[t]))
        elif 1 <= t <= mp:
            raise DomainError("image stratum misses a pinned endpoint")
        blocks.extend(b for g, _, b in sorted(frees, key=lambda f: f[:2]) if g == t)
    return FilterStratum(tuple(blocks), bool(pins[ZERO]), bool(pins[mp + 1]))


def _assert_equivariant(fc: FiberComplex, target_type, phi) -> None:
    mp = phi.target_dim
    values = {ZERO: Fraction(0), mp + 1: Fraction(1)}
    for i in range(1, mp + 1):
        values[i] = Fraction(i, mp + 1)
    for i in fc.zero_cells():
        vec = fc.cells[i].rank_vector
        image = Filter(fc.complex, tuple(values[phi(s)] for s in vec))
        assert canonicalize_barcode(barcode_of_filter(image, fc.field)) == target_type


def _monodromy_tables(
    fc: FiberComplex, fc_target: FiberComplex, phi
) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    cell_map = []
    for cell in fc.cells:
        image = _image_stratum(fc, cell.stratum, phi)
        j = fc_target.cell_index(image)
        collapsed = {
            g for g in range(fc.barcode_type.dim + 1) if phi(g) == phi(g + 1)
        }
        expected = tuple(
            k for g, k in enumerate(cell.gap_shape) if g not in collapsed
        )
        assert fc_target.cells[j].gap_shape == expected
        cell_map.append(j)
    vertex_map = tuple((i, cell_map[i]) for i in fc.zero_cells())
    return vertex_map, tuple(cell_map)


def monodromy_map(
    K: SimplicialComplex,
    fc: FiberComplex,
    fc_target: FiberComplex,
    c: MorphismClass,
) -> MonodromyMap:
    """The simplicial action of c's representative on the fiber over c.source.

    Each cell maps onto a cell of the target fiber; the image gap shape is
    the source shape with the collapsed gaps deleted, and every 0-cell's
    image filter is checked to lie over the target type.
    """
    if fc.complex != K or fc_target.complex != K:
        raise DomainError("fibers do not belong to the given complex")
    if fc.barcode_type != c.source or fc_target.barcode_type != c.target:
        raise DomainError("morphism class does not connect the fiber types")
    if fc.field != fc_target.field or fc.mode != fc_target.mode:
        raise DomainError("mismatched fibers")
    phi = c.representative
    if not phi.is_simplicial:
        raise DomainError("morphism representative is not simplicial")
    _assert_equivariant(fc, c.target, phi)
    vertex_map, cell_map = _monodromy_tables(fc, fc_target, phi)
    return MonodromyMap(fc, fc_target, c, vertex_map, cell_map)


def compose_monodromies(m1: MonodromyMap, m2: MonodromyMap) -> MonodromyMap:
    """The composite action, checked against the composed representative.

    The tables of the composite are the composed tables; they must agree
    with the monodromy computed directly from the composition of the two
    representatives, which is the functoriality of the fiber construction.
    """
    if m2.source != m1.target:
        raise DomainError("mismatched fibers")
    fc, fc_target = m1.source, m2.target
    cell_map = tuple(m2.cell_map[j] for j in m1.cell_map)
    vertex_map = tuple((i, cell_map[i]) for i in fc.zero_cells())
    composed = compose_endpoint_maps(
        m2.morphism.representative, m1.morphism.representative
    )
    direct = _monodromy_tables(fc, fc_target, composed)
    assert direct == (vertex_map, cell_map)
    cls = _class_of_map(fc.barcode_type, fc_target.barcode_type, composed)
    return MonodromyMap(fc, fc_target, cls, vertex_map, cell_map)

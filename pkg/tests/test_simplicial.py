"""Simplices, complexes, boundary matrices, automorphisms."""

import numpy as np
import pytest

import phfiber as ph
from phfiber import DomainError
from phfiber.simplicial import boundary_matrix, is_automorphism
from phfiber.linalg import rank_mod_p, nullspace_mod_p


def test_simplex_normalizes_vertex_order():
    s = ph.simplex([2, 0, 1])
    assert s.vertices == (0, 1, 2)
    assert s.dim == 2
    assert str(s) == "{0,1,2}"


def test_simplex_rejects_duplicates_and_empty():
    with pytest.raises(DomainError, match="duplicate"):
        ph.simplex([0, 1, 1])
    with pytest.raises(DomainError, match="empty"):
        ph.simplex([])
    with pytest.raises(DomainError, match="non-integer"):
        ph.simplex([0, True])


def test_facets_and_proper_faces():
    s = ph.simplex([0, 1, 2])
    assert set(s.facets()) == {ph.simplex(p) for p in ([1, 2], [0, 2], [0, 1])}
    assert len(s.proper_faces()) == 6
    assert ph.simplex([0]).facets() == ()


def test_build_complex_closes_under_faces():
    K = ph.build_complex([[0, 1, 2]])
    assert len(K) == 7
    assert ph.simplex([0, 2]) in K
    assert ph.simplex([3]) not in K
    dims = [s.dim for s in K.simplices]
    assert dims == sorted(dims)


def test_build_complex_rejects_empty_input():
    with pytest.raises(DomainError, match="empty complex"):
        ph.build_complex([])


def test_euler_characteristic():
    assert ph.build_complex([[0, 1], [1, 2], [0, 2]]).euler_characteristic() == 0
    assert ph.build_complex([[0, 1, 2]]).euler_characteristic() == 1
    assert ph.build_complex([[0, 1], [2, 3]]).euler_characteristic() == 2


def test_boundary_of_boundary_vanishes():
    K = ph.build_complex([[0, 1, 2], [1, 2, 3]])
    for p in (2, 3, 5):
        fs = ph.FieldSpec(p)
        d1 = boundary_matrix(K, 1, fs)
        d2 = boundary_matrix(K, 2, fs)
        assert np.all((d1 @ d2) % p == 0)


def test_boundary_matrix_degree_range():
    K = ph.build_complex([[0, 1]])
    with pytest.raises(DomainError, match="degree"):
        boundary_matrix(K, 2)


def test_rank_and_nullspace_mod_p():
    d1 = boundary_matrix(ph.build_complex([[0, 1], [1, 2], [0, 2]]), 1)
    assert rank_mod_p(d1, 2) == 2
    ns = nullspace_mod_p(d1, 2)
    assert ns.shape[1] == 1
    assert np.all((d1 @ ns) % 2 == 0)


def test_field_spec_requires_prime():
    assert ph.FieldSpec(2).characteristic == 2
    ph.FieldSpec(13)
    for bad in (0, 1, 4, 9):
        with pytest.raises(DomainError, match="prime|characteristic"):
            ph.FieldSpec(bad)


def test_triangle_automorphisms(triangle):
    autos = ph.automorphisms(triangle)
    assert len(autos) == 6
    assert {tuple(sorted(a.items())) for a in autos} == {
        tuple(sorted({0: p[0], 1: p[1], 2: p[2]}.items()))
        for p in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    }


def test_two_intervals_automorphisms(two_intervals):
    assert len(ph.automorphisms(two_intervals)) == 8


def test_path_automorphisms():
    K = ph.build_complex([[0, 1], [1, 2]])
    autos = ph.automorphisms(K)
    assert len(autos) == 2
    assert {0: 2, 1: 1, 2: 0} in autos


def test_is_automorphism_rejects_non_symmetry():
    K = ph.build_complex([[0, 1], [1, 2]])
    assert not is_automorphism(K, {0: 1, 1: 0, 2: 2})
    assert is_automorphism(K, {0: 2, 1: 1, 2: 0})


def test_apply_permutation():
    s = ph.simplex([0, 2])
    assert ph.apply_permutation({0: 2, 1: 1, 2: 0}, s) == s
    assert ph.apply_permutation({0: 1, 1: 2, 2: 0}, s) == ph.simplex([0, 1])

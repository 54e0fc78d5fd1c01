import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings, strategies as st

from sparseprec.errors import InvalidArgumentError
from sparseprec.graph import (SparsityPattern, band_pattern, dense_pattern, expand_order,
                              identity_pattern, neighbor_set)


def rows(g):
    return {j: set(neighbor_set(g, j).members) for j in range(g.p)}


def assert_valid(g):
    a = g.to_dense()
    assert (a == a.T).all()
    assert a.diagonal().all()


def test_band_pattern_tridiagonal():
    assert rows(band_pattern(5, 1)) == {0: {0, 1}, 1: {0, 1, 2}, 2: {1, 2, 3},
                                        3: {2, 3, 4}, 4: {3, 4}}


def test_band_pattern_edge_cases():
    assert band_pattern(3, 0) == identity_pattern(3)
    assert band_pattern(4, 3).to_dense().all()
    assert band_pattern(4, 10) == dense_pattern(4)
    with pytest.raises(InvalidArgumentError):
        band_pattern(0, 1)


@pytest.mark.parametrize("order, bandwidth", [(0, 0), (1, 1), (2, 2), (3, 3), (7, 5)])
def test_expand_order_on_band(order, bandwidth):
    assert expand_order(band_pattern(6, 1), order) == band_pattern(6, bandwidth)


def test_neighbor_set_examples():
    tri = band_pattern(5, 1)
    assert neighbor_set(tri, 0).members == (0, 1)
    assert neighbor_set(tri, 2).members == (1, 2, 3)
    assert neighbor_set(identity_pattern(5), 4).members == (4,)
    assert neighbor_set(tri, 2).position == 1
    with pytest.raises(InvalidArgumentError):
        neighbor_set(tri, 5)


def test_from_adjacency_adds_diagonal_and_rejects_asymmetry():
    g = SparsityPattern.from_adjacency(np.array([[0, 1], [1, 0]]))
    assert g.to_dense().all()
    with pytest.raises(InvalidArgumentError):
        SparsityPattern.from_adjacency(np.array([[1, 1], [0, 1]]))
    with pytest.raises(InvalidArgumentError):
        SparsityPattern.from_adjacency(np.ones((2, 3)))


def test_from_edges():
    g = SparsityPattern.from_edges(4, [(0, 3), (1, 2)])
    assert g.edges() == [(0, 3), (1, 2)]
    assert g.nnz == 4 + 4
    with pytest.raises(InvalidArgumentError):
        SparsityPattern.from_edges(3, [(0, 3)])


@st.composite
def patterns(draw):
    p = draw(st.integers(1, 9))
    pairs = st.tuples(st.integers(0, p - 1), st.integers(0, p - 1))
    return SparsityPattern.from_edges(p, draw(st.lists(pairs, max_size=12)))


@settings(max_examples=60, deadline=None)
@given(patterns(), st.integers(0, 4), st.integers(0, 4))
def test_expansion_nests(g, a, b):
    big = expand_order(g, a + b).to_dense()
    small = expand_order(g, max(a, b)).to_dense()
    assert (big | ~small).all()
    assert_valid(expand_order(g, a))


@settings(max_examples=30, deadline=None)
@given(patterns())
def test_neighbor_set_sizes(g):
    total = sum(len(neighbor_set(g, j)) for j in range(g.p))
    assert total == g.p + 2 * len(g.edges())
    for j in range(g.p):
        ne = neighbor_set(g, j)
        assert list(ne.members) == sorted(set(ne.members)) and j in ne.members


@pytest.mark.parametrize("k", [1, 2, 5])
def test_identity_is_fixed_by_expansion(k):
    assert expand_order(identity_pattern(7), k) == identity_pattern(7)


def test_expansion_matches_matrix_power():
    g = SparsityPattern.from_edges(6, [(0, 1), (1, 4), (4, 5), (2, 3)])
    a = g.to_dense().astype(int)
    for k in range(1, 5):
        expected = np.linalg.matrix_power(a, k) > 0
        np.testing.assert_array_equal(expand_order(g, k).to_dense(), expected)


def test_sparse_roundtrip():
    g = band_pattern(8, 2)
    assert SparsityPattern.from_adjacency(sp.csc_matrix(g.to_sparse())) == g
    assert g.bandwidth() == 2
    assert (0, 2) in g and (0, 3) not in g

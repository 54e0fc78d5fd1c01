"""Symmetric sparsity patterns and neighbourhood expansion.

A pattern always carries its diagonal: every vertex is its own neighbour.
Indices are 0-based here; the Matrix Market files read by the CLI are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError


class SparsityPattern:
    """Boolean symmetric adjacency structure over ``p`` vertices, diagonal included.

    Build from any square array or sparse matrix with :meth:`from_adjacency`.
    Nonzero entries are edges; their values are ignored.
    """

    __slots__ = ("_csr",)

    def __init__(self, csr: sp.csr_matrix):
        self._csr = csr

    @classmethod
    def from_adjacency(cls, adjacency) -> SparsityPattern:
        a = sp.csr_matrix(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidArgumentError(f"adjacency must be square, got shape {a.shape}")
        p = a.shape[0]
        if p == 0:
            raise InvalidArgumentError("pattern needs at least one vertex")
        a.eliminate_zeros()
        if (a != a.T).nnz:
            raise InvalidArgumentError("adjacency is not symmetric")
        a = (a + sp.identity(p, dtype=bool, format="csr")).tocsr()
        a.sort_indices()
        return cls(a)

    @classmethod
    def from_edges(cls, p: int, edges) -> SparsityPattern:
        """Pattern from unordered index pairs; both orientations are stored."""
        if p < 1:
            raise InvalidArgumentError("pattern needs at least one vertex")
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= p):
            raise InvalidArgumentError(f"edge index outside [0, {p})")
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        a = sp.csr_matrix((np.ones(rows.size, dtype=bool), (rows, cols)), shape=(p, p))
        return cls.from_adjacency(a)

    @property
    def p(self) -> int:
        return self._csr.shape[0]

    @property
    def nnz(self) -> int:
        """Stored entries, both triangles plus the diagonal."""
        return self._csr.nnz

    def neighbors(self, j: int) -> np.ndarray:
        lo, hi = self._csr.indptr[j], self._csr.indptr[j + 1]
        return self._csr.indices[lo:hi].copy()

    def __contains__(self, ij) -> bool:
        i, j = ij
        return bool(self._csr[i, j])

    def edges(self):
        """Off-diagonal pairs ``(i, j)`` with ``i < j``."""
        coo = sp.triu(self._csr, k=1).tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist()))

    def to_sparse(self, dtype=float) -> sp.csr_matrix:
        return self._csr.astype(dtype)

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray()

    def bandwidth(self) -> int:
        coo = self._csr.tocoo()
        return int(np.abs(coo.row - coo.col).max())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsityPattern):
            return NotImplemented
        return self.p == other.p and (self._csr != other._csr).nnz == 0

    def __hash__(self):
        return hash((self.p, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"SparsityPattern(p={self.p}, nnz={self.nnz})"


@dataclass(frozen=True)
class NeighborSet:
    """Column support of vertex ``vertex``: its neighbours and itself, sorted."""

    vertex: int
    members: tuple[int, ...]

    @property
    def position(self) -> int:
        """Index of ``vertex`` inside ``members``."""
        return self.members.index(self.vertex)

    def __len__(self) -> int:
        return len(self.members)


def band_pattern(p: int, bandwidth: int) -> SparsityPattern:
    """Pattern with ``(i, j)`` present iff ``|i - j| <= bandwidth``."""
    if p < 1:
        raise InvalidArgumentError("band pattern needs p >= 1")
    if bandwidth < 0:
        raise InvalidArgumentError("bandwidth must be nonnegative")
    k = min(bandwidth, p - 1)
    offsets = list(range(-k, k + 1))
    a = sp.diags([np.ones(p - abs(o), dtype=bool) for o in offsets], offsets,
                 shape=(p, p), format="csr", dtype=bool)
    return SparsityPattern.from_adjacency(a)


def identity_pattern(p: int) -> SparsityPattern:
    return band_pattern(p, 0)


def dense_pattern(p: int) -> SparsityPattern:
    return band_pattern(p, max(p - 1, 0))


def expand_order(g: SparsityPattern, markov_order: int) -> SparsityPattern:
    """Support of the boolean ``markov_order``-th power of ``g`` (self-loops included).

    Order 0 is the identity pattern and order 1 returns ``g``. Because the
    diagonal is always present the supports are nested in the order.
    """
    if markov_order < 0:
        raise InvalidArgumentError("markov_order must be nonnegative")
    if markov_order == 0:
        return identity_pattern(g.p)
    base = g.to_sparse(np.int64)
    acc = base
    for _ in range(markov_order - 1):
        nxt = (acc @ base).astype(bool).astype(np.int64)
        if nxt.nnz == acc.nnz:
            break  # fixed point: the connected components are already cliques
        acc = nxt
    return SparsityPattern.from_adjacency(acc)


def neighbor_set(g: SparsityPattern, j: int) -> NeighborSet:
    if not 0 <= j < g.p:
        raise InvalidArgumentError(f"vertex {j} outside [0, {g.p})")
    return NeighborSet(j, tuple(int(i) for i in g.neighbors(j)))

"""File formats used by the command line.

Datasets are headerless CSV with 17 significant digits. Graphs and precision
matrices are Matrix Market coordinate files with 1-based indices: graphs as
``pattern symmetric``, symmetric precisions as ``real symmetric`` (lower
triangle). A non-symmetrized estimate is written as ``real general``.
"""

import io

import numpy as np
import scipy.io
import scipy.sparse as sp

from .graph import SparsityPattern


def write_dataset(path, x) -> None:
    np.savetxt(path, np.asarray(x, dtype=float), delimiter=",", fmt="%.17g")


def read_dataset(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)


def _write_mm(path, m, **kwargs):
    buf = io.BytesIO()
    scipy.io.mmwrite(buf, m, **kwargs)
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def write_graph(path, g: SparsityPattern) -> None:
    _write_mm(path, sp.tril(g.to_sparse()).tocoo(), field="pattern", symmetry="symmetric")


def read_graph(path) -> SparsityPattern:
    return SparsityPattern.from_adjacency(scipy.io.mmread(path))


def write_precision(path, prec) -> None:
    coo = sp.coo_matrix(prec)
    if (abs(coo - coo.T)).nnz == 0:
        _write_mm(path, sp.tril(coo).tocoo(), symmetry="symmetric", precision=17)
    else:
        _write_mm(path, coo, symmetry="general", precision=17)


def read_precision(path) -> sp.csc_matrix:
    return sp.csc_matrix(scipy.io.mmread(path))

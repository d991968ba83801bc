"""Sparse/dense vector types and the O(k) kernels the solvers are built from.

A feature vector with k nonzeros out of n dimensions is held as a sorted
index/value pair list (``SparseVec``); model-side accumulators are plain
float64 numpy arrays (``DenseVec``).  Every kernel optionally charges a
``TouchCounter`` so tests can assert that training loops never perform an
O(n) operation: ``dot`` and ``axpy`` charge only ``sparse_touches``, while
the one-time dense passes (``squared_norm``, ``finalize_combine``) charge
``outside_dense_touches``.  Zero-filled allocations are memory management,
not vector arithmetic, and charge nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import DimensionError, EmptyDatasetError

if TYPE_CHECKING:
    from .data_io import Dataset

# Dense vectors are bare float64 arrays; the alias documents intent.
DenseVec = np.ndarray


@dataclass
class TouchCounter:
    """Tallies of vector components read or written, split by locality.

    ``loop_dense_touches`` must stay 0 for the sparse solvers; only the
    naive dense reference implementations charge it.
    """

    loop_dense_touches: int = 0
    outside_dense_touches: int = 0
    sparse_touches: int = 0


class SparseVec:
    """Immutable sparse vector: strictly increasing indices, values, and dim.

    Explicit zero values are tolerated (the file parser drops them, the
    algebra does not care).
    """

    __slots__ = ("indices", "values", "dim")

    def __init__(self, indices, values, dim: int):
        idx = np.array(indices, dtype=np.int64, copy=True)
        val = np.array(values, dtype=np.float64, copy=True)
        if idx.ndim != 1 or val.ndim != 1 or idx.shape != val.shape:
            raise ValueError("indices and values must be 1-d and equal length")
        if dim < 0:
            raise ValueError(f"dim must be >= 0, got {dim}")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= dim:
                raise DimensionError(
                    f"index out of range: [{idx[0]}, {idx[-1]}] not within [0, {dim})"
                )
            if np.any(np.diff(idx) <= 0):
                raise ValueError("indices must be strictly increasing")
        idx.setflags(write=False)
        val.setflags(write=False)
        self.indices = idx
        self.values = val
        self.dim = dim

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]], dim: int) -> "SparseVec":
        pairs = list(pairs)
        return cls([i for i, _ in pairs], [v for _, v in pairs], dim)

    @classmethod
    def from_dense(cls, v: DenseVec) -> "SparseVec":
        """Sparsify: keep exactly the nonzero components of ``v``."""
        v = np.asarray(v, dtype=np.float64)
        idx = np.nonzero(v)[0]
        return cls(idx, v[idx], v.shape[0])

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def densify(self) -> DenseVec:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    def with_dim(self, dim: int) -> "SparseVec":
        """Re-home into a space of size ``dim``, dropping entries beyond it.

        Unseen features carry zero learned weight, so clipping is the right
        behaviour when predicting with a model of smaller dimension.
        """
        if dim == self.dim:
            return self
        keep = self.indices < dim
        if keep.all():
            return SparseVec(self.indices, self.values, dim)
        return SparseVec(self.indices[keep], self.values[keep], dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseVec)
            and self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        pairs = ", ".join(f"{i}:{v}" for i, v in zip(self.indices, self.values))
        return f"SparseVec({{{pairs}}}, dim={self.dim})"


def _check_dim(v: DenseVec, x: SparseVec) -> None:
    if x.dim != v.shape[0]:
        raise DimensionError(f"sparse dim {x.dim} != dense length {v.shape[0]}")


def dot(v: DenseVec, x: SparseVec, counter: TouchCounter | None = None) -> float:
    """Sparse-dense dot product, O(k)."""
    _check_dim(v, x)
    if counter is not None:
        counter.sparse_touches += x.nnz
    return float(v[x.indices] @ x.values)


def axpy(v: DenseVec, alpha: float, x: SparseVec, counter: TouchCounter | None = None) -> None:
    """In-place v += alpha * x, touching only x's k nonzero slots."""
    _check_dim(v, x)
    if counter is not None:
        counter.sparse_touches += x.nnz
    v[x.indices] += alpha * x.values


def mean_vector(data: "Dataset", counter: TouchCounter | None = None) -> DenseVec:
    """Mean feature vector of a dataset.

    Accumulates (1/m)-scaled sparse updates: O(m k) sparse touches plus one
    O(n) allocation, no dense arithmetic pass.
    """
    m = data.m
    if m == 0:
        raise EmptyDatasetError("mean_vector needs at least one example")
    acc = np.zeros(data.dim)
    inv_m = 1.0 / m
    for x, _ in data.examples:
        axpy(acc, inv_m, x, counter)
    return acc


def squared_norm(v: DenseVec, counter: TouchCounter | None = None) -> float:
    """Sum of squares of a dense vector; one O(n) pass."""
    if counter is not None:
        counter.outside_dense_touches += v.shape[0]
    return float(v @ v)


def finalize_combine(
    coeffs: Sequence[tuple[float, DenseVec]], counter: TouchCounter | None = None
) -> DenseVec:
    """Linear combination sum(alpha_j * v_j) as one O(n) dense pass.

    This is the shape of every one-time model recovery the solvers perform
    after their loops finish.
    """
    if not coeffs:
        raise ValueError("finalize_combine needs at least one (coeff, vector) pair")
    n = coeffs[0][1].shape[0]
    for _, vec in coeffs:
        if vec.shape[0] != n:
            raise DimensionError(f"vector length {vec.shape[0]} != {n}")
    if counter is not None:
        counter.outside_dense_touches += n
    out = coeffs[0][0] * coeffs[0][1]
    for alpha, vec in coeffs[1:]:
        out += alpha * vec
    return out

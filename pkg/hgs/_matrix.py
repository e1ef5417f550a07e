import operator
from typing import Iterable, Tuple

import numpy as np
import numpy.typing as npt

from ._errors import BadIndexSet, DimensionMismatch

#: dense complex ``n x n`` matrix; structural zeros are entries exactly ``0+0j``
ComplexMatrix = npt.NDArray[np.complex128]
#: strictly increasing tuple of 0-based indices
IndexSet = Tuple[int, ...]


def as_matrix(value) -> ComplexMatrix:
    """
    Validate and freeze ``value`` as a :py:data:`ComplexMatrix`

    The result is always a fresh, read-only ``complex128`` copy so that callers
    may share it between threads.
    """
    matrix = np.array(value, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] == 0:
        raise ValueError("expected a matrix of order at least 1")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    matrix.setflags(write=False)
    return matrix


def as_vector(value, n: int) -> npt.NDArray[np.complex128]:
    vector = np.array(value, dtype=np.complex128).reshape(-1)
    if vector.shape[0] != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {vector.shape[0]}")
    if not np.all(np.isfinite(vector)):
        raise ValueError("vector entries must be finite")
    return vector


def index_set(
    indices: Iterable[int], n: int, proper: bool = False, allow_empty: bool = False
) -> IndexSet:
    """Normalise ``indices`` to an :py:data:`IndexSet` of ``range(n)``"""
    try:
        values = tuple(operator.index(i) for i in indices)
    except TypeError:
        raise BadIndexSet(f"indices must be integers, got {indices!r}") from None
    if len(set(values)) != len(values):
        raise BadIndexSet(f"duplicate indices in {values}")
    values = tuple(sorted(values))
    if not values and not allow_empty:
        raise BadIndexSet("index set must not be empty")
    if values and (values[0] < 0 or values[-1] >= n):
        raise BadIndexSet(f"indices {values} out of range for order {n}")
    if proper and len(values) == n:
        raise BadIndexSet(f"index set {values} is not a proper subset")
    return values


def complement(indices: IndexSet, n: int) -> IndexSet:
    excluded = set(indices)
    return tuple(i for i in range(n) if i not in excluded)


def freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array

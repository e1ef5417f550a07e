"""
Named test matrices and seeded random matrices of a given class
"""
import enum
import logging
from typing import Callable, Dict, Optional, Union

import numpy as np

from ._errors import BadClass, BadId, GenerationFailed
from ._graph import is_irreducible
from ._matrix import ComplexMatrix, as_matrix
from ._taxonomy import Dominance, HClass, classify_h, dominance_class, gd_scaling

logger = logging.getLogger(__name__)

_ATTEMPTS = 20

_FIXED = {
    "ex11A": [[2, 1, 1], [-1, 2, 1], [-1, -1, 2]],
    "ex11B": [[2, -1, -1], [1, 2, -1], [1, 1, 2]],
    "ex12A": [[2, -1, 1], [1, 2, 1], [1, 1, 2]],
    "ex12B": [[2, -1], [2, 1]],
    "ex62": [
        [5, -1, 1, 1, 1, -1],
        [1, 5, -1, 1, 1, 1],
        [1, 1, 5, -1, 1, 1],
        [0, 0, 0, 2, -1, 1],
        [0, 0, 0, 1, 2, -1],
        [0, 0, 0, 1, 1, 2],
    ],
}

#: names accepted by :py:func:`get`; ``family61`` takes an order
NAMES = ("ex11A", "ex11B", "ex12A", "ex12B", "family61", "ex62")


def family61(n: int) -> ComplexMatrix:
    """Tridiagonal ``n x n`` matrix with diagonal ``(1, 2, ..., 2, 1)``, ``-1`` above and ``1`` below"""
    if n < 2:
        raise BadId(f"family61 needs an order of at least 2, got {n}")
    a = np.diag(np.full(n, 2.0)) - np.eye(n, k=1) + np.eye(n, k=-1)
    a[0, 0] = a[-1, -1] = 1
    return as_matrix(a)


def get(name: str, n: Optional[int] = None) -> ComplexMatrix:
    """
    Named matrix ``name``, of order ``n`` for ``family61``

    :raises BadId: for unknown names and a missing or too small ``n``
    """
    if name == "family61":
        if n is None:
            raise BadId("family61 needs an order n")
        return family61(n)
    try:
        rows = _FIXED[name]
    except KeyError:
        raise BadId(
            f"unknown matrix {name!r}, expected one of {', '.join(NAMES)}"
        ) from None
    return as_matrix(rows)


class CorpusClass(enum.Enum):
    SDD = "sdd"
    IDD = "idd"
    DE_IRREDUCIBLE = "de-irreducible"
    GDE_IRREDUCIBLE = "gde-irreducible"
    MIXED_H = "mixed-h"
    NOT_H = "not-h"


def as_class(cls: Union[CorpusClass, str]) -> CorpusClass:
    if isinstance(cls, CorpusClass):
        return cls
    try:
        return CorpusClass(str(cls).strip().lower().replace("_", "-"))
    except ValueError:
        raise BadClass(f"unknown matrix class {cls!r}") from None


def _phases(rng: np.random.Generator, shape) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=shape))


def _off_diagonal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random complex off-diagonal part on an irreducible pattern"""
    pattern = rng.random((n, n)) < 0.4
    band = np.arange(n - 1)
    pattern[band, band + 1] = True
    pattern[band + 1, band] = True
    np.fill_diagonal(pattern, False)
    moduli = np.where(pattern, rng.uniform(0.2, 1.0, size=(n, n)), 0.0)
    return moduli * _phases(rng, (n, n))


def _with_diagonal(off: np.ndarray, moduli: np.ndarray, rng) -> np.ndarray:
    a = off.copy()
    np.fill_diagonal(a, moduli * _phases(rng, moduli.shape[0]))
    return a


def _row_loads(off: np.ndarray) -> np.ndarray:
    return np.abs(off).sum(axis=1)


def _sdd(rng, n):
    off = _off_diagonal(rng, n)
    return _with_diagonal(off, _row_loads(off) * rng.uniform(1.1, 2.0, size=n), rng)


def _idd(rng, n):
    off = _off_diagonal(rng, n)
    factors = np.ones(n)
    factors[rng.integers(n)] = rng.uniform(1.1, 2.0)
    return _with_diagonal(off, _row_loads(off) * factors, rng)


def _de(rng, n):
    off = _off_diagonal(rng, n)
    return _with_diagonal(off, _row_loads(off), rng)


def _gde(rng, n):
    weights = rng.uniform(0.5, 2.0, size=n)
    return _de(rng, n) / weights[None, :]


def _mixed(rng, n):
    if n < 3 or rng.random() < 0.5:
        return _gde(rng, n)
    size = int(rng.integers(2, n))
    a = np.zeros((n, n), dtype=np.complex128)
    a[:size, :size] = _gde(rng, size)
    a[size:, size:] = _sdd(rng, n - size) if n - size > 1 else rng.uniform(1, 2)
    coupling = rng.random((size, n - size)) < 0.5
    coupling[rng.integers(size), rng.integers(n - size)] = True
    a[:size, size:] = np.where(
        coupling, rng.uniform(0.2, 1.0, size=coupling.shape), 0.0
    ) * _phases(rng, coupling.shape)
    order = rng.permutation(n)
    return a[np.ix_(order, order)]


def _not_h(rng, n):
    a = _de(rng, n)
    i = rng.integers(n)
    a[i, i] /= 2
    return a


_GENERATORS: Dict[CorpusClass, Callable] = {
    CorpusClass.SDD: _sdd,
    CorpusClass.IDD: _idd,
    CorpusClass.DE_IRREDUCIBLE: _de,
    CorpusClass.GDE_IRREDUCIBLE: _gde,
    CorpusClass.MIXED_H: _mixed,
    CorpusClass.NOT_H: _not_h,
}


def in_class(a, cls: Union[CorpusClass, str]) -> bool:
    """Whether ``a`` belongs to ``cls`` according to the taxonomy"""
    a = as_matrix(a)
    cls = as_class(cls)
    if cls is CorpusClass.SDD:
        return dominance_class(a).tag is Dominance.STRICTLY_DD
    if cls is CorpusClass.IDD:
        return dominance_class(a).tag is Dominance.IRREDUCIBLY_DD
    if cls is CorpusClass.DE_IRREDUCIBLE:
        return (
            dominance_class(a).tag is Dominance.DIAGONALLY_EQUIPOTENT
            and is_irreducible(a)
        )
    if cls is CorpusClass.GDE_IRREDUCIBLE:
        return is_irreducible(a) and gd_scaling(a).equipotent
    if cls is CorpusClass.MIXED_H:
        return classify_h(a) is HClass.MIXED
    return classify_h(a) is HClass.NOT_H


def random_in_class(cls: Union[CorpusClass, str], n: int, seed: int) -> ComplexMatrix:
    """
    Random ``n x n`` matrix of class ``cls``, deterministic in ``seed``

    Candidates are built to lie in the class and then checked by the
    taxonomy; the few that rounding pushes out are redrawn.

    :raises BadClass: if ``cls`` is not a :py:class:`CorpusClass`
    :raises GenerationFailed: if every candidate is rejected
    """
    cls = as_class(cls)
    if n < 2:
        raise ValueError(f"random matrices need order at least 2, got {n}")
    rng = np.random.default_rng(seed)
    for attempt in range(_ATTEMPTS):
        candidate = as_matrix(_GENERATORS[cls](rng, n))
        if in_class(candidate, cls):
            return candidate
        logger.debug("%s candidate %d of order %d rejected", cls.value, attempt, n)
    raise GenerationFailed(f"no {cls.value} matrix of order {n} for seed {seed}")

"""
Dense complex linear algebra for stationary iterations

The splitting convention is ``A = D - L - U`` with ``D`` diagonal, ``L``
strictly lower and ``U`` strictly upper triangular. All triangular inverses
are applied by substitution.
"""
import enum
import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg as sla

from ._config import PIVOT_TOL, UNIT_RHO_TOL, eig_sweep_budget
from ._errors import NoConvergence, SingularBlock, ZeroDiagonal
from ._matrix import (
    ComplexMatrix,
    IndexSet,
    as_matrix,
    complement,
    freeze,
    index_set,
)

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


class IterationMethod(enum.Enum):
    """The four point iterations of a splitting"""

    JACOBI = "j"
    FGS = "fgs"
    BGS = "bgs"
    SGS = "sgs"

    @classmethod
    def parse(cls, text: str) -> "IterationMethod":
        key = text.strip().lower()
        if key == "jacobi":
            key = "j"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(
                f"unknown iteration method {text!r}, expected one of j, fgs, bgs, sgs"
            ) from None

    def __str__(self):
        return self.name if self is not IterationMethod.JACOBI else "J"


#: methods for which the convergence theorems give verdicts
GAUSS_SEIDEL = (IterationMethod.FGS, IterationMethod.BGS, IterationMethod.SGS)


def as_method(method: Union[IterationMethod, str]) -> IterationMethod:
    if isinstance(method, IterationMethod):
        return method
    return IterationMethod.parse(method)


@dataclass(frozen=True, eq=False)
class Splitting:
    D: ComplexMatrix
    L: ComplexMatrix
    U: ComplexMatrix
    diagonal_nonzero: bool

    def reassemble(self) -> ComplexMatrix:
        return self.D - self.L - self.U


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues of a matrix, by decreasing modulus

    :param residual_bound: estimate of the backward error of the eigensolver,
        the sum of all neglected subdiagonal entries plus rounding of the
        reduction
    """

    eigenvalues: np.ndarray
    spectral_radius: float
    residual_bound: float

    @property
    def unit_radius(self) -> bool:
        return abs(self.spectral_radius - 1) <= UNIT_RHO_TOL


def split(a) -> Splitting:
    a = as_matrix(a)
    diagonal = np.diag(a)
    return Splitting(
        D=freeze(np.diag(diagonal)),
        L=freeze(-np.tril(a, -1)),
        U=freeze(-np.triu(a, 1)),
        diagonal_nonzero=bool(np.all(diagonal != 0)),
    )


def zero_diagonal_index(a) -> Optional[int]:
    """Index of the first zero diagonal entry, if any"""
    zeros = np.flatnonzero(np.diag(a) == 0)
    return int(zeros[0]) if zeros.size else None


def check_diagonal(a: ComplexMatrix):
    index = zero_diagonal_index(a)
    if index is not None:
        raise ZeroDiagonal(index)


def iteration_matrix(a, method: Union[IterationMethod, str]) -> ComplexMatrix:
    r"""
    Iteration matrix ``H`` of ``method`` for the splitting of ``a``

    * :py:attr:`~IterationMethod.JACOBI`: :math:`D^{-1}(L + U)`
    * :py:attr:`~IterationMethod.FGS`: :math:`(D - L)^{-1} U`
    * :py:attr:`~IterationMethod.BGS`: :math:`(D - U)^{-1} L`
    * :py:attr:`~IterationMethod.SGS`: :math:`(D - U)^{-1} L (D - L)^{-1} U`

    :raises ZeroDiagonal: if some diagonal entry of ``a`` is zero
    """
    a = as_matrix(a)
    method = as_method(method)
    check_diagonal(a)
    splitting = split(a)
    if method is IterationMethod.JACOBI:
        result = (splitting.L + splitting.U) / np.diag(a)[:, None]
    elif method is IterationMethod.FGS:
        result = _forward(a, splitting)
    elif method is IterationMethod.BGS:
        result = _backward(a, splitting)
    else:
        result = _backward(a, splitting) @ _forward(a, splitting)
    return freeze(np.asarray(result, dtype=np.complex128))


def _forward(a: ComplexMatrix, splitting: Splitting) -> np.ndarray:
    return sla.solve_triangular(np.tril(a), splitting.U, lower=True)


def _backward(a: ComplexMatrix, splitting: Splitting) -> np.ndarray:
    return sla.solve_triangular(np.triu(a), splitting.L, lower=False)


def eigenvalues(m, max_sweeps: Optional[int] = None) -> Spectrum:
    """
    All eigenvalues of ``m`` by balanced Hessenberg reduction and shifted QR

    The matrix is balanced and reduced to upper Hessenberg form by
    :py:func:`scipy.linalg.matrix_balance` and :py:func:`scipy.linalg.hessenberg`,
    then deflated by complex single-shift QR sweeps using Wilkinson shifts.
    The total number of sweeps is bounded by ``max_sweeps``, by default
    :py:func:`~hgs._config.eig_sweep_budget`.

    :raises NoConvergence: if the sweep budget is exhausted
    """
    m = as_matrix(m)
    n = m.shape[0]
    budget = eig_sweep_budget(n) if max_sweeps is None else max_sweeps
    norm = float(np.linalg.norm(m))
    if n == 1:
        values = m[0].copy()
        neglected, sweeps = 0.0, 0
    else:
        balanced, _ = sla.matrix_balance(m)
        work = np.array(sla.hessenberg(balanced), dtype=np.complex128)
        values, neglected, sweeps = _hessenberg_qr(work, budget)
    logger.debug("eigenvalues of order %d in %d QR sweeps", n, sweeps)
    order = np.lexsort((np.angle(values), -np.abs(values)))
    values = freeze(values[order])
    return Spectrum(
        eigenvalues=values,
        spectral_radius=float(np.max(np.abs(values))),
        residual_bound=neglected + n * _EPS * norm,
    )


def spectral_radius(m) -> float:
    return eigenvalues(m).spectral_radius


def _hessenberg_qr(h: np.ndarray, budget: int) -> Tuple[np.ndarray, float, int]:
    n = h.shape[0]
    values = np.empty(n, dtype=np.complex128)
    scale = float(np.linalg.norm(h)) or 1.0
    neglected = 0.0
    sweeps = 0
    since_deflation = 0
    hi = n - 1
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            local = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if sub <= _EPS * (local if local else scale):
                neglected += sub
                h[lo, lo - 1] = 0
                break
            lo -= 1
        if lo == hi:
            values[hi] = h[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        if sweeps >= budget:
            raise NoConvergence(budget, hi + 1)
        sweeps += 1
        since_deflation += 1
        if since_deflation % 11 == 10:
            # exceptional shift
            shift = h[hi, hi] + abs(h[hi, hi - 1]) * (0.75 + 0.4375j)
        else:
            shift = _wilkinson_shift(h[hi - 1 : hi + 1, hi - 1 : hi + 1])
        _qr_sweep(h, lo, hi, shift)
    values[0] = h[0, 0]
    return values, neglected, sweeps


def _wilkinson_shift(block: np.ndarray) -> complex:
    a, b, c, d = block[0, 0], block[0, 1], block[1, 0], block[1, 1]
    mean = (a + d) / 2
    root = np.sqrt(((a - d) / 2) ** 2 + b * c)
    first, second = mean + root, mean - root
    return first if abs(first - d) <= abs(second - d) else second


def _qr_sweep(h: np.ndarray, lo: int, hi: int, shift: complex):
    """One explicit shifted QR step ``RQ + shift`` on ``h[lo:hi+1, lo:hi+1]``"""
    stop = hi + 1
    window = np.arange(lo, stop)
    h[window, window] -= shift
    rotations = []
    for k in range(lo, hi):
        x, y = h[k, k], h[k + 1, k]
        r = np.hypot(abs(x), abs(y))
        if r == 0:
            rotation = np.eye(2, dtype=np.complex128)
        else:
            c, s = x / r, y / r
            rotation = np.array([[np.conj(c), np.conj(s)], [-s, c]])
        h[k : k + 2, k:stop] = rotation @ h[k : k + 2, k:stop]
        rotations.append(rotation)
    for k, rotation in zip(range(lo, hi), rotations):
        h[lo : k + 2, k : k + 2] = h[lo : k + 2, k : k + 2] @ rotation.conj().T
    h[window, window] += shift


def determinant(a) -> complex:
    """
    Determinant by LU factorisation with partial pivoting

    Returns exactly ``0`` if any pivot is at most ``1e-12 * ||a||``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    scale = np.linalg.norm(a, np.inf)
    if scale == 0:
        return 0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, pivots = sla.lu_factor(a, check_finite=False)
    diagonal = np.diag(lu)
    if np.any(np.abs(diagonal) <= PIVOT_TOL * scale):
        return 0j
    swaps = np.count_nonzero(pivots != np.arange(n))
    return complex((-1) ** swaps * np.prod(diagonal))


def schur_complement(a, alpha) -> ComplexMatrix:
    """
    Schur complement ``A/alpha = A(a', a') - A(a', a) A(a)^-1 A(a, a')``

    :param alpha: nonempty proper subset of ``range(n)``
    :raises BadIndexSet: if ``alpha`` is empty, full or out of range
    :raises SingularBlock: if the principal block ``A(alpha)`` is singular
    """
    a = as_matrix(a)
    n = a.shape[0]
    alpha = index_set(alpha, n, proper=True)
    rest = complement(alpha, n)
    factors = _principal_lu(a, alpha)
    coupling = sla.lu_solve(factors, a[np.ix_(alpha, rest)])
    return freeze(a[np.ix_(rest, rest)] - a[np.ix_(rest, alpha)] @ coupling)


def _principal_lu(a: ComplexMatrix, alpha: IndexSet):
    block = a[np.ix_(alpha, alpha)]
    if determinant(block) == 0:
        raise SingularBlock(f"principal block on {alpha} is singular")
    return sla.lu_factor(block, check_finite=False)

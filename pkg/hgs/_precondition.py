"""
Gauss-type left preconditioners

Every preconditioner is an explicit nonsingular matrix ``P``; the
preconditioned system is ``P A x = P b``. :py:func:`verify_preconditioned`
checks that ``P A`` is an invertible H-matrix whose iterations are bounded by
those of a comparison matrix reference.
"""
import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from ._config import PIVOT_TOL, UNIT_RHO_TOL
from ._errors import ZeroDiagonal, ZeroPivot
from ._linalg import (
    IterationMethod,
    _principal_lu,
    iteration_matrix,
    schur_complement,
    spectral_radius,
)
from ._matrix import ComplexMatrix, IndexSet, as_matrix, complement, freeze, index_set
from ._taxonomy import HClass, classify_h, comparison_matrix

logger = logging.getLogger(__name__)


class PreconditionerKind(enum.Enum):
    FIRST_COLUMN = "first-column"
    GAUSS_TRANSFORM = "gauss-transform"
    GAUSS_CHAIN = "gauss-chain"
    COLUMN_ELIMINATOR = "column-k"
    SCHUR_ALPHA = "schur-alpha"


@dataclass(frozen=True, eq=False)
class Preconditioner:
    """
    Left preconditioner ``matrix`` and the parameters it was built from

    Only the parameter of its ``kind`` is set: ``pivot`` for the Gauss
    transforms and the column eliminator, ``weights`` for the first column
    kind and ``alpha`` for the Schur kind.
    """

    kind: PreconditionerKind
    matrix: ComplexMatrix
    pivot: Optional[int] = None
    weights: Optional[np.ndarray] = None
    alpha: Optional[IndexSet] = None

    def apply(self, a) -> ComplexMatrix:
        return freeze(self.matrix @ as_matrix(a))


def _pivot(a: ComplexMatrix, k: int) -> int:
    (k,) = index_set((k,), a.shape[0])
    if a[k, k] == 0:
        raise ZeroPivot(k)
    return k


def first_column(a, weights: Optional[Sequence[float]] = None) -> Preconditioner:
    """
    Identity with ``-w_i a_i0`` below the diagonal of the first column

    ``weights`` has one entry per row; the first is unused. Without weights
    every row gets weight ``1``, which eliminates the first column of a
    matrix with ``a_00 = 1``.

    :raises ZeroPivot: if ``a_00 == 0``
    """
    a = as_matrix(a)
    n = a.shape[0]
    _pivot(a, 0)
    if weights is None:
        weights = np.ones(n)
    else:
        weights = np.array(weights, dtype=float).reshape(-1)
        if weights.shape[0] != n:
            raise ValueError(f"expected {n} weights, got {weights.shape[0]}")
    matrix = np.eye(n, dtype=np.complex128)
    matrix[1:, 0] = -weights[1:] * a[1:, 0]
    return Preconditioner(
        PreconditionerKind.FIRST_COLUMN, freeze(matrix), weights=freeze(weights)
    )


def _gauss_matrix(a: ComplexMatrix, k: int) -> np.ndarray:
    n = a.shape[0]
    matrix = np.eye(n, dtype=np.complex128)
    matrix[k + 1 :, k] = -a[k + 1 :, k] / a[k, k]
    return matrix


def gauss_transform(a, k: int) -> Preconditioner:
    """
    Gauss transform ``M_k`` eliminating column ``k`` below the pivot

    :raises ZeroPivot: if ``a_kk == 0``
    """
    a = as_matrix(a)
    k = _pivot(a, k)
    return Preconditioner(
        PreconditionerKind.GAUSS_TRANSFORM, freeze(_gauss_matrix(a, k)), pivot=k
    )


def gauss_chain(a, k: int) -> Preconditioner:
    """
    Product ``M_k ... M_0`` of Gauss transforms

    Each ``M_j`` is built from the partially eliminated matrix
    ``M_(j-1) ... M_0 A``, so ``gauss_chain(a, n - 2).apply(a)`` is the upper
    triangular factor of an LU factorisation without pivoting.

    :raises ZeroPivot: naming the first step whose updated pivot vanishes
    """
    a = as_matrix(a)
    (k,) = index_set((k,), a.shape[0])
    scale = np.linalg.norm(a, np.inf)
    work = np.array(a)
    product = np.eye(a.shape[0], dtype=np.complex128)
    for j in range(k + 1):
        if abs(work[j, j]) <= PIVOT_TOL * scale:
            raise ZeroPivot(j)
        step = _gauss_matrix(work, j)
        work = step @ work
        work[j + 1 :, j] = 0
        product = step @ product
    return Preconditioner(PreconditionerKind.GAUSS_CHAIN, freeze(product), pivot=k)


def column_eliminator(a, k: int) -> Preconditioner:
    """
    Identity with ``-a_ik / a_kk`` at ``(i, k)`` for every ``i != k``

    The preconditioned matrix keeps row ``k`` and has column ``k`` equal to
    ``a_kk e_k``.

    :raises ZeroPivot: if ``a_kk == 0``
    """
    a = as_matrix(a)
    k = _pivot(a, k)
    matrix = np.eye(a.shape[0], dtype=np.complex128)
    rows = np.arange(a.shape[0]) != k
    matrix[rows, k] = -a[rows, k] / a[k, k]
    return Preconditioner(
        PreconditionerKind.COLUMN_ELIMINATOR, freeze(matrix), pivot=k
    )


def schur_preconditioner(a, alpha) -> Preconditioner:
    """
    Block elimination of the columns ``alpha``

    With ``P`` the permutation moving ``alpha`` first, the preconditioner is
    ``P^T M P`` where ``M`` is the unit block lower triangular matrix with
    ``-A(a', a) A(a)^-1`` in its lower left block. Then ``P (P^T M P A) P^T``
    is block upper triangular with diagonal blocks ``A(alpha)`` and the Schur
    complement ``A/alpha``.

    :raises BadIndexSet: if ``alpha`` is empty, full or out of range
    :raises SingularBlock: if ``A(alpha)`` is singular
    """
    a = as_matrix(a)
    n = a.shape[0]
    alpha = index_set(alpha, n, proper=True)
    rest = complement(alpha, n)
    factors = _principal_lu(a, alpha)
    # X A(alpha) = A(a', a), solved as A(alpha)^T X^T = A(a', a)^T
    coupling = sla.lu_solve(factors, a[np.ix_(rest, alpha)].T, trans=1).T
    permutation = np.eye(n, dtype=np.complex128)[list(alpha + rest)]
    block = np.eye(n, dtype=np.complex128)
    block[len(alpha) :, : len(alpha)] = -coupling
    matrix = permutation.T @ block @ permutation
    return Preconditioner(PreconditionerKind.SCHUR_ALPHA, freeze(matrix), alpha=alpha)


@dataclass(frozen=True)
class BoundRow:
    """
    Spectral radii of one method

    :param rho: on the preconditioned matrix
    :param rho_mu: on the comparison matrix of the preconditioned matrix
    :param rho_reference: on the comparison matrix reference of the bound
    :param holds: ``rho <= rho_reference < 1`` up to ``1e-8``
    """

    rho: Optional[float]
    rho_mu: Optional[float]
    rho_reference: Optional[float]
    holds: bool


@dataclass(frozen=True, eq=False)
class PreconditionReport:
    preconditioner: Preconditioner
    a_tilde: ComplexMatrix
    h_class: HClass
    rows: Dict[IterationMethod, BoundRow]
    findings: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.h_class is HClass.INVERTIBLE and all(
            row.holds for row in self.rows.values()
        )


def _radius(matrix, method: IterationMethod) -> Optional[float]:
    try:
        return spectral_radius(iteration_matrix(matrix, method))
    except ZeroDiagonal:
        return None


def _reference_matrices(a: ComplexMatrix, p: Preconditioner, a_tilde: ComplexMatrix):
    if p.kind is PreconditionerKind.COLUMN_ELIMINATOR and a.shape[0] > 1:
        return (comparison_matrix(schur_complement(a, (p.pivot,))),)
    if p.kind is PreconditionerKind.SCHUR_ALPHA:
        alpha = p.alpha
        return (
            comparison_matrix(a[np.ix_(alpha, alpha)]),
            comparison_matrix(schur_complement(a, alpha)),
        )
    return (comparison_matrix(a_tilde),)


def _bound_row(
    a_tilde: ComplexMatrix, references, method: IterationMethod
) -> BoundRow:
    rho = _radius(a_tilde, method)
    rho_mu = _radius(comparison_matrix(a_tilde), method)
    radii = [_radius(reference, method) for reference in references]
    reference = None if any(r is None for r in radii) else max(radii)
    holds = (
        rho is not None
        and reference is not None
        and rho <= reference + UNIT_RHO_TOL
        and reference < 1 - UNIT_RHO_TOL
    )
    return BoundRow(rho, rho_mu, reference, holds)


def verify_preconditioned(
    a, p: Preconditioner, max_workers: Optional[int] = None
) -> PreconditionReport:
    """
    Check ``P A`` against the comparison matrix bound for all four methods

    The bound reference is ``mu(A/k)`` for the column eliminator, the larger
    of ``mu(A(alpha))`` and ``mu(A/alpha)`` for the Schur preconditioner, and
    ``mu(P A)`` otherwise. Violations are collected as findings.
    """
    a = as_matrix(a)
    a_tilde = p.apply(a)
    h_class = classify_h(a_tilde)
    references = _reference_matrices(a, p, a_tilde)
    methods = tuple(IterationMethod)

    def row(method: IterationMethod) -> BoundRow:
        return _bound_row(a_tilde, references, method)

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = dict(zip(methods, pool.map(row, methods)))
    else:
        rows = {method: row(method) for method in methods}

    findings = []
    if h_class is not HClass.INVERTIBLE:
        findings.append(f"preconditioned matrix is {h_class.value}, not invertible")
    for method, bound in rows.items():
        if bound.rho is None or bound.rho_reference is None:
            findings.append(f"{method}: zero diagonal, no spectral radius")
        elif not bound.holds:
            findings.append(
                f"{method}: rho {bound.rho:.6f} against reference"
                f" {bound.rho_reference:.6f}"
            )
    for finding in findings:
        logger.info("%s: %s", p.kind.value, finding)
    return PreconditionReport(p, a_tilde, h_class, rows, tuple(findings))

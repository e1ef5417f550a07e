"""
Stationary iterations ``x <- H x + f``

A sweep is applied through triangular substitution on the splitting; the
iteration matrix ``H`` is never formed.
"""
import enum
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple, Union

import numpy as np
import scipy.linalg as sla

from ._config import BLOWUP
from ._linalg import IterationMethod, as_method, check_diagonal, split
from ._matrix import ComplexMatrix, as_matrix, as_vector, freeze
from ._precondition import Preconditioner

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAXIT = 100_000
MAXIT_CAP = 1_000_000
RATE_WINDOW = 20

Sweep = Callable[[np.ndarray], np.ndarray]


class SolveStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    DIVERGED = "diverged"


@dataclass(frozen=True, eq=False)
class SolveResult:
    """
    :param history: infinity norm of the update of every sweep
    :param residual: ``||A x - b||`` in the infinity norm, for the system
        originally passed in
    """

    x: np.ndarray
    iterations: int
    history: Tuple[float, ...]
    status: SolveStatus
    residual: float

    @property
    def rate(self) -> Optional[float]:
        """Geometric decay of the update norms over the final 20 sweeps"""
        window = self.history[-(RATE_WINDOW + 1) :]
        if len(window) < 2 or not all(0 < h < math.inf for h in (window[0], window[-1])):
            return None
        return (window[-1] / window[0]) ** (1 / (len(window) - 1))


def _sweep(a: ComplexMatrix, b: np.ndarray, method: IterationMethod) -> Sweep:
    splitting = split(a)
    lower, upper = np.tril(a), np.triu(a)
    diagonal = np.diag(a)

    def jacobi(x):
        return (b + (splitting.L + splitting.U) @ x) / diagonal

    def forward(x):
        return sla.solve_triangular(lower, splitting.U @ x + b, lower=True)

    def backward(x):
        return sla.solve_triangular(upper, splitting.L @ x + b, lower=False)

    def symmetric(x):
        return backward(forward(x))

    return {
        IterationMethod.JACOBI: jacobi,
        IterationMethod.FGS: forward,
        IterationMethod.BGS: backward,
        IterationMethod.SGS: symmetric,
    }[method]


def default_maxit(n: int, rho_hint: Optional[float] = None) -> int:
    """``10 n ceil(1 / (1 - rho))`` capped at ``10**6``, or ``10**5`` without a rate"""
    if rho_hint is None or not 0 <= rho_hint < 1:
        return DEFAULT_MAXIT
    return min(10 * n * math.ceil(1 / (1 - rho_hint)), MAXIT_CAP)


def iteration_vector(a, b, method: Union[IterationMethod, str]) -> np.ndarray:
    """
    The constant ``f`` of ``x <- H x + f``

    ``D^-1 b``, ``(D - L)^-1 b``, ``(D - U)^-1 b`` and ``(D - U)^-1 D (D - L)^-1 b``
    for Jacobi, forward, backward and symmetric Gauss-Seidel.
    """
    a = as_matrix(a)
    check_diagonal(a)
    b = as_vector(b, a.shape[0])
    sweep = _sweep(a, b, as_method(method))
    return freeze(sweep(np.zeros(a.shape[0], dtype=np.complex128)))


def solve(
    a,
    b,
    method: Union[IterationMethod, str],
    x0=None,
    tol: float = DEFAULT_TOL,
    maxit: Optional[int] = None,
    rho_hint: Optional[float] = None,
) -> SolveResult:
    """
    Iterate ``method`` on ``A x = b`` from ``x0``, by default zero

    Stops as :py:attr:`SolveStatus.CONVERGED` once an update is at most
    ``tol`` in the infinity norm, and as :py:attr:`SolveStatus.DIVERGED` once
    an iterate exceeds ``1e12 (1 + ||b||)`` or stops being finite.

    :param rho_hint: spectral radius used to size the default ``maxit``
    :raises ZeroDiagonal: if some diagonal entry of ``a`` is zero
    :raises DimensionMismatch: if ``b`` or ``x0`` do not match ``a``
    """
    a = as_matrix(a)
    n = a.shape[0]
    method = as_method(method)
    check_diagonal(a)
    b = as_vector(b, n)
    x = np.zeros(n, dtype=np.complex128) if x0 is None else as_vector(x0, n)
    if maxit is None:
        maxit = default_maxit(n, rho_hint)
    limit = BLOWUP * (1 + np.linalg.norm(b, np.inf))
    sweep = _sweep(a, b, method)
    history = []
    status = SolveStatus.MAX_ITERATIONS
    for _ in range(maxit):
        updated = sweep(x)
        history.append(float(np.linalg.norm(updated - x, np.inf)))
        x = updated
        if not np.all(np.isfinite(x)) or np.linalg.norm(x, np.inf) > limit:
            status = SolveStatus.DIVERGED
            break
        if history[-1] <= tol:
            status = SolveStatus.CONVERGED
            break
    logger.debug("%s stopped after %d sweeps: %s", method, len(history), status.value)
    with np.errstate(all="ignore"):
        residual = float(np.linalg.norm(a @ x - b, np.inf))
    return SolveResult(freeze(x), len(history), tuple(history), status, residual)


def preconditioned_solve(
    a,
    b,
    p: Preconditioner,
    method: Union[IterationMethod, str],
    x0=None,
    tol: float = DEFAULT_TOL,
    maxit: Optional[int] = None,
    rho_hint: Optional[float] = None,
) -> SolveResult:
    """Iterate on ``P A x = P b``, reporting the residual of ``A x = b``"""
    a = as_matrix(a)
    b = as_vector(b, a.shape[0])
    result = solve(p.apply(a), p.matrix @ b, method, x0, tol, maxit, rho_hint)
    with np.errstate(all="ignore"):
        residual = float(np.linalg.norm(a @ result.x - b, np.inf))
    return replace(result, residual=residual)

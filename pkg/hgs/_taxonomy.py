"""
Matrix classes governing point iterations

Everything in here is phase blind except :py:func:`is_hpd`: the comparison
matrix ``mu(A)`` keeps only the moduli of ``A``, with the off-diagonal ones
negated.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla

from ._config import HERMITIAN_TOL, M_TOL, PERRON_SHIFT, PERRON_TOL, ROW_TOL
from ._errors import NotIrreducible
from ._graph import frobenius_normal_form, is_irreducible
from ._linalg import eigenvalues, zero_diagonal_index
from ._matrix import ComplexMatrix, IndexSet, as_matrix, freeze

logger = logging.getLogger(__name__)

_MAX_SQUARINGS = 64


class Dominance(enum.Enum):
    STRICTLY_DD = "strictly diagonally dominant"
    IRREDUCIBLY_DD = "irreducibly diagonally dominant"
    NONSTRICT_DD = "nonstrictly diagonally dominant"
    DIAGONALLY_EQUIPOTENT = "diagonally equipotent"
    NOT_DD = "not diagonally dominant"


class MTag(enum.Enum):
    NOT_Z = "not a Z-matrix"
    NONSINGULAR_M = "nonsingular M-matrix"
    SINGULAR_M = "singular M-matrix"
    NOT_M = "not an M-matrix"


class HClass(enum.Enum):
    INVERTIBLE = "invertible"
    SINGULAR = "singular"
    MIXED = "mixed"
    NOT_H = "not an H-matrix"

    @property
    def is_h(self) -> bool:
        return self is not HClass.NOT_H


@dataclass(frozen=True)
class DominanceClass:
    tag: Dominance
    #: rows where dominance holds with equality
    equality_rows: IndexSet


@dataclass(frozen=True)
class MClass:
    """
    M-matrix verdict for ``Z = s I - B``

    ``s`` is the largest diagonal entry of ``Z`` and ``rho_b`` the spectral
    radius of ``B``; both are reported as ``0`` for :py:attr:`MTag.NOT_Z`.
    """

    tag: MTag
    s: float
    rho_b: float


@dataclass(frozen=True, eq=False)
class GDScaling:
    """
    Positive weights ``w`` with ``|a_ii| w_i >= sum_j!=i |a_ij| w_j`` per row

    When ``equipotent`` every row holds with equality. Weights are scaled to a
    maximum of ``1``.
    """

    exists: bool
    weights: Optional[np.ndarray]
    equipotent: bool


@dataclass(frozen=True, eq=False)
class Classification:
    dominance: DominanceClass
    m_class: MClass
    h_class: HClass
    gd_scaling: GDScaling
    irreducible: bool
    hpd: bool

    @property
    def gde(self) -> bool:
        return self.gd_scaling.equipotent


def comparison_matrix(a) -> np.ndarray:
    """Real matrix with ``|a_ii|`` on the diagonal and ``-|a_ij|`` off it"""
    a = as_matrix(a)
    mu = -np.abs(a)
    np.fill_diagonal(mu, np.abs(np.diag(a)))
    return freeze(mu)


def _row_parts(a: ComplexMatrix) -> Tuple[np.ndarray, np.ndarray]:
    moduli = np.abs(a)
    diagonal = np.diag(moduli).copy()
    np.fill_diagonal(moduli, 0.0)
    return diagonal, moduli.sum(axis=1)


def dominance_class(a) -> DominanceClass:
    a = as_matrix(a)
    diagonal, off = _row_parts(a)
    tolerance = ROW_TOL * (diagonal + off)
    equal = np.abs(diagonal - off) <= tolerance
    strict = (diagonal > off) & ~equal
    rows = tuple(int(i) for i in np.flatnonzero(equal))
    if np.any(~equal & ~strict):
        tag = Dominance.NOT_DD
    elif equal.all():
        tag = Dominance.DIAGONALLY_EQUIPOTENT
    elif strict.all():
        tag = Dominance.STRICTLY_DD
    elif is_irreducible(a):
        tag = Dominance.IRREDUCIBLY_DD
    else:
        tag = Dominance.NONSTRICT_DD
    return DominanceClass(tag, rows)


def _perron_root(b: np.ndarray) -> float:
    """Spectral radius of a nonnegative matrix, blockwise over its normal form"""
    form = frobenius_normal_form(b)
    radius = 0.0
    for block in form.block_matrices:
        if block.shape[0] == 1:
            radius = max(radius, abs(block[0, 0]))
        else:
            radius = max(radius, eigenvalues(block).spectral_radius)
    return float(radius)


def classify_m(z) -> MClass:
    z = as_matrix(z)
    real = z.real
    off = real.copy()
    np.fill_diagonal(off, 0.0)
    if np.any(z.imag != 0) or np.any(off > 0):
        return MClass(MTag.NOT_Z, 0.0, 0.0)
    n = z.shape[0]
    s = float(np.max(np.diag(real)))
    rho_b = _perron_root(s * np.eye(n) - real)
    tolerance = M_TOL * max(s, 1.0)
    if rho_b < s - tolerance:
        tag = MTag.NONSINGULAR_M
    elif abs(rho_b - s) <= tolerance:
        tag = MTag.SINGULAR_M
    else:
        tag = MTag.NOT_M
    return MClass(tag, s, rho_b)


def classify_h(a) -> HClass:
    a = as_matrix(a)
    tag = classify_m(comparison_matrix(a)).tag
    if tag is MTag.NONSINGULAR_M:
        return HClass.INVERTIBLE
    if tag is MTag.SINGULAR_M:
        if zero_diagonal_index(a) is not None:
            return HClass.SINGULAR
        return HClass.MIXED
    return HClass.NOT_H


def perron_vector(b: np.ndarray, shift: float) -> np.ndarray:
    """
    Perron vector of an irreducible nonnegative matrix ``b``

    Power iteration on ``b + shift * I``, which is primitive for any positive
    shift. The iterated matrix is squared between steps; products of
    nonnegative matrices suffer no cancellation. The result is scaled to a
    maximum entry of ``1``.
    """
    n = b.shape[0]
    power = np.asarray(b, dtype=float) + shift * np.eye(n)
    vector = np.ones(n)
    for _ in range(_MAX_SQUARINGS):
        candidate = power @ vector
        candidate /= candidate.max()
        if np.max(np.abs(candidate - vector)) <= PERRON_TOL:
            return candidate
        vector = candidate
        power = power @ power
        power /= power.max()
    logger.warning("Perron iteration stopped after %d squarings", _MAX_SQUARINGS)
    return vector


def _row_check(mu: np.ndarray, weights: np.ndarray) -> Tuple[bool, bool]:
    """Whether ``mu @ weights`` is nonnegative, and zero, row by row"""
    residual = mu @ weights
    tolerance = ROW_TOL * (np.abs(mu) @ weights)
    return (
        bool(np.all(residual >= -tolerance)),
        bool(np.all(np.abs(residual) <= tolerance)),
    )


def _block_weights(
    block: ComplexMatrix, coupling: np.ndarray, equality: bool
) -> Optional[np.ndarray]:
    mu = comparison_matrix(block)
    coupled = bool(np.any(coupling > 0))
    if block.shape[0] == 1:
        diagonal, load = mu[0, 0], coupling[0]
        if diagonal == 0:
            return None if coupled else np.ones(1)
        if equality:
            return np.array([load / diagonal]) if coupled else None
        return np.array([load / diagonal + 1.0])
    s = float(np.max(np.diag(mu)))
    if s <= 0:
        return None
    vector = perron_vector(s * np.eye(block.shape[0]) - mu, PERRON_SHIFT * s)
    dominant, equipotent = _row_check(mu, vector)
    if not coupled:
        if equality:
            return vector if equipotent else None
        return vector if dominant else None
    # an equipotent block has no slack left for rows coupled to later blocks
    if equipotent or not dominant:
        return None
    solved = sla.solve(mu, coupling)
    if np.any(solved <= 0):
        return None
    return solved if equality else solved + vector


def _scaling_weights(a: ComplexMatrix, equality: bool) -> Optional[np.ndarray]:
    n = a.shape[0]
    moduli = np.abs(a)
    weights = np.zeros(n)
    assigned = np.zeros(n, dtype=bool)
    form = frobenius_normal_form(a)
    for block, matrix in zip(reversed(form.blocks), reversed(form.block_matrices)):
        rows = list(block)
        later = np.flatnonzero(assigned)
        coupling = moduli[np.ix_(rows, later)] @ weights[later]
        block_weights = _block_weights(matrix, coupling, equality)
        if block_weights is None:
            logger.debug(
                "no %s weights for block %s",
                "equipotent" if equality else "dominant",
                block,
            )
            return None
        weights[rows] = block_weights
        assigned[rows] = True
    weights /= weights.max()
    dominant, equipotent = _row_check(comparison_matrix(a), weights)
    if not (equipotent if equality else dominant):
        return None
    return freeze(weights)


def gd_scaling(a) -> GDScaling:
    """
    Weights making ``a`` generalized diagonally dominant, if there are any

    For irreducible ``a`` the weights are the Perron vector ``v`` of
    ``B = s I - mu(a)``: ``a`` is generalized diagonally dominant iff
    ``mu(a) v >= 0`` and equipotent iff ``mu(a) v = 0``. Reducible matrices
    are scaled block by block along their Frobenius normal form, last block
    first, with each block absorbing its coupling to the blocks after it.
    Diagonally dominant matrices that are not equipotent keep unit weights.
    """
    a = as_matrix(a)
    weights = _scaling_weights(a, equality=True)
    if weights is not None:
        return GDScaling(True, weights, True)
    if dominance_class(a).tag is not Dominance.NOT_DD:
        return GDScaling(True, freeze(np.ones(a.shape[0])), False)
    weights = _scaling_weights(a, equality=False)
    return GDScaling(weights is not None, weights, False)


def is_gde_block(r) -> bool:
    r = as_matrix(r)
    if not is_irreducible(r):
        raise NotIrreducible("generalized equipotence is decided on irreducible blocks")
    return gd_scaling(r).equipotent


def is_hpd(a) -> bool:
    a = as_matrix(a)
    adjoint = a.conj().T
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.max(np.abs(a - adjoint)) > HERMITIAN_TOL * scale:
        return False
    return bool(sla.eigvalsh((a + adjoint) / 2)[0] > 0)


def sample_equimodular(a, seed: int) -> ComplexMatrix:
    """
    Matrix with the moduli of ``a`` and uniformly random phases

    Moduli, and so the comparison matrix, agree with those of ``a`` up to
    rounding: relative differences stay within a few units in the last place.
    Zero entries stay exactly zero.
    """
    a = as_matrix(a)
    rng = np.random.default_rng(seed)
    phasors = np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=a.shape))
    phasors /= np.abs(phasors)
    return freeze(np.abs(a) * phasors)


def classify(a) -> Classification:
    a = as_matrix(a)
    m_class = classify_m(comparison_matrix(a))
    classification = Classification(
        dominance=dominance_class(a),
        m_class=m_class,
        h_class=classify_h(a),
        gd_scaling=gd_scaling(a),
        irreducible=is_irreducible(a),
        hpd=is_hpd(a),
    )
    logger.debug(
        "classified order %d: %s, %s",
        a.shape[0],
        classification.dominance.tag.value,
        classification.h_class.value,
    )
    return classification

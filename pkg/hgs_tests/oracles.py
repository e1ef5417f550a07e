"""
Independent reference computations used to cross-check :py:mod:`hgs`

None of these reuse the algorithms under test: eigenvalues come from the
characteristic polynomial, ray membership from the pairwise and triple
phase conditions on dense matrices, and generalized equipotence from a
linear program.
"""
import itertools
from typing import Optional, Tuple

import numpy as np
import scipy.optimize

from hgs._ray import RayFamily, wrap

PHASE_TOL = 1e-7


def characteristic_polynomial(m) -> np.ndarray:
    """Coefficients of ``det(x I - m)``, highest power first, by Faddeev-LeVerrier"""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    coefficients = np.zeros(n + 1, dtype=np.complex128)
    coefficients[0] = 1
    work = np.zeros_like(m)
    identity = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        work = m @ work + coefficients[k - 1] * identity
        coefficients[k] = -np.trace(m @ work) / k
    return coefficients


def polynomial_eigenvalues(m) -> np.ndarray:
    return np.roots(characteristic_polynomial(m))


def match_distance(computed, expected) -> float:
    """Largest distance from an expected value to its nearest computed one"""
    computed = np.asarray(computed)
    return max(float(np.min(np.abs(computed - value))) for value in expected)


def _close(angle: float) -> bool:
    return abs(float(wrap(angle))) <= PHASE_TOL


def _cyclic(r: int, s: int, t: int) -> bool:
    return r < s < t or s < t < r or t < r < s


def _pair_and_triples(chi, family: RayFamily, angle: float) -> bool:
    n = chi.shape[0]
    for r, s in itertools.permutations(range(n), 2):
        pair = chi[r, s] + chi[s, r] - (angle if family is not RayFamily.THETA else 0)
        if not _close(pair):
            return False
    for r, s, t in itertools.permutations(range(n), 3):
        if family is RayFamily.THETA:
            if not _close(chi[r, s] - chi[r, t] - chi[t, s] - np.pi):
                return False
            if not _close(chi[s, r] - chi[t, r] - chi[s, t] - np.pi):
                return False
            continue
        rotated = _cyclic(r, s, t) == (family is RayFamily.PHI)
        shift = angle if rotated else 0.0
        if not _close(chi[r, s] - chi[r, t] - chi[t, s] + shift - np.pi):
            return False
    return True


def triple_condition_member(a, family: RayFamily) -> Tuple[bool, Optional[float]]:
    """
    Ray class membership of a dense matrix by the pairwise and triple phase
    conditions, with the family angle when it is a member
    """
    a = np.asarray(a, dtype=np.complex128)
    if np.any(a == 0):
        raise ValueError("the triple conditions need a dense matrix")
    phases = np.angle(a)
    diagonal = np.diag(phases)
    if family is RayFamily.THETA:
        if not all(_close(d - diagonal[0]) for d in diagonal):
            return False, None
        half = (phases[0, 1] + phases[1, 0]) / 2
        for eta in (half, half + np.pi):
            chi = phases - eta
            if _pair_and_triples(chi, family, 0.0):
                return True, float(np.mod(diagonal[0] - eta, 2 * np.pi))
        return False, None
    if not all(_close(d - diagonal[0]) for d in diagonal):
        return False, None
    chi = phases - diagonal[0]
    np.fill_diagonal(chi, 0.0)
    angle = 0.0 if family is RayFamily.ZERO else float(
        np.mod(chi[0, 1] + chi[1, 0], 2 * np.pi)
    )
    search = RayFamily.PSI if family is RayFamily.ZERO else family
    if _pair_and_triples(chi, search, angle):
        return True, angle
    return False, None


def gde_feasible(a) -> bool:
    """Whether some ``w >= 1`` solves ``mu(a) w = 0``"""
    moduli = np.abs(np.asarray(a, dtype=np.complex128))
    mu = -moduli
    np.fill_diagonal(mu, np.diag(moduli))
    n = mu.shape[0]
    result = scipy.optimize.linprog(
        np.zeros(n),
        A_eq=mu,
        b_eq=np.zeros(n),
        bounds=[(1, None)] * n,
        method="highs",
    )
    return result.status == 0


def gd_feasible(a) -> bool:
    """Whether some ``w >= 1`` satisfies ``mu(a) w >= 0``"""
    moduli = np.abs(np.asarray(a, dtype=np.complex128))
    mu = -moduli
    np.fill_diagonal(mu, np.diag(moduli))
    n = mu.shape[0]
    result = scipy.optimize.linprog(
        np.zeros(n),
        A_ub=-mu,
        b_ub=np.zeros(n),
        bounds=[(1, None)] * n,
        method="highs",
    )
    return result.status == 0

"""
Ray pattern classes by unitary diagonal similarity

A matrix belongs to a ray class when a unitary diagonal similarity
``D^-1 M D`` with ``D = diag(exp(i phi))`` brings it to a canonical form in
which every off-diagonal entry is ``-exp(i eta) |m_rs|``, possibly rotated by
the family angle:

* ``PSI`` rotates the upper entries by ``psi``
* ``PHI`` rotates the lower entries by ``phi``
* ``ZERO`` rotates nothing
* ``THETA`` rotates the diagonal ``e^(i eta)|d|`` by ``theta``

Every nonzero off-diagonal entry ``m_rs`` thus yields one linear constraint on
the phases modulo ``2 pi``. The constraints are propagated along a spanning
forest of the entry graph, leaving one residual per entry that is affine in
the family angle.
"""
import enum
import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from ._config import RAY_TOL
from ._errors import BadAngle
from ._matrix import ComplexMatrix, as_matrix, freeze

logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi


class RayFamily(enum.Enum):
    THETA = "theta"
    PSI = "psi"
    PHI = "phi"
    ZERO = "zero"


class Free(object):
    """Marker for a family angle that any value satisfies"""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FREE"

    def __reduce__(self):
        return (Free, ())


FREE = Free()


def wrap(angle):
    """Reduce ``angle`` to ``(-pi, pi]``"""
    return np.pi - np.mod(np.pi - angle, TWO_PI)


def wrap_positive(angle):
    """Reduce ``angle`` to ``[0, 2 pi)``"""
    reduced = np.mod(angle, TWO_PI)
    return np.where(reduced >= TWO_PI, 0.0, reduced)


@dataclass(frozen=True, eq=False)
class RayVerdict:
    """
    Outcome of :py:func:`ray_test`

    :param angle: the family angle in ``[0, 2 pi)``, :py:data:`FREE` if any
        angle is admissible, or :py:data:`None` for non-members
    :param phases: arguments ``phi_r`` of the certifying similarity
    :param eta: global phase of the canonical form
    :param angle_candidates: all admissible angles when there are several
    :param violations: ``(r, s, residual)`` of every violated constraint,
        largest residual first; ``r == s`` marks a diagonal phase
    """

    member: bool
    family: RayFamily
    angle: Union[float, Free, None]
    phases: np.ndarray
    eta: float
    angle_candidates: Tuple[float, ...] = ()
    violations: Tuple[Tuple[int, int, float], ...] = ()

    @property
    def max_violation(self) -> float:
        return max((abs(v[2]) for v in self.violations), default=0.0)

    def similarity(self, m) -> ComplexMatrix:
        """``D^-1 m D`` for the certifying ``D``"""
        m = as_matrix(m)
        d = np.exp(1j * self.phases)
        return m * d[None, :] / d[:, None]

    def canonical(self, m) -> ComplexMatrix:
        """The canonical form of the family with the moduli of ``m``"""
        m = as_matrix(m)
        angle = 0.0 if not isinstance(self.angle, float) else self.angle
        moduli = np.abs(m)
        lower, upper = np.tril(moduli, -1), np.triu(moduli, 1)
        diagonal = np.diag(np.diag(moduli)).astype(np.complex128)
        rotation = np.exp(1j * angle)
        if self.family is RayFamily.PSI:
            form = diagonal - lower - rotation * upper
        elif self.family is RayFamily.PHI:
            form = diagonal - rotation * lower - upper
        elif self.family is RayFamily.ZERO:
            form = diagonal - lower - upper
        else:
            form = rotation * diagonal - lower - upper
        return np.exp(1j * self.eta) * form

    def canonical_deviation(self, m) -> float:
        """Largest entrywise distance between ``D^-1 m D`` and the canonical form"""
        return float(np.max(np.abs(self.similarity(m) - self.canonical(m))))


def as_family(family: Union[RayFamily, str]) -> RayFamily:
    if isinstance(family, RayFamily):
        return family
    return RayFamily(family.strip().lower())


def _coefficient(family: RayFamily, r: int, s: int) -> int:
    if family is RayFamily.THETA:
        return 1
    if family is RayFamily.PSI:
        return int(r < s)
    if family is RayFamily.PHI:
        return int(r > s)
    return 0


def _spanning_phases(
    m: ComplexMatrix, entries: List[Tuple[int, int]], family: RayFamily, offset: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Phases ``phi = p + q x`` along a breadth first spanning forest"""
    n = m.shape[0]
    neighbours = [set() for _ in range(n)]
    for r, s in entries:
        neighbours[r].add(s)
        neighbours[s].add(r)
    p = np.zeros(n)
    q = np.zeros(n, dtype=int)
    visited = np.zeros(n, dtype=bool)
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(neighbours[u]):
                if visited[v]:
                    continue
                visited[v] = True
                if m[u, v] != 0:
                    p[v] = wrap(p[u] + offset - np.angle(m[u, v]))
                    q[v] = q[u] + _coefficient(family, u, v)
                else:
                    p[v] = wrap(p[u] + np.angle(m[v, u]) - offset)
                    q[v] = q[u] - _coefficient(family, v, u)
                queue.append(v)
    return p, q


def ray_test(m, family: Union[RayFamily, str], tol: float = RAY_TOL) -> RayVerdict:
    """
    Decide membership of ``m`` in the ray class ``family``

    The common diagonal phase fixes ``eta`` (``0`` for a zero diagonal); for
    :py:attr:`RayFamily.THETA` it is split into ``eta`` and ``theta``
    instead. Each off-diagonal constraint reduces to ``c + k x = 0`` modulo
    ``2 pi`` for the unknown family angle ``x``; the constraint with the
    smallest nonzero ``|k|`` enumerates the candidate angles, which are then
    checked against all other constraints. If no constraint involves the
    angle it is :py:data:`FREE`.
    """
    m = as_matrix(m)
    family = as_family(family)
    diagonal = np.diag(m)
    supported = np.flatnonzero(diagonal != 0)
    eta = float(np.angle(diagonal[supported[0]])) if supported.size else 0.0
    violations = []
    for r in supported:
        residual = float(wrap(np.angle(diagonal[r]) - eta))
        if abs(residual) > tol:
            violations.append((int(r), int(r), residual))

    offset = np.pi + (0.0 if family is RayFamily.THETA else eta)
    entries = [(int(r), int(s)) for r, s in zip(*np.nonzero(m)) if r != s]
    p, q = _spanning_phases(m, entries, family, offset)
    constants = np.array(
        [np.angle(m[r, s]) + p[s] - p[r] - offset for r, s in entries]
    )
    slopes = np.array(
        [q[s] - q[r] - _coefficient(family, r, s) for r, s in entries], dtype=int
    )

    def residuals(x: float) -> np.ndarray:
        return wrap(constants + slopes * x)

    free = family is not RayFamily.ZERO and not np.any(slopes)
    admissible = True
    if family is RayFamily.ZERO or free:
        candidates = [0.0]
    else:
        pivot = int(np.argmin(np.where(slopes != 0, np.abs(slopes), np.iinfo(int).max)))
        k = int(slopes[pivot])
        raw = [
            float(wrap_positive((-constants[pivot] + TWO_PI * j) / k))
            for j in range(abs(k))
        ]
        worst = [
            float(np.max(np.abs(residuals(x)))) if entries else 0.0 for x in raw
        ]
        candidates = sorted(x for x, w in zip(raw, worst) if w <= tol)
        if not candidates:
            candidates = [raw[int(np.argmin(worst))]]
            logger.debug("%s: no admissible angle among %d", family.value, len(raw))
            admissible = False
    x = candidates[0]
    if entries:
        edge_residuals = residuals(x)
        for (r, s), residual in zip(entries, edge_residuals):
            if abs(residual) > tol:
                violations.append((r, s, float(residual)))
    violations.sort(key=lambda item: -abs(item[2]))
    member = admissible and not violations

    if family is RayFamily.THETA:
        thetas = sorted(float(wrap_positive(eta - c)) for c in candidates)
        angle_candidates = tuple(thetas)
        angle = thetas[0]
        x = float(wrap_positive(eta - angle))
        reported_eta = x
    else:
        angle_candidates = tuple(candidates)
        angle = candidates[0]
        reported_eta = eta
    if free:
        angle, angle_candidates = FREE, ()
    phases = freeze(wrap_positive(p + q * x))
    if not member:
        angle, angle_candidates = None, ()
    return RayVerdict(
        member=member,
        family=family,
        angle=angle,
        phases=phases,
        eta=reported_eta,
        angle_candidates=angle_candidates if len(angle_candidates) > 1 else (),
        violations=tuple(violations),
    )


def construct_ray(
    family: Union[RayFamily, str],
    n: int,
    angle: float,
    moduli_seed: int,
    phase_seed: int,
    equipotent: bool = True,
    density: float = 0.3,
) -> ComplexMatrix:
    """
    Unit diagonal member of the ray class ``family`` with the given ``angle``

    The pattern contains both off-diagonals and the entry ``(2, 0)``, so it is
    irreducible and every determined angle is unique for ``n >= 3``; further
    entries are added with probability ``density``. With ``equipotent`` the
    off-diagonal moduli of every row sum to ``1``. The canonical form is
    conjugated by a random unitary diagonal drawn from ``phase_seed``.

    :raises BadAngle: if ``angle`` is outside ``[0, 2 pi)``, or nonzero for
        :py:attr:`RayFamily.ZERO`
    """
    family = as_family(family)
    if n < 2:
        raise ValueError(f"ray constructions need order at least 2, got {n}")
    if not (np.isfinite(angle) and 0 <= angle < TWO_PI):
        raise BadAngle(f"angle {angle} outside [0, 2 pi)")
    if family is RayFamily.ZERO and angle != 0:
        raise BadAngle("zero-ray members have angle 0")
    rng = np.random.default_rng(moduli_seed)
    pattern = rng.random((n, n)) < density
    band = np.arange(n - 1)
    pattern[band, band + 1] = True
    pattern[band + 1, band] = True
    if n >= 3:
        pattern[2, 0] = True
    np.fill_diagonal(pattern, False)
    moduli = np.where(pattern, rng.uniform(0.2, 1.0, size=(n, n)), 0.0)
    if equipotent:
        moduli /= moduli.sum(axis=1, keepdims=True)
    lower, upper = np.tril(moduli, -1), np.triu(moduli, 1)
    rotation = np.exp(1j * angle)
    identity = np.eye(n, dtype=np.complex128)
    if family is RayFamily.PSI:
        canonical = identity - lower - rotation * upper
    elif family is RayFamily.PHI:
        canonical = identity - rotation * lower - upper
    elif family is RayFamily.ZERO:
        canonical = identity - lower - upper
    else:
        canonical = identity - np.conj(rotation) * (lower + upper)
    d = np.exp(1j * np.random.default_rng(phase_seed).uniform(0.0, TWO_PI, size=n))
    return freeze(canonical * d[:, None] / d[None, :])


def ray_family_angle(verdict: RayVerdict) -> Optional[float]:
    """The determined angle of a member, :py:data:`None` otherwise"""
    if verdict.member and isinstance(verdict.angle, float):
        return verdict.angle
    return None

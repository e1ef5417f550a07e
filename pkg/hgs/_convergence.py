"""
Convergence verdicts for Gauss-Seidel iterations

:py:func:`theorem_verdict` decides convergence from the structure of the
matrix alone, walking a fixed chain of rules; :py:func:`numerical_verdict`
decides it from the computed spectral radius. :py:func:`analyze` runs both
and records whether they agree.
"""
import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, NamedTuple, Optional, Tuple, Union

import numpy as np

from ._config import UNIT_RHO_TOL
from ._errors import NoConvergence, ZeroDiagonal
from ._graph import FrobeniusForm, frobenius_normal_form
from ._linalg import (
    IterationMethod,
    as_method,
    eigenvalues,
    iteration_matrix,
    zero_diagonal_index,
)
from ._matrix import ComplexMatrix, IndexSet, as_matrix
from ._ray import RayFamily, ray_family_angle, ray_test
from ._taxonomy import Classification, Dominance, HClass, classify, gd_scaling

logger = logging.getLogger(__name__)


class Status(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Rule:
    identifier: str
    citation: str


RULES = {
    rule.identifier: rule
    for rule in (
        Rule(
            "zero-diagonal",
            "a zero diagonal entry leaves the iteration matrix undefined",
        ),
        Rule(
            "hermitian-positive-definite",
            "Gauss-Seidel iterations converge for Hermitian positive definite"
            " matrices",
        ),
        Rule(
            "strict-or-irreducible-dominance",
            "Gauss-Seidel iterations converge for strictly or irreducibly"
            " diagonally dominant matrices",
        ),
        Rule(
            "invertible-h-matrix",
            "Gauss-Seidel iterations converge for invertible H-matrices",
        ),
        Rule(
            "frobenius-blocks",
            "the spectral radius is the largest one over the irreducible"
            " diagonal blocks of the Frobenius normal form",
        ),
        Rule(
            "non-gde-block",
            "an irreducible block that is not generalized diagonally equipotent"
            " is an invertible H-matrix",
        ),
        Rule(
            "gde-2x2-block",
            "an irreducible generalized diagonally equipotent 2 x 2 block has"
            " spectral radius |a12 a21| / |a11 a22| = 1 for all three methods",
        ),
        Rule(
            "psi-ray-block",
            "forward Gauss-Seidel diverges on an irreducible equipotent block iff"
            " its unit diagonal form is in a psi-ray class",
        ),
        Rule(
            "phi-ray-block",
            "backward Gauss-Seidel diverges on an irreducible equipotent block iff"
            " its unit diagonal form is in a phi-ray class",
        ),
        Rule(
            "zero-ray-block",
            "symmetric Gauss-Seidel diverges on an irreducible equipotent block"
            " iff its unit diagonal form is in the zero-ray class, that is iff"
            " the block is singular",
        ),
        Rule(
            "block-not-gd",
            "irreducible block without generalized diagonal dominance",
        ),
        Rule(
            "not-h-matrix",
            "no convergence theorem covers matrices outside the H-matrices",
        ),
        Rule(
            "numerical-only",
            "Jacobi convergence is decided from the computed spectral radius only",
        ),
    )
}

_RAY_FAMILIES = {
    IterationMethod.FGS: RayFamily.PSI,
    IterationMethod.BGS: RayFamily.PHI,
    IterationMethod.SGS: RayFamily.ZERO,
}


@dataclass(frozen=True)
class Witness:
    """Irreducible block on which the iteration diverges"""

    block: IndexSet
    rho: float
    family: Optional[RayFamily] = None
    angle: Optional[float] = None


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule_chain: Tuple[Rule, ...]
    witness: Optional[Witness] = None


class NumericalVerdict(NamedTuple):
    rho: float
    converges: bool


@dataclass(frozen=True)
class MethodReport:
    verdict: Verdict
    rho: Optional[float]
    agree: bool
    diagnostic: Optional[str] = None


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    methods: Dict[IterationMethod, MethodReport]
    classification: Classification
    fnf: FrobeniusForm

    @property
    def agree(self) -> bool:
        return all(report.agree for report in self.methods.values())


def _verdict(status: Status, *identifiers: str, witness: Witness = None) -> Verdict:
    return Verdict(status, tuple(RULES[i] for i in identifiers), witness)


def numerical_verdict(a, method: Union[IterationMethod, str]) -> NumericalVerdict:
    """
    Spectral radius of the iteration matrix, converging iff ``rho < 1 - 1e-8``

    :raises ZeroDiagonal: if some diagonal entry of ``a`` is zero
    """
    rho = eigenvalues(iteration_matrix(a, method)).spectral_radius
    return NumericalVerdict(rho, rho < 1 - UNIT_RHO_TOL)


def theorem_verdict(
    a,
    method: Union[IterationMethod, str],
    classification: Optional[Classification] = None,
) -> Verdict:
    """
    Convergence of ``method`` on ``a`` by structure alone

    The rules are tried in order and the first one that applies decides:

    1. a zero diagonal entry gives :py:attr:`Status.UNKNOWN`
    2. Hermitian positive definite matrices converge
    3. strictly or irreducibly diagonally dominant matrices converge
    4. invertible H-matrices converge
    5. mixed H-matrices are decided block by block on their Frobenius
       normal form: blocks that are not generalized diagonally equipotent
       converge, equipotent ``2 x 2`` blocks diverge, and larger equipotent
       blocks diverge iff their rescaled unit diagonal form lies in the ray
       class of the method (psi for forward, phi for backward, zero for
       symmetric Gauss-Seidel)
    6. anything else is :py:attr:`Status.UNKNOWN`

    Jacobi iterations always get :py:attr:`Status.UNKNOWN`.
    """
    a = as_matrix(a)
    method = as_method(method)
    if method is IterationMethod.JACOBI:
        return _verdict(Status.UNKNOWN, "numerical-only")
    if zero_diagonal_index(a) is not None:
        return _verdict(Status.UNKNOWN, "zero-diagonal")
    if classification is None:
        classification = classify(a)
    if classification.hpd:
        return _verdict(Status.CONVERGES, "hermitian-positive-definite")
    if classification.dominance.tag in (
        Dominance.STRICTLY_DD,
        Dominance.IRREDUCIBLY_DD,
    ):
        return _verdict(Status.CONVERGES, "strict-or-irreducible-dominance")
    if classification.h_class is HClass.INVERTIBLE:
        return _verdict(Status.CONVERGES, "invertible-h-matrix")
    if classification.h_class is HClass.MIXED:
        return _blockwise_verdict(a, method)
    return _verdict(Status.UNKNOWN, "not-h-matrix")


def _blockwise_verdict(a: ComplexMatrix, method: IterationMethod) -> Verdict:
    form = frobenius_normal_form(a)
    chain = ["frobenius-blocks"]
    witness = None
    unknown = False
    for block, matrix in zip(form.blocks, form.block_matrices):
        status, identifier, block_witness = _block_verdict(block, matrix, method)
        logger.debug("%s on block %s: %s (%s)", method, block, status.value, identifier)
        if identifier not in chain:
            chain.append(identifier)
        if status is Status.DIVERGES and witness is None:
            witness = block_witness
        unknown = unknown or status is Status.UNKNOWN
    if witness is not None:
        return _verdict(Status.DIVERGES, *chain, witness=witness)
    return _verdict(Status.UNKNOWN if unknown else Status.CONVERGES, *chain)


def _block_verdict(block: IndexSet, r: ComplexMatrix, method: IterationMethod):
    if r.shape[0] == 1:
        return Status.CONVERGES, "non-gde-block", None
    scaling = gd_scaling(r)
    if not scaling.exists:
        return Status.UNKNOWN, "block-not-gd", None
    if not scaling.equipotent:
        return Status.CONVERGES, "non-gde-block", None
    if r.shape[0] == 2:
        rho = abs(r[0, 1] * r[1, 0]) / abs(r[0, 0] * r[1, 1])
        return Status.DIVERGES, "gde-2x2-block", Witness(block, float(rho))
    family = _RAY_FAMILIES[method]
    scaled = r * scaling.weights[None, :]
    unit = scaled / np.diag(scaled)[:, None]
    verdict = ray_test(unit, family)
    identifier = f"{family.value}-ray-block"
    if verdict.member:
        witness = Witness(block, 1.0, family, ray_family_angle(verdict))
        return Status.DIVERGES, identifier, witness
    return Status.CONVERGES, identifier, None


def _method_report(
    a: ComplexMatrix, method: IterationMethod, classification: Classification
) -> MethodReport:
    verdict = theorem_verdict(a, method, classification)
    try:
        numeric = numerical_verdict(a, method)
    except ZeroDiagonal as err:
        return MethodReport(verdict, None, True, str(err))
    except NoConvergence as err:
        # an unchecked theorem verdict is not an agreement
        agree = verdict.status is Status.UNKNOWN
        if not agree:
            logger.warning(
                "%s: theorem says %s but rho is unavailable: %s",
                method,
                verdict.status.value,
                err,
            )
        return MethodReport(verdict, None, agree, str(err))
    agree = verdict.status is Status.UNKNOWN or (
        (verdict.status is Status.CONVERGES) == numeric.converges
    )
    if not agree:
        logger.warning(
            "%s: theorem says %s but rho = %.10f",
            method,
            verdict.status.value,
            numeric.rho,
        )
    return MethodReport(verdict, numeric.rho, agree)


def analyze(
    a,
    methods: Optional[Iterable[Union[IterationMethod, str]]] = None,
    max_workers: Optional[int] = None,
) -> ConvergenceReport:
    """
    Classify ``a`` and cross-check theorem and numerical verdicts per method

    Zero diagonals and eigensolver failures are reported per method as a
    diagnostic instead of failing the whole report.
    """
    a = as_matrix(a)
    methods = tuple(
        as_method(m) for m in (methods if methods is not None else IterationMethod)
    )
    classification = classify(a)
    form = frobenius_normal_form(a)

    def report(method: IterationMethod) -> MethodReport:
        return _method_report(a, method, classification)

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(report, methods))
    else:
        reports = [report(method) for method in methods]
    return ConvergenceReport(dict(zip(methods, reports)), classification, form)

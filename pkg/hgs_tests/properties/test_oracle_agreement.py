"""Theorem verdicts against spectral radii on random matrices of every class"""
import numpy as np
import pytest

from hgs import CorpusClass, IterationMethod, Status, numerical_verdict, theorem_verdict
from hgs import classify, random_in_class
from hgs._linalg import GAUSS_SEIDEL

SEEDS = range(200)


def check_agreement(a):
    classification = classify(a)
    for method in GAUSS_SEIDEL:
        verdict = theorem_verdict(a, method, classification)
        numeric = numerical_verdict(a, method)
        if verdict.status is Status.CONVERGES:
            assert numeric.converges, (method, numeric.rho)
        elif verdict.status is Status.DIVERGES:
            assert numeric.rho == pytest.approx(verdict.witness.rho, abs=1e-6)
            assert not numeric.converges


@pytest.mark.parametrize("cls", list(CorpusClass))
def test_random_classes(cls):
    for seed in SEEDS:
        a = random_in_class(cls, 3 + seed % 6, seed)
        check_agreement(a)


@pytest.mark.parametrize("cls", [CorpusClass.SDD, CorpusClass.IDD])
def test_dominant_always_converge(cls):
    for seed in range(50):
        a = random_in_class(cls, 3 + seed % 6, seed)
        for method in GAUSS_SEIDEL:
            assert theorem_verdict(a, method).status is Status.CONVERGES


def test_not_h_is_unknown():
    for seed in range(50):
        a = random_in_class(CorpusClass.NOT_H, 3 + seed % 6, seed)
        for method in GAUSS_SEIDEL:
            assert theorem_verdict(a, method).status is Status.UNKNOWN


@pytest.mark.parametrize("seed", range(30))
def test_scaling_invariance(seed):
    rng = np.random.default_rng(seed)
    a = random_in_class(CorpusClass.MIXED_H, 3 + seed % 5, seed)
    e = rng.uniform(0.1, 10, size=a.shape[0])
    d = np.exp(1j * rng.uniform(0, 2 * np.pi, size=a.shape[0]))
    scaled = np.asarray(a) * e[None, :]
    similar = np.asarray(a) * d[None, :] / d[:, None]
    for method in GAUSS_SEIDEL:
        expected = theorem_verdict(a, method).status
        assert theorem_verdict(scaled, method).status is expected
        assert theorem_verdict(similar, method).status is expected
        rho = numerical_verdict(a, method).rho
        assert numerical_verdict(scaled, method).rho == pytest.approx(rho, abs=1e-7)
        assert numerical_verdict(similar, method).rho == pytest.approx(rho, abs=1e-7)


def test_methods_cover_gauss_seidel():
    assert set(GAUSS_SEIDEL) == set(IterationMethod) - {IterationMethod.JACOBI}

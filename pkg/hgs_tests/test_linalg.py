import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgs import (
    BadIndexSet,
    IterationMethod,
    NoConvergence,
    SingularBlock,
    ZeroDiagonal,
    determinant,
    eigenvalues,
    get,
    iteration_matrix,
    schur_complement,
    spectral_radius,
    split,
)
from hgs._config import eig_sweep_budget
from hgs._matrix import index_set

from .oracles import match_distance


class TestIterationMethod(object):
    def test_parse(self):
        assert IterationMethod.parse("FGS") is IterationMethod.FGS
        assert IterationMethod.parse(" sgs ") is IterationMethod.SGS
        assert IterationMethod.parse("jacobi") is IterationMethod.JACOBI
        assert IterationMethod.parse("j") is IterationMethod.JACOBI
        with pytest.raises(ValueError):
            IterationMethod.parse("sor")

    def test_str(self):
        assert str(IterationMethod.JACOBI) == "J"
        assert str(IterationMethod.BGS) == "BGS"


class TestSplitting(object):
    def test_reassemble(self):
        a = get("ex62")
        splitting = split(a)
        assert np.array_equal(splitting.reassemble(), a)
        assert splitting.diagonal_nonzero
        assert np.all(splitting.L == -np.tril(a, -1))
        assert np.all(splitting.U == -np.triu(a, 1))

    def test_zero_diagonal(self):
        splitting = split([[0, 1], [1, 1]])
        assert not splitting.diagonal_nonzero


class TestIterationMatrix(object):
    def test_jacobi(self):
        h = iteration_matrix([[2, 1], [1, 2]], "j")
        assert np.allclose(h, [[0, -0.5], [-0.5, 0]])

    def test_gauss_seidel(self):
        a = get("ex12A")
        lower, upper = np.tril(a), np.triu(a)
        forward = np.linalg.solve(lower, -np.triu(a, 1))
        backward = np.linalg.solve(upper, -np.tril(a, -1))
        assert np.allclose(iteration_matrix(a, "fgs"), forward)
        assert np.allclose(iteration_matrix(a, "bgs"), backward)
        assert np.allclose(iteration_matrix(a, "sgs"), backward @ forward)

    def test_identity(self):
        for method in IterationMethod:
            assert np.all(iteration_matrix(np.eye(4), method) == 0)

    def test_zero_diagonal(self):
        with pytest.raises(ZeroDiagonal) as info:
            iteration_matrix([[1, 2, 0], [1, 0, 1], [0, 1, 1]], "fgs")
        assert info.value.index == 1

    def test_read_only(self):
        h = iteration_matrix(get("ex11A"), "fgs")
        with pytest.raises(ValueError):
            h[0, 0] = 1


class TestEigenvalues(object):
    def test_diagonal(self):
        spectrum = eigenvalues(np.diag([1, -3, 2j]))
        assert spectrum.spectral_radius == pytest.approx(3)
        assert np.allclose(np.abs(spectrum.eigenvalues), [3, 2, 1])

    def test_single(self):
        spectrum = eigenvalues([[-2 + 1j]])
        assert spectrum.eigenvalues[0] == -2 + 1j
        assert spectrum.residual_bound >= 0

    def test_rotation(self):
        spectrum = eigenvalues([[0, -1], [1, 0]])
        assert spectrum.unit_radius
        assert match_distance(spectrum.eigenvalues, [1j, -1j]) < 1e-12

    def test_ordering(self):
        spectrum = eigenvalues(np.diag([0.5, -2, 2, 1j]))
        moduli = np.abs(spectrum.eigenvalues)
        assert np.all(np.diff(moduli) <= 1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_random(self, seed):
        rng = np.random.default_rng(seed)
        m = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        spectrum = eigenvalues(m)
        expected = np.linalg.eigvals(m)
        assert match_distance(spectrum.eigenvalues, expected) < 1e-8 * np.linalg.norm(m)
        assert spectral_radius(m) == pytest.approx(np.max(np.abs(expected)))

    def test_sweep_budget(self):
        with pytest.raises(NoConvergence) as info:
            eigenvalues([[0, 1, 2], [1, 0, 1], [3, 1, 0]], max_sweeps=0)
        assert info.value.sweeps == 0

    def test_environment_budget(self, monkeypatch):
        monkeypatch.setenv("HGS_EIG_SWEEPS", "5")
        assert eig_sweep_budget(10) == 5
        monkeypatch.setenv("HGS_EIG_SWEEPS", "0")
        with pytest.raises(ValueError):
            eig_sweep_budget(10)
        monkeypatch.setenv("HGS_EIG_SWEEPS", "many")
        with pytest.raises(ValueError):
            eigenvalues(np.eye(2))
        monkeypatch.delenv("HGS_EIG_SWEEPS")
        assert eig_sweep_budget(10) == 300


class TestDeterminant(object):
    def test_values(self):
        assert determinant([[1, 2], [3, 4]]) == pytest.approx(-2)
        assert determinant([[0, 1], [1, 0]]) == pytest.approx(-1)
        assert determinant(np.diag([1j, 2, 3])) == pytest.approx(6j)
        assert determinant(get("ex11A")) == pytest.approx(14)

    def test_singular(self):
        assert determinant([[1, 2], [2, 4]]) == 0
        assert determinant(np.zeros((3, 3))) == 0


class TestSchurComplement(object):
    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 7), st.integers(0, 2**32 - 1), st.data())
    def test_determinant_factorises(self, n, seed, data):
        rng = np.random.default_rng(seed)
        a = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
        a += 2 * n * np.eye(n)
        picked = data.draw(
            st.lists(st.integers(0, n - 1), min_size=1, max_size=n - 1, unique=True)
        )
        alpha = index_set(picked, n, proper=True)
        block = determinant(a[np.ix_(alpha, alpha)])
        product = block * determinant(schur_complement(a, alpha))
        assert abs(product - determinant(a)) <= 1e-10 * abs(determinant(a))

    def test_scalar_pivot(self):
        assert np.allclose(schur_complement([[4, 1], [2, 3]], [0]), [[2.5]])

    def test_block(self):
        a = get("ex62")
        alpha, rest = [2, 3], [0, 1, 4, 5]
        expected = a[np.ix_(rest, rest)] - a[np.ix_(rest, alpha)] @ np.linalg.solve(
            a[np.ix_(alpha, alpha)], a[np.ix_(alpha, rest)]
        )
        assert np.allclose(schur_complement(a, alpha), expected)

    def test_errors(self):
        with pytest.raises(SingularBlock):
            schur_complement([[0, 1], [1, 1]], [0])
        with pytest.raises(BadIndexSet):
            schur_complement(np.eye(2), [0, 1])
        with pytest.raises(BadIndexSet):
            schur_complement(np.eye(2), [])
        with pytest.raises(BadIndexSet):
            schur_complement(np.eye(2), [2])

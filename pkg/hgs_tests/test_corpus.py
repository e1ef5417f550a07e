import numpy as np
import pytest

from hgs import BadClass, BadId, CorpusClass, GenerationFailed, get, random_in_class
from hgs import _corpus
from hgs._corpus import NAMES, as_class, family61, in_class


class TestNamed(object):
    def test_fixed(self):
        assert np.array_equal(get("ex12B"), [[2, -1], [2, 1]])
        assert get("ex62").shape == (6, 6)
        assert np.array_equal(get("ex11B"), get("ex11A").T)

    def test_all_names(self):
        for name in NAMES:
            a = get(name, 5 if name == "family61" else None)
            assert a.dtype == np.complex128
            assert not a.flags.writeable

    def test_family(self):
        a = family61(4)
        assert np.array_equal(
            a,
            [[1, -1, 0, 0], [1, 2, -1, 0], [0, 1, 2, -1], [0, 0, 1, 1]],
        )
        assert np.array_equal(get("family61", 4), a)

    def test_unknown(self):
        with pytest.raises(BadId) as info:
            get("ex99")
        assert "ex99" in str(info.value)
        with pytest.raises(BadId):
            get("family61")
        with pytest.raises(BadId):
            get("family61", 1)


class TestClasses(object):
    def test_parse(self):
        assert as_class("mixed_h") is CorpusClass.MIXED_H
        assert as_class(" SDD ") is CorpusClass.SDD
        assert as_class(CorpusClass.NOT_H) is CorpusClass.NOT_H
        with pytest.raises(BadClass):
            as_class("banded")

    @pytest.mark.parametrize("cls", list(CorpusClass))
    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_random_in_class(self, cls, n):
        a = random_in_class(cls, n, seed=n)
        assert a.shape == (n, n)
        assert in_class(a, cls)

    def test_deterministic(self):
        first = random_in_class("gde-irreducible", 5, 42)
        assert np.array_equal(first, random_in_class("gde-irreducible", 5, 42))
        assert not np.array_equal(first, random_in_class("gde-irreducible", 5, 43))

    def test_errors(self):
        with pytest.raises(ValueError):
            random_in_class("sdd", 1, 0)
        with pytest.raises(BadClass):
            random_in_class("tridiagonal", 4, 0)

    def test_exhausted(self, monkeypatch):
        monkeypatch.setattr(_corpus, "_ATTEMPTS", 0)
        with pytest.raises(GenerationFailed) as err:
            random_in_class("sdd", 4, 7)
        assert isinstance(err.value, RuntimeError)
        assert "seed 7" in str(err.value)

    def test_membership(self):
        assert in_class(get("ex11A"), "de-irreducible")
        assert in_class(get("ex12B"), "gde-irreducible")
        assert not in_class(get("ex12B"), "de-irreducible")
        assert in_class(get("ex62"), "mixed-h")
        assert in_class([[1, 2], [2, 1]], "not-h")
        assert in_class([[3, 1], [1, 3]], "sdd")

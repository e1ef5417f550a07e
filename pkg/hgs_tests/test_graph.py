import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgs import CorpusClass, frobenius_normal_form, get, is_irreducible, random_in_class
from hgs._graph import adjacency, strongly_connected_components


def _reachable(successors, start):
    seen, todo = {start}, [start]
    while todo:
        for w in successors[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


class TestComponents(object):
    def test_adjacency(self):
        a = np.array([[1, 2, 0], [0, 5, 0], [3, 0, 0]], dtype=complex)
        assert adjacency(a) == [(1,), (), (0,)]

    def test_sinks_first(self):
        successors = [(1,), (2,), (1,), (0, 4), ()]
        components = list(strongly_connected_components(successors))
        assert sorted(components) == [(0,), (1, 2), (3,), (4,)]
        position = {c: i for i, c in enumerate(components)}
        assert position[(1, 2)] < position[(0,)] < position[(3,)]
        assert position[(4,)] < position[(3,)]

    def test_long_path(self):
        # deep enough to overflow a recursive implementation
        n = 5000
        successors = [(i + 1,) for i in range(n - 1)] + [()]
        components = list(strongly_connected_components(successors))
        assert components == [(i,) for i in reversed(range(n))]


class TestIrreducible(object):
    @pytest.mark.parametrize("name", ["ex11A", "ex11B", "ex12A", "ex12B"])
    def test_examples(self, name):
        assert is_irreducible(get(name))

    def test_reducible(self):
        assert not is_irreducible(get("ex62"))
        assert not is_irreducible(np.eye(3))
        assert not is_irreducible([[1, 1], [0, 1]])

    def test_scalar(self):
        assert is_irreducible([[3]])
        assert not is_irreducible([[0]])

    def test_family(self):
        assert is_irreducible(get("family61", 50))


class TestFrobeniusNormalForm(object):
    def test_ex62(self):
        form = frobenius_normal_form(get("ex62"))
        assert form.blocks == ((0, 1, 2), (3, 4, 5))
        assert form.block_sizes == (3, 3)
        assert form.permutation == (0, 1, 2, 3, 4, 5)

    def test_irreducible(self):
        a = get("ex12A")
        form = frobenius_normal_form(a)
        assert form.blocks == ((0, 1, 2),)
        assert np.array_equal(form.block_matrices[0], a)

    def test_diagonal(self):
        form = frobenius_normal_form(np.diag([1, 2, 3]))
        assert sorted(form.blocks) == [(0,), (1,), (2,)]

    @pytest.mark.parametrize("seed", range(20))
    def test_block_upper_triangular(self, seed):
        a = np.array(random_in_class("mixed-h", 6, seed))
        a[np.abs(a) < 0.5] = 0
        form = frobenius_normal_form(a)
        permuted = form.permuted(a)
        assert sorted(form.permutation) == list(range(6))
        start = 0
        for block, matrix in zip(form.blocks, form.block_matrices):
            stop = start + len(block)
            assert np.array_equal(permuted[start:stop, start:stop], matrix)
            assert np.all(permuted[stop:, start:stop] == 0)
            assert len(block) == 1 or is_irreducible(matrix)
            start = stop

    @pytest.mark.parametrize("seed", range(10))
    def test_blocks_are_maximal(self, seed):
        rng = np.random.default_rng(seed)
        a = np.where(rng.random((8, 8)) < 0.2, 1.0, 0.0) + np.eye(8)
        successors = adjacency(np.asarray(a, dtype=complex))
        form = frobenius_normal_form(a)
        reach = [_reachable(successors, v) for v in range(8)]
        for block in form.blocks:
            for v in block:
                for w in range(8):
                    mutual = w in reach[v] and v in reach[w]
                    assert mutual == (w in block)


class TestPermutation(object):
    @settings(max_examples=100, deadline=None)
    @given(
        st.sampled_from(list(CorpusClass)),
        st.integers(2, 9),
        st.integers(0, 2**32 - 1),
    )
    def test_blocks_follow_permutation(self, cls, n, seed):
        a = random_in_class(cls, n, seed)
        p = np.random.default_rng(seed).permutation(n)
        b = a[np.ix_(p, p)]
        assert is_irreducible(b) == is_irreducible(a)
        expected = {frozenset(block) for block in frobenius_normal_form(a).blocks}
        moved = {
            frozenset(int(p[i]) for i in block)
            for block in frobenius_normal_form(b).blocks
        }
        assert moved == expected

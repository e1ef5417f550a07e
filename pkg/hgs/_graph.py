"""
Irreducibility and the Frobenius normal form

The digraph of a matrix has an edge ``i -> j`` for every nonzero off-diagonal
entry ``a[i, j]``. Patterns are exact: no entry is ever thresholded here.
"""
import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from ._matrix import ComplexMatrix, IndexSet, as_matrix


def adjacency(a: ComplexMatrix) -> List[Tuple[int, ...]]:
    """Successors of every vertex in increasing order"""
    pattern = a != 0
    np.fill_diagonal(pattern, False)
    return [tuple(int(j) for j in np.flatnonzero(row)) for row in pattern]


def strongly_connected_components(
    successors: Sequence[Sequence[int]],
) -> Iterator[IndexSet]:
    """
    Tarjan's algorithm without recursion

    Components are yielded sinks first: a component is only yielded after all
    components reachable from it.
    """
    counter = itertools.count()
    index = {}
    lowlink = {}
    stack = []
    on_stack = set()
    for root in range(len(successors)):
        if root in index:
            continue
        index[root] = lowlink[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors[root]))]
        while work:
            vertex, pending = work[-1]
            for w in pending:
                if w not in index:
                    index[w] = lowlink[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors[w])))
                    break
                elif w in on_stack:
                    lowlink[vertex] = min(lowlink[vertex], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    lowlink[parent] = min(lowlink[parent], lowlink[vertex])
                if lowlink[vertex] == index[vertex]:
                    component = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        component.append(w)
                        if w == vertex:
                            break
                    yield tuple(sorted(component))


def is_irreducible(a) -> bool:
    """
    Whether the digraph of ``a`` is strongly connected

    A ``1 x 1`` matrix is irreducible iff its single entry is nonzero.
    """
    a = as_matrix(a)
    if a.shape[0] == 1:
        return bool(a[0, 0] != 0)
    components = strongly_connected_components(adjacency(a))
    return len(next(components)) == a.shape[0]


@dataclass(frozen=True, eq=False)
class FrobeniusForm:
    """
    Block upper triangular permutation of a matrix into irreducible blocks

    ``permutation[p]`` is the original index placed at position ``p``, so the
    permuted matrix is ``a[np.ix_(permutation, permutation)]``.
    """

    permutation: Tuple[int, ...]
    blocks: Tuple[IndexSet, ...]
    block_matrices: Tuple[ComplexMatrix, ...]

    def permuted(self, a) -> ComplexMatrix:
        a = as_matrix(a)
        return a[np.ix_(self.permutation, self.permutation)]

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)


def frobenius_normal_form(a) -> FrobeniusForm:
    a = as_matrix(a)
    # sinks first is block lower triangular, so reverse for upper
    blocks = tuple(reversed(list(strongly_connected_components(adjacency(a)))))
    matrices = []
    for block in blocks:
        matrix = a[np.ix_(block, block)]
        matrix.setflags(write=False)
        matrices.append(matrix)
    return FrobeniusForm(
        permutation=tuple(itertools.chain.from_iterable(blocks)),
        blocks=blocks,
        block_matrices=tuple(matrices),
    )

"""Eliminating one column of an irreducible mixed H-matrix makes it invertible"""
from hypothesis import given, settings
from hypothesis import strategies as st

from hgs import (
    CorpusClass,
    HClass,
    IterationMethod,
    classify_h,
    column_eliminator,
    random_in_class,
    schur_preconditioner,
    verify_preconditioned,
)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1))
def test_column_elimination_restores(n, seed):
    a = random_in_class(CorpusClass.GDE_IRREDUCIBLE, n, seed)
    assert classify_h(a) is HClass.MIXED
    for k in range(n):
        p = column_eliminator(a, k)
        assert classify_h(p.apply(a)) is HClass.INVERTIBLE
        report = verify_preconditioned(a, p)
        for method in IterationMethod:
            row = report.rows[method]
            assert row.holds, (k, method, row)
        assert report.holds
        assert not report.findings


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1), st.data())
def test_schur_single_index_matches_column(n, seed, data):
    a = random_in_class(CorpusClass.GDE_IRREDUCIBLE, n, seed)
    k = data.draw(st.integers(0, n - 1))
    by_column = verify_preconditioned(a, column_eliminator(a, k))
    by_block = verify_preconditioned(a, schur_preconditioner(a, [k]))
    assert by_block.h_class is by_column.h_class
    for method in IterationMethod:
        first, second = by_column.rows[method], by_block.rows[method]
        assert abs(first.rho - second.rho) <= 1e-9
        assert second.holds

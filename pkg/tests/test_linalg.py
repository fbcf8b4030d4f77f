from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from dihedral_lie.linalg import (
    ChainComplex, ComplexError, DimensionError, QuotientSpace, SparseMatrix,
    WellDefinednessError, complex_homology_dims, in_span, induced_map, quotient, rank,
)

entries = st.integers(-3, 3)


@st.composite
def dense(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def test_rank_examples():
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseMatrix.identity(5)) == 5
    assert rank(SparseMatrix.zero(3, 4)) == 0


@given(dense())
def test_rank_matches_sympy(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m, "exact") == sympy.Matrix(rows).rank()


@given(dense())
def test_rank_transpose(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == rank(m.transpose())


def test_large_rank_fast_and_exact_agree():
    # big enough to leave the dense path; a rank-deficient block structure
    rows = []
    for i in range(90):
        rows.append({i: Fraction(1), (i + 1) % 90: Fraction(-1)})
    m = SparseMatrix.from_rows(rows, 90)
    assert rank(m, "fast") == rank(m, "exact") == 89


def test_quotient_and_span():
    q = quotient(3, SparseMatrix.from_dense([[1, -1, 0]]))
    assert q.dim == 2
    assert in_span({0: 1, 1: -1}, q)
    assert not in_span({0: 1}, q)
    assert q.coordinates({0: 1}) == q.coordinates({1: 1})


def test_induced_map_rejects_ill_defined():
    src = quotient(2, SparseMatrix.from_dense([[1, -1]]))
    dst = QuotientSpace.free(2)
    with pytest.raises(WellDefinednessError):
        induced_map(SparseMatrix.from_dense([[1, 0], [0, 1]]), src, dst)
    f = induced_map(SparseMatrix.from_dense([[1, 1], [0, 0]]), src, dst)
    assert f.shape == (2, 1)


def test_complex_checks_composition():
    d1 = SparseMatrix.from_dense([[1], [1]])
    d2 = SparseMatrix.from_dense([[1, -1]])
    cx = ChainComplex([1, 2, 1], [d1, d2])
    assert cx.homology() == [0, 0, 0]
    assert cx.euler() == cx.homology_euler() == 0
    with pytest.raises(ComplexError):
        ChainComplex([1, 2, 1], [d1, SparseMatrix.from_dense([[1, 1]])])


def test_complex_homology_dims_on_quotients():
    spaces = [QuotientSpace.free(1), quotient(3, SparseMatrix.from_dense([[0, 0, 1]]))]
    d = SparseMatrix.from_dense([[1], [1], [0]])
    assert complex_homology_dims([d], spaces) == [0, 1]


def test_dimension_errors():
    with pytest.raises(DimensionError):
        SparseMatrix.from_rows([{3: 1}], 2)
    with pytest.raises(DimensionError):
        SparseMatrix.identity(2) @ SparseMatrix.identity(3)

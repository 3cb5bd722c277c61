from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szf.exact import ExactMatrix, exact_det, exact_rank

from helpers import laplace_det, minor_expansion_rank, rref_rank


def test_identity_rank():
    rep = exact_rank(ExactMatrix.identity(3))
    assert rep.rank == 3 and rep.nullity == 0 and rep.kernel_basis == ()


def test_zero_rank():
    rep = exact_rank(ExactMatrix.zeros(4, 4))
    assert rep.rank == 0 and rep.nullity == 4
    assert len(rep.kernel_basis) == 4


def test_rank_simple_dependency():
    a = ExactMatrix.from_rows([[1, 2], [2, 4]])
    rep = exact_rank(a)
    assert rep.rank == 1 and rep.nullity == 1
    (x,) = rep.kernel_basis
    assert a.matvec(x) == (0, 0)


_small_entries = st.integers(-6, 6)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_independent_oracles(rows, cols, data):
    entries = [
        [data.draw(_small_entries) for _ in range(cols)] for _ in range(rows)
    ]
    a = ExactMatrix.from_rows(entries)
    rep = exact_rank(a)
    assert rep.rank == rref_rank(entries)
    assert rep.rank == minor_expansion_rank(entries)
    # kernel basis really is a basis of the kernel
    assert len(rep.kernel_basis) == rep.nullity
    for x in rep.kernel_basis:
        assert all(v == 0 for v in a.matvec(x))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_det_matches_laplace(n, data):
    entries = [[data.draw(_small_entries) for _ in range(n)] for _ in range(n)]
    assert exact_det(ExactMatrix.from_rows(entries)) == laplace_det(entries)


def test_rank_with_fractions():
    a = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert exact_rank(a).rank == 1


def test_rank_transpose_and_scaling_invariance():
    rng = Random(17)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        a = ExactMatrix.from_rows(
            [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
        )
        r = exact_rank(a).rank
        assert exact_rank(a.transpose()).rank == r
        scaled = a.scale_row(rng.randrange(rows), Fraction(rng.choice([1, 2, 3, -1, -5]), 7))
        assert exact_rank(scaled).rank == r


def test_det_requires_square():
    with pytest.raises(ValueError):
        exact_det(ExactMatrix.zeros(2, 3))


def test_text_roundtrip():
    a = ExactMatrix.from_rows([[Fraction(1, 2), -3], [0, Fraction(7, 5)]])
    text = a.to_text()
    assert text == "1/2\t-3\n0\t7/5\n"
    assert ExactMatrix.from_text(text) == a


def test_submatrix_and_stack():
    a = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert a.submatrix([1], [0, 2]).entries == ((4, 6),)
    stacked = a.stack(ExactMatrix.from_rows([[7, 8, 9]]))
    assert stacked.rows == 3 and stacked.entries[2] == (7, 8, 9)

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from metricpoly.exact import (
    RationalMatrix, as_fraction, format_fraction, integer_rank, nullspace_basis,
    primitive, rank, rank_mod_p, solve,
)
from metricpoly.fixtures import counterexample
from metricpoly.polytope import incidence, normal_matrix

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    # bias towards rank deficiency by drawing from a tiny value set half the time
    values = st.one_of(small_rationals, st.sampled_from([Fraction(0), Fraction(1), Fraction(-1)]))
    return [[draw(values) for _ in range(c)] for _ in range(r)], c


def sympy_rank(rows, cols):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows]).rank()


def matvec(rows, x):
    return [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]


class TestRank:
    def test_identity(self):
        assert rank(RationalMatrix.identity(2)) == 2

    def test_zero(self):
        assert rank(RationalMatrix.zeros(3, 5)) == 0

    def test_counterexample_tight_normals(self):
        fx = counterexample()
        normals = normal_matrix(9)
        rows = [normals[i] for i in sorted(incidence(fx.vertex))]
        assert len(rows) == 37
        # oracle: sympy's own elimination over the rationals
        assert sympy.Matrix(rows).rank() == 36
        assert rank(rows) == 36

    @settings(max_examples=200, deadline=None)
    @given(matrices())
    def test_matches_sympy(self, mc):
        rows, cols = mc
        assert rank(rows, cols) == sympy_rank(rows, cols)

    @settings(max_examples=200, deadline=None)
    @given(matrices())
    def test_transpose_invariant(self, mc):
        rows, cols = mc
        if not rows:
            return
        m = RationalMatrix.from_rows(rows)
        assert rank(m) == rank(m.transpose())

    @settings(max_examples=100, deadline=None)
    @given(matrices(), st.randoms(use_true_random=False), st.lists(small_rationals.filter(bool), min_size=6, max_size=6))
    def test_row_permutation_and_scaling(self, mc, rnd, scales):
        rows, cols = mc
        shuffled = [[s * v for v in r] for r, s in zip(rows, scales)]
        rnd.shuffle(shuffled)
        assert rank(shuffled, cols) == rank(rows, cols)

    def test_modular_rank_never_exceeds_exact(self):
        rows = [[1 << 61, 0], [0, ((1 << 61) - 1) * 3]]
        assert rank_mod_p(rows, 2) == 1
        assert integer_rank(rows, 2) == 2

    def test_expected_shortcut(self):
        assert integer_rank([[1, 0, 0], [0, 1, 0]], 3, expected=2) == 2
        assert integer_rank([[1, 0, 0], [2, 0, 0]], 3, expected=2) == 1


class TestNullspace:
    def test_identity(self):
        assert nullspace_basis(RationalMatrix.identity(2)) == []

    def test_single_row(self):
        basis = nullspace_basis([[1, -1]])
        assert len(basis) == 1
        assert primitive(basis[0]) == (1, 1)

    def test_counterexample_subsystems(self):
        fx = counterexample()
        normals = normal_matrix(9)
        tight = sorted(incidence(fx.vertex))
        dims = set()
        for drop in range(37):
            rows = [normals[i] for i in tight if i != tight[drop]][:36]
            basis = nullspace_basis(rows, 36)
            assert len(basis) == 36 - sympy.Matrix(rows).rank()
            for b in basis:
                assert matvec(rows, b) == [0] * 36
            dims.add(len(basis))
        assert dims <= {0, 1}

    def test_36_rows_with_repeat_is_singular(self):
        fx = counterexample()
        normals = normal_matrix(9)
        tight = sorted(incidence(fx.vertex))
        rows = [normals[i] for i in tight[:35]] + [normals[tight[0]]]
        basis = nullspace_basis(rows, 36)
        assert len(basis) == 36 - sympy.Matrix(rows).rank() >= 1
        for b in basis:
            assert matvec(rows, b) == [0] * 36

    @settings(max_examples=200, deadline=None)
    @given(matrices())
    def test_annihilates_and_has_right_size(self, mc):
        rows, cols = mc
        basis = nullspace_basis(rows, cols)
        assert len(basis) == cols - rank(rows, cols)
        for b in basis:
            assert all(v == 0 for v in matvec(rows, b))


class TestSolve:
    def test_identity(self):
        b = [Fraction(1, 3), Fraction(-2)]
        assert solve(RationalMatrix.identity(2), b) == b

    def test_underdetermined(self):
        x = solve([[2, 0]], [1])
        assert x[0] == Fraction(1, 2)

    def test_inconsistent(self):
        assert solve([[1, 0], [1, 0]], [1, 2]) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve([[1, 0]], [1, 2])

    @settings(max_examples=200, deadline=None)
    @given(matrices(), st.data())
    def test_resubstitution(self, mc, data):
        rows, cols = mc
        x0 = data.draw(st.lists(small_rationals, min_size=cols, max_size=cols))
        b = matvec(rows, x0)
        x = solve(rows, b, cols)
        assert x is not None
        assert matvec(rows, x) == b


def test_fraction_helpers():
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(Fraction(-2, 6)) == "-1/3"
    assert as_fraction("6/9") == Fraction(2, 3)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert primitive([Fraction(2, 3), Fraction(-4, 9), 0]) == (3, -2, 0)
    assert primitive([0, 0]) == (0, 0)


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        RationalMatrix(2, 2, (Fraction(1),))
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [3]])

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonzero_vectors, small_matrices, unimodular_matrices
from hesslab.exact import (
    ExactError,
    IntMatrix,
    IntPoly,
    IntVector,
    char_poly,
    count_real_roots,
    det,
    discriminant,
    factor_small,
    integer_distance,
    integer_volume,
    matrix_from_json,
    matrix_to_json,
    parse_matrix,
    resultant,
)


def test_det_identity():
    assert det(IntMatrix.identity(3)) == 1


def test_det_paper_example():
    assert det(parse_matrix("0 1 2; 1 0 0; 0 3 5")) == 1


def test_det_2x2_by_hand():
    assert det(IntMatrix([[1, 2], [3, 4]])) == -2


def test_char_poly_identity():
    assert char_poly(IntMatrix.identity(3)) == IntPoly([-1, 3, -3, 1])


def test_char_poly_frobenius_cofactor_oracle():
    # companion of t^3 - n t^2 - m t - 1 at (m, n) = (2, 3)
    m = IntMatrix([[0, 0, 1], [1, 0, 2], [0, 1, 3]])
    assert char_poly(m) == IntPoly([-1, -2, -3, 1])


def test_discriminant_golden_quadratic():
    assert discriminant(IntPoly([-1, -1, 1])) == 5


def test_discriminant_frobenius_at_origin():
    m = IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert discriminant(char_poly(m)) == -27


def test_discriminant_repeated_root():
    # (t-1)^2 (t-2)
    assert discriminant(IntPoly([-2, 5, -4, 1])) == 0


def test_discriminant_degree_range():
    with pytest.raises(ExactError):
        discriminant(IntPoly([1, 1]))


def test_integer_volume_unit_cell():
    basis = [IntVector((1, 0, 0)), IntVector((0, 1, 0)), IntVector((0, 0, 1))]
    assert integer_volume(basis) == 1


def test_integer_volume_rectangle():
    assert integer_volume([IntVector((2, 0)), IntVector((0, 3))]) == 6


def test_integer_volume_full_rank_det():
    assert integer_volume([IntVector((1, 2)), IntVector((3, 4))]) == 2


def test_integer_volume_dependent_rejected():
    with pytest.raises(ExactError):
        integer_volume([IntVector((1, 2)), IntVector((2, 4))])


def test_integer_distance_trivial():
    basis = [IntVector((1, 0, 0)), IntVector((0, 1, 0))]
    assert integer_distance(IntVector((0, 0, 1)), basis) == 1
    assert integer_distance(IntVector((0, 0, 2)), basis) == 2


def test_integer_distance_smith_oracle():
    basis = [IntVector((1, 0, 0)), IntVector((0, 2, 0))]
    v = IntVector((1, 1, 3))
    # index of lattice(basis) inside lattice(basis + v) relative heights:
    # brute count of lattice planes between v and span(basis)
    assert integer_distance(v, basis) == 3


def test_integer_distance_in_span_rejected():
    basis = [IntVector((1, 0, 0)), IntVector((0, 1, 0))]
    with pytest.raises(ExactError):
        integer_distance(IntVector((2, 3, 0)), basis)


def test_factor_small_irreducible_cubic():
    assert len(factor_small(IntPoly([-1, -1, -3, 1]))) == 1


def test_factor_small_quartic_quadratic_split():
    # (t^2 + t + 1)(t^2 + 2t + 1); the second factor splits further
    q = IntPoly([1, 1, 1]) * IntPoly([1, 2, 1])
    fs = factor_small(q)
    assert sorted(str(f) for f in fs) == sorted(
        [str(IntPoly([1, 1, 1])), str(IntPoly([1, 1])), str(IntPoly([1, 1]))])


def test_factor_small_quartic_root_at_one():
    # 4D family at (l, m, n) = (0, 0, 0): t^4 - 2t^3 - 2t^2 + 2t + 1
    p = IntPoly([1, 2, -2, -2, 1])
    fs = factor_small(p)
    assert len(fs) > 1
    assert any(f(1) == 0 for f in fs)


def test_resultant_shared_root():
    # t - 1 and (t - 1)(t - 2) share a root, so the resultant vanishes
    assert resultant(IntPoly([-1, 1]), IntPoly([2, -3, 1])) == 0
    assert resultant(IntPoly([-1, 1]), IntPoly([1, 1])) != 0


def test_parse_matrix_position_annotated():
    with pytest.raises(ExactError) as ei:
        parse_matrix("1 2; 3 x")
    assert "row 2" in str(ei.value) and "entry 2" in str(ei.value)


def test_matrix_json_round_trip():
    m = parse_matrix("0 1 2; 1 0 0; 0 3 5")
    assert matrix_from_json(matrix_to_json(m)) == m


@settings(max_examples=120, deadline=None)
@given(small_matrices(), unimodular_matrices())
def test_char_poly_conjugacy_invariant(m, u):
    if det(u) not in (1, -1):
        return
    h = u.inverse_unimodular() * m * u
    assert char_poly(h) == char_poly(m)


@settings(max_examples=100, deadline=None)
@given(small_matrices(n=3, lo=-5, hi=5))
def test_integer_volume_equals_abs_det(m):
    cols = [m.column(j) for j in range(3)]
    d = det(m)
    if d == 0:
        return
    assert integer_volume(cols) == abs(d)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3))
def test_discriminant_zero_iff_repeated_factor(cs):
    p = IntPoly([cs[0], cs[1], cs[2], 1])
    fs = factor_small(p)
    expanded = fs[0]
    for f in fs[1:]:
        expanded = expanded * f
    assert expanded == p
    repeated = len(set(str(f) for f in fs)) < len(fs) or any(
        discriminant(f) == 0 for f in fs if f.degree >= 2)
    assert (discriminant(p) == 0) == repeated


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3))
def test_negative_discriminant_iff_one_real_root(cs):
    p = IntPoly([cs[0], cs[1], cs[2], 1])
    d = discriminant(p)
    if d == 0:
        return
    bound = Fraction(1) + max(abs(c) for c in p.coeffs[:-1])
    real = count_real_roots(p, -bound, bound)
    assert (d < 0) == (real == 1)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laplace_det, matrices, rationals
from nag.errors import PreconditionError
from nag.exact import (
    GaussRational,
    Matrix,
    SubspaceBasis,
    char_poly,
    frac_matrix,
    is_psd,
    kernel_basis,
    norm_leq_one,
    p_integral,
    parse_matrix,
    parse_scalar,
    projection_onto,
    subspace_intersect,
)

F = Fraction


def horner(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


# scalars


def test_gauss_rational_arithmetic():
    z = GaussRational(F(1, 2), F(1, 3))
    assert z * z.conjugate() == GaussRational(z.abs2(), 0)
    assert z.conjugate().conjugate() == z
    assert (z / z) == 1
    assert GaussRational(3, 0).conjugate() == GaussRational(3, 0)


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/2+1/3i", GaussRational(F(1, 2), F(1, 3))),
        ("-i", GaussRational(0, -1)),
        ("i", GaussRational(0, 1)),
        ("2-3/4i", GaussRational(2, F(-3, 4))),
        ("1/2i", GaussRational(0, F(1, 2))),
        ("-7/3", F(-7, 3)),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@given(rationals, rationals, rationals)
def test_distributive_and_canonical(a, b, c):
    assert (a + b) * c == a * c + b * c
    x = (a + b) * c
    assert F(x.numerator, x.denominator) == x
    assert x.denominator > 0


# matrices


def test_zero_dimensional_matrices():
    a = Matrix.zeros(2, 0)
    b = Matrix.zeros(0, 3)
    assert (a @ b) == Matrix.zeros(2, 3)
    assert (b @ Matrix.zeros(3, 1)).shape == (0, 1)
    x = frac_matrix([[1, 2], [3, 4]])
    assert x.oplus(Matrix.zeros(0, 0)) == x
    assert Matrix.zeros(0, 0).oplus(x) == x


def test_mixing_kinds_rejected():
    with pytest.raises(PreconditionError):
        frac_matrix([[1]]) @ parse_matrix("1 1 ; i")


@given(matrices())
def test_text_round_trip(m):
    assert parse_matrix(str(m)) == m


def test_complex_round_trip_keeps_kind():
    m = parse_matrix("2 2 ; 1 0 ; 0 1").as_kind("QI")
    assert parse_matrix(str(m)) == m


@given(matrices())
def test_transpose_involution(m):
    assert m.T.T == m
    assert m.T.shape == (m.ncols, m.nrows)


# kernel


def test_kernel_examples():
    k = kernel_basis(frac_matrix([[1, 1]]))
    assert k.dim == 1
    (v,) = k.vectors
    assert frac_matrix([[1, 1]]) @ v == Matrix.zeros(1, 1)
    assert k == SubspaceBasis.from_vectors(2, [(1, -1)])
    assert kernel_basis(frac_matrix([[1, 2], [3, 4]])).dim == 0
    assert kernel_basis(Matrix.zeros(2, 2)) == SubspaceBasis.full(2)


@given(matrices(min_dim=1))
def test_kernel_correct_and_rank_nullity(m):
    k = kernel_basis(m)
    for v in k.vectors:
        assert (m @ v).is_zero()
    assert m.rank() + k.dim == m.ncols


# characteristic polynomial


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, 1], [-1, 0]], [1, 0, 1]),
        ([[1, 0], [0, 1]], [1, -2, 1]),
        ([[1, 0], [0, F(1, 2)]], [1, F(-3, 2), F(1, 2)]),
    ],
)
def test_char_poly_examples(rows, expected):
    assert char_poly(frac_matrix(rows)) == expected


def test_char_poly_rejects_non_square():
    with pytest.raises(PreconditionError):
        char_poly(frac_matrix([[1, 2]]))


@settings(max_examples=40, deadline=None)
@given(matrices(min_dim=1, max_dim=5).filter(lambda m: m.is_square()), st.lists(rationals, min_size=20, max_size=20))
def test_char_poly_matches_cofactor_determinant(m, points):
    coeffs = char_poly(m)
    n = m.nrows
    for x in points:
        shifted = [[(x if i == j else 0) - m[i, j] for j in range(n)] for i in range(n)]
        assert horner(coeffs, x) == laplace_det(shifted)


# PSD


def test_psd_examples():
    assert is_psd(Matrix.identity(2))
    assert not is_psd(frac_matrix([[1, 2], [2, 1]]))
    assert is_psd(Matrix.zeros(3, 3))
    # singular PSD with a zero leading minor; leading-minor tests get this wrong
    assert is_psd(frac_matrix([[0, 0], [0, 1]]))
    assert not is_psd(frac_matrix([[0, 1], [1, 0]]))


def test_psd_rejects_asymmetric():
    with pytest.raises(PreconditionError):
        is_psd(frac_matrix([[1, 2], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(matrices(min_dim=1, max_dim=4))
def test_gram_matrices_are_psd(b):
    assert is_psd(b.T @ b)


@settings(max_examples=60, deadline=None)
@given(matrices(min_dim=1, max_dim=3).filter(lambda m: m.is_square()), st.data())
def test_psd_sound_on_quadratic_form(m, data):
    sym = m + m.T
    if not is_psd(sym):
        return
    for _ in range(100):
        x = Matrix.column(data.draw(st.lists(rationals, min_size=sym.nrows, max_size=sym.nrows)))
        assert (x.T @ sym @ x)[0, 0] >= 0


def test_psd_hermitian():
    h = parse_matrix("2 2 ; 2+0i 0+1i ; 0-1i 2+0i")
    assert is_psd(h)  # eigenvalues 1 and 3
    h2 = parse_matrix("2 2 ; 1+0i 0+2i ; 0-2i 1+0i")
    assert not is_psd(h2)  # eigenvalues -1 and 3


# norm


def test_norm_leq_one_examples():
    assert norm_leq_one(frac_matrix([[1, 0], [0, F(1, 2)]]))
    assert not norm_leq_one(frac_matrix([[1, 1], [0, 0]]))
    assert norm_leq_one(frac_matrix([[0, -1, 0], [0, 0, 0], [1, 0, 0]]))
    assert norm_leq_one(Matrix.zeros(3, 0))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_norm_closed_under_composition(data):
    n, k, m = (data.draw(st.integers(1, 3)) for _ in range(3))
    a = data.draw(matrices(rows=n, cols=k))
    b = data.draw(matrices(rows=k, cols=m))
    if norm_leq_one(a) and norm_leq_one(b):
        assert norm_leq_one(a @ b)


# p-adic integrality


def test_p_integral_examples():
    half = frac_matrix([[F(1, 2)]])
    assert not p_integral(half, 2)
    assert p_integral(half, 3)
    assert not p_integral(frac_matrix([[F(3, 4)]]), 2)
    assert all(p_integral(frac_matrix([[3, -7], [0, 12]]), p) for p in (2, 3, 5, 7))
    with pytest.raises(PreconditionError):
        p_integral(half, 4)


# projections and intersections


def test_projection_examples():
    p = projection_onto(SubspaceBasis.from_vectors(2, [(1, 1)]))
    assert p == frac_matrix([[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]])
    assert projection_onto(SubspaceBasis.full(3)) == Matrix.identity(3)
    assert projection_onto(SubspaceBasis.zero_space(3)) == Matrix.zeros(3, 3)


@settings(max_examples=40, deadline=None)
@given(matrices(min_dim=1, max_dim=4))
def test_projection_properties(m):
    from nag.exact import column_space

    b = column_space(m)
    p = projection_onto(b)
    assert p == p.T
    assert p @ p == p
    for v in b.vectors:
        assert p @ v == v


def test_intersection_examples():
    e = lambda *idx: SubspaceBasis.from_vectors(3, [[1 if i == j else 0 for i in range(3)] for j in idx])
    assert subspace_intersect(e(0, 1), e(1, 2)) == e(1)
    assert subspace_intersect(e(0, 1), e(0, 1)) == e(0, 1)
    assert subspace_intersect(e(0), e(1)).dim == 0
    with pytest.raises(PreconditionError):
        subspace_intersect(e(0), SubspaceBasis.full(2))


@settings(max_examples=30, deadline=None)
@given(matrices(min_dim=1, max_dim=3, rows=3), matrices(min_dim=1, max_dim=3, rows=3), matrices(min_dim=1, max_dim=3, rows=3))
def test_intersection_commutative_associative(a, b, c):
    from nag.exact import column_space

    A, B, C = column_space(a), column_space(b), column_space(c)
    assert subspace_intersect(A, B) == subspace_intersect(B, A)
    assert subspace_intersect(subspace_intersect(A, B), C) == subspace_intersect(A, subspace_intersect(B, C))

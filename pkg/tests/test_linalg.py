import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sp4artin import linalg
from sp4artin.cyclotomic import CycNum

ORDER = 40

int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(rows=int_matrices)
def test_det_and_charpoly_against_sympy(rows):
    m = linalg.matrix(rows, ORDER)
    ref = sympy.Matrix(rows)
    assert linalg.det(m) == int(ref.det())
    lam = sympy.symbols("lam")
    ref_cp = sympy.Poly(ref.charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    ours = linalg.charpoly(m)
    assert [c.to_fraction() for c in ours] == [sympy.Rational(c) for c in ref_cp]


@settings(max_examples=40, deadline=None)
@given(rows=int_matrices)
def test_inverse(rows):
    m = linalg.matrix(rows, ORDER)
    if linalg.det(m).is_zero():
        return
    prod = linalg.mat_mul(m, linalg.inverse(m))
    assert linalg.mat_key(prod) == linalg.mat_key(linalg.identity(len(rows), ORDER))


def test_cayley_hamilton_on_cyclotomic_matrix():
    z = CycNum.zeta(ORDER)
    m = linalg.matrix([[z, 1, 0], [0, z ** 3, 2], [z ** 7, 0, -1]], ORDER)
    cp = linalg.charpoly(m)
    acc = linalg.scale(0, m)
    power = linalg.identity(3, ORDER)
    for c in cp:
        acc = linalg.mat_add(acc, linalg.scale(c, power))
        power = linalg.mat_mul(power, m)
    assert all(x.is_zero() for row in acc for x in row)


def test_det_one_minus_tA_matches_charpoly():
    z = CycNum.zeta(ORDER, 8)
    m = linalg.matrix([[z, 0], [1, z ** 2]], ORDER)
    poly = linalg.det_one_minus_tA(m)
    assert poly[1] == -(z + z ** 2) and poly[2] == z ** 3


def test_nullspace():
    rows = linalg.matrix([[1, 2, 3], [2, 4, 6]], ORDER)
    basis = linalg.nullspace(rows, 3, ORDER)
    assert len(basis) == 2
    for v in basis:
        assert all(x.is_zero() for x in linalg.mat_vec(rows, v))

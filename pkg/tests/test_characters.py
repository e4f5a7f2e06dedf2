from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sp4artin.characters import (Character, CharacterError, character_table, det_character, dixon_prime,
                                 exterior_square, fs_indicator, induce, inner, restrict, symmetric_square)
from sp4artin.cyclotomic import CycNum
from sp4artin.reps import MatrixRep, char_of_rep
from sp4artin.standard import cyclic_group


@pytest.fixture(scope="module")
def rho(std):
    return char_of_rep(MatrixRep.natural(std.G))


def test_degrees(std, table):
    assert Counter(table.degrees) == {1: 5, 4: 5, 5: 3}
    assert sum(d * d for d in table.degrees) == std.G.size
    assert len(table) == len(std.G.classes)
    assert Counter(character_table(std.Gbar).degrees) == {1: 5, 5: 3}


def test_cyclic_group_table():
    C5 = cyclic_group(5)
    t = character_table(C5)
    assert t.degrees == [1] * 5
    z = CycNum.zeta(5)
    powers = {z ** k for k in range(5)}
    for chi in t:
        assert all(v in powers for v in chi.values)
    assert t.row_orthogonality() and t.column_orthogonality()


def test_orthogonality(table):
    assert table.row_orthogonality()
    assert table.column_orthogonality()


def test_dixon_prime():
    assert dixon_prime(160, 20) == 41
    assert dixon_prime(80, 10) == 31


def test_rho_values(std, rho, table):
    G = std.G
    assert rho(0) == 4
    assert rho(std.minus_identity) == -4
    center = G.center
    for g in std.H.embedding:
        if g not in center:
            assert rho(g) == 0
    assert rho in list(table)


def test_inner_products(std, rho):
    one = Character.trivial(std.G)
    assert inner(rho, rho) == 1
    assert inner(one, one) == 1
    assert inner(rho, one) == 0
    with pytest.raises(CharacterError):
        inner(rho, Character.trivial(std.H))


def test_restriction(std, rho, table):
    H = std.H
    res = restrict(rho, H)
    assert inner(res, res) == 1
    assert restrict(Character.trivial(std.G), H) == Character.trivial(H)
    r = exterior_square(rho) - Character.trivial(std.G)
    res_r = restrict(r, H)
    assert any(inner(res_r, lam) == 1 for lam in character_table(H).linear())
    with pytest.raises(CharacterError):
        restrict(rho, std.Gbar)


def test_induction(std, table, rho):
    H = std.H
    ind = induce(Character.trivial(H))
    total = table.linear()[0]
    for lam in table.linear()[1:]:
        total = total + lam
    assert ind == total
    assert ind.degree == 5
    r = exterior_square(rho) - Character.trivial(std.G)
    assert any(induce(lam) == r for lam in character_table(H).linear())
    with pytest.raises(CharacterError):
        induce(Character.trivial(std.G))


@settings(max_examples=30, deadline=None)
@given(i=st.integers(0, 31), j=st.integers(0, 12))
def test_frobenius_reciprocity(std, table, i, j):
    h_table = character_table(std.H)
    lam = h_table[i % len(h_table)]
    chi = table[j]
    assert inner(induce(lam), chi) == inner(lam, restrict(chi, std.H))


def test_exterior_square(std, rho, table):
    ext = exterior_square(rho)
    assert ext.degree == 6
    nus = [lam for lam in table.linear() if inner(ext, lam) != 0]
    assert nus == [Character.trivial(std.G)]
    r = ext - nus[0]
    assert r.degree == 5 and inner(r, r) == 1
    for chi in table:
        assert exterior_square(chi) + symmetric_square(chi) == chi * chi


def test_exterior_square_matches_matrix_eigenvalues(std):
    from sp4artin.reps import eigen_multiset

    rep = MatrixRep.natural(std.G)
    ext = exterior_square(char_of_rep(rep))
    for r in std.G.classes.reps:
        spec = eigen_multiset(rep, r).exterior_square()
        total = sum((v.promote(40) for v in spec.values), CycNum.rational(0, 40))
        assert total == ext(r)


def test_indicators(std, rho, table):
    assert fs_indicator(Character.trivial(std.G)) == 1
    assert fs_indicator(rho) == -1
    others = [fs_indicator(c) for c in table.of_degree(4) if c != rho]
    assert others == [0, 0, 0, 0]
    for chi in table:
        assert fs_indicator(chi) in (-1, 0, 1)


def test_polarization_of_complex_siblings(table):
    for chi in table.of_degree(4):
        ext = exterior_square(chi)
        hits = [lam for lam in table.linear() if inner(ext, lam) == 1]
        assert len(hits) == 1
        if fs_indicator(chi) == 0:
            assert hits[0] != table[0]


def test_det_character(std, rho, table):
    assert det_character(rho) == Character.trivial(std.G)
    for lam in table.linear():
        assert det_character(lam) == lam


def test_twists_are_the_four_dim_irreducibles(table, rho):
    twists = {table.index(rho * lam) for lam in table.linear()}
    assert twists == {table.index(c) for c in table.of_degree(4)}


def test_decompose(table, rho):
    sq = rho * rho
    mult = table.decompose(sq)
    assert sum(m * d for m, d in zip(mult, table.degrees)) == 16
    assert all(m == int(m) and m >= 0 for m in mult)


def test_bad_value_count(std):
    with pytest.raises(CharacterError):
        Character(std.G, (CycNum.rational(1, 40),))


def test_kernel_and_reality(std, rho, table):
    assert rho.kernel() == frozenset({0})
    assert rho.is_real()
    lam = table.linear()[1]
    assert lam.kernel() == frozenset(std.H.embedding)
    assert not lam.is_real()
    assert Fraction(len(lam.kernel())) == Fraction(std.G.size, 5)

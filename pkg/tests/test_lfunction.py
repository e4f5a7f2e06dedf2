import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sp4artin import linalg
from sp4artin.characters import Character, exterior_square
from sp4artin.cyclotomic import CycNum
from sp4artin.lfunction import (LFunctionError, character_source, dedekind_e_source, det_poly, dirichlet_cross_check,
                                dirichlet_factor, dirichlet_source, discrete_log_mod11, local_factor,
                                newton_elementary, partial_L, poly_product, primes_up_to, splitting_factor,
                                tail_bound, trivial_source, verify_dedekind, verify_direct_sum, verify_inductivity,
                                verify_matrix_oracle, verify_twisting, zeta2_oracle)
from sp4artin.reps import MatrixRep, char_of_rep, four_dim_reps, polarization_table

ORDER = 40


def P(*coeffs):
    return linalg.poly_trim(tuple(linalg.const(c, ORDER) for c in coeffs))


def binomial_poly(sign, e):
    """(1 + sign T)^e."""
    out = P(1)
    for _ in range(e):
        out = linalg.poly_mul(out, P(1, sign))
    return out


@pytest.fixture(scope="module")
def rho(std):
    return char_of_rep(MatrixRep.natural(std.G))


def test_local_factor_examples(std, rho):
    G = std.G
    one = Character.trivial(G)
    for c in range(len(G.classes)):
        assert linalg.poly_equal(det_poly(one, c), P(1, -1))
    minus = G.class_of(std.minus_identity)
    assert linalg.poly_equal(det_poly(rho, minus), binomial_poly(1, 4))
    rep = MatrixRep.natural(G)
    for c, g in enumerate(G.classes.reps):
        if G.element_orders[g] == 5:
            assert linalg.poly_equal(det_poly(rho, c), linalg.det_one_minus_tA(rep(g)))
    lf = local_factor(rho, 0, q=13)
    assert lf.degree == 4 and lf.q == 13
    assert lf.exact_strings()[0] == "1"


def test_det_poly_rejects_non_characters(std):
    # degree 1 but value 3 elsewhere: power sums of no single root of unity
    bogus = Character(std.G, tuple(CycNum.rational(1 if i == 0 else 3, ORDER) for i in range(13)))
    with pytest.raises(LFunctionError):
        det_poly(bogus, 1)
    halves = Character(std.G, tuple(CycNum.rational(1, ORDER) / 2 for _ in range(13)))
    with pytest.raises(LFunctionError):
        det_poly(halves, 0)


def test_newton_identities_on_roots_of_unity():
    roots = [CycNum.zeta(20, k).promote(ORDER) for k in (0, 3, 7, 10)]
    sums = [sum((r ** k for r in roots), CycNum.rational(0, ORDER)) for k in range(1, 5)]
    e = newton_elementary(sums, 4)
    poly = linalg.one_minus_poly(roots, [1] * 4, ORDER)
    assert linalg.poly_equal(tuple(c if k % 2 == 0 else -c for k, c in enumerate(e)), poly)
    with pytest.raises(LFunctionError):
        newton_elementary(sums[:2], 4)


def test_direct_sum_examples(std, rho, table):
    one = Character.trivial(std.G)
    r = exterior_square(rho) - one
    assert verify_direct_sum(exterior_square(rho), [one, r]).per_class == [True] * 13
    assert verify_direct_sum(rho, [rho]).passed
    wrong = next(c for c in table.of_degree(5) if c != r)
    neg = verify_direct_sum(exterior_square(rho), [one, wrong])
    assert not neg.passed and neg.counterexample is not None


@settings(max_examples=25, deadline=None)
@given(i=st.integers(0, 12), j=st.integers(0, 12), c=st.integers(0, 12))
def test_additivity(table, i, j, c):
    a, b = table[i], table[j]
    assert linalg.poly_equal(det_poly(a + b, c), linalg.poly_mul(det_poly(a, c), det_poly(b, c)))


def test_inductivity(std, table):
    H = std.H
    G = std.G
    rows = polarization_table(G, H)
    for row in rows:
        assert verify_inductivity(row.lam).per_class == [True] * 13
    one_h = Character.trivial(H)
    assert verify_inductivity(one_h).passed
    # trivial lambda: (1 - T^f)^(5/f) with f the order of the class in G/H
    from sp4artin.lfunction import coset_orbit_factor

    hset = frozenset(H.embedding)
    for c, g in enumerate(G.classes.reps):
        f = 1 if g in hset else 5
        base = [linalg.const(0, ORDER)] * (f + 1)
        base[0], base[f] = linalg.const(1, ORDER), linalg.const(-1, ORDER)
        expected = linalg.poly_pow(tuple(base), 5 // f)
        assert linalg.poly_equal(coset_orbit_factor(one_h, g), expected)


def test_dedekind(std, table):
    G = std.G
    rep = verify_dedekind(G, table)
    assert rep.per_class == [True] * 13
    from sp4artin.characters import character_table

    regular = None
    for chi in table:
        term = chi * chi.degree
        regular = term if regular is None else regular + term
    assert linalg.poly_equal(det_poly(regular, 0), binomial_poly(-1, 160))
    minus = G.class_of(std.minus_identity)
    assert linalg.poly_equal(det_poly(regular, minus), linalg.poly_pow(P(1, 0, -1), 80))
    assert verify_dedekind(std.Gbar, character_table(std.Gbar)).passed


def test_twisting(table):
    for chi in table:
        for theta in table.linear():
            assert verify_twisting(chi, theta).per_class == [True] * 13


def test_newton_matches_matrix_determinants(std):
    for rep in four_dim_reps(std.G):
        assert verify_matrix_oracle(rep).per_class == [True] * 13


def test_zeta2_partial_product():
    L = partial_L("trivial", trivial_source, 2, 10 ** 5)
    lo, hi = zeta2_oracle(10 ** 6)
    assert abs(float(L.value.re) - 1.6449341) < 1e-4
    assert abs(float(L.value.re) - math.pi ** 2 / 6) < 1e-4
    assert lo - 1e-4 < float(L.value.re) < hi
    assert L.included == 9592 and L.skipped == {}
    assert L.value.err < 1e-10


def test_partial_L_is_bit_identical_on_recompute():
    a = partial_L("trivial", trivial_source, 2 + 1j, 5000)
    b = partial_L("trivial", trivial_source, 2 + 1j, 5000)
    assert a.value.value == b.value.value and a.value.err == b.value.err


def test_partial_L_requires_convergence():
    with pytest.raises(LFunctionError):
        partial_L("trivial", trivial_source, 1, 100)
    with pytest.raises(LFunctionError):
        partial_L("trivial", trivial_source, 0.5 + 3j, 100)


def test_partial_L_against_mpmath_zeta():
    for s in (2, 3, 2.5 + 1j):
        L = partial_L("trivial", trivial_source, s, 10 ** 4)
        exact = complex(mpmath.zeta(s))
        tb = tail_bound(L.value, 1, complex(s).real, 10 ** 4)
        assert abs(complex(L.value.value) - exact) <= tb + L.value.err


@pytest.mark.parametrize("s", [2, 3, 1.5 + 2j])
def test_doubling_within_tail_bound(s):
    sigma = complex(s).real
    for bound in (1000, 10000):
        L = partial_L("trivial", trivial_source, s, bound)
        L2 = partial_L("trivial", trivial_source, s, 2 * bound)
        move = float(abs(L2.value.value - L.value.value))
        assert move < tail_bound(L.value, 1, sigma, bound) + L.value.err + L2.value.err


def test_polarization_equals_trivial_product(std, rho, table):
    nu = next(lam for lam in table.linear() if lam == Character.trivial(std.G))
    src = character_source(nu, lambda p: frozenset({0}))
    a = partial_L("nu", src, 2, 2000)
    b = partial_L("trivial", trivial_source, 2, 2000)
    assert a.value.value == b.value.value


def test_character_source_skips_unmatched_and_ambiguous(table, rho):
    src = character_source(rho, lambda p: {3: frozenset(), 5: frozenset({3, 5}), 7: frozenset({1})}.get(p))
    assert src(2) is None
    assert src(3) == "unmatched"
    assert src(7) is not None and not isinstance(src(7), str)
    L = partial_L("rho", src, 2, 10)
    assert L.skipped["unmatched"] == [3]
    assert L.skipped["ramified"] == [2]


def test_dirichlet_examples():
    assert linalg.poly_equal(dirichlet_factor(23), binomial_poly(-1, 5))
    assert linalg.poly_equal(dedekind_e_source(23), binomial_poly(-1, 5))
    assert linalg.poly_equal(dirichlet_factor(7), P(1, 0, 0, 0, 0, -1))
    assert linalg.poly_equal(dedekind_e_source(7), P(1, 0, 0, 0, 0, -1))
    assert dedekind_e_source(11) is None and dirichlet_source(11) is None
    assert linalg.poly_equal(splitting_factor([5]), P(1, 0, 0, 0, 0, -1))


def test_discrete_log():
    for k in range(10):
        assert discrete_log_mod11(pow(2, k, 11)) == k
    with pytest.raises(LFunctionError):
        discrete_log_mod11(22)


def test_dirichlet_cross_check():
    rep = dirichlet_cross_check(10 ** 4)
    assert rep.passed
    assert rep.detail["primes_checked"] == 1228 and rep.detail["skipped"] == [11]


def test_zeta_E_against_dirichlet_L_values():
    """Independent oracle: zeta_E(2) = zeta(2) prod_j L(2, chi_j); the factor at 11 is left out."""
    full = mpmath.zeta(2)
    for j in range(1, 5):
        chi = [0] + [cmath.exp(2j * math.pi * j * discrete_log_mod11(n) / 5) for n in range(1, 11)]
        full *= mpmath.dirichlet(2, chi)
    expected = complex(full) * (1 - 11 ** -2)
    L = partial_L("zeta_E", dedekind_e_source, 2, 10 ** 4)
    D = partial_L("dirichlet", dirichlet_source, 2, 10 ** 4)
    assert L.value.value == D.value.value
    assert abs(complex(L.value.value) - expected) <= tail_bound(L.value, 5, 2.0, 10 ** 4) + L.value.err
    assert abs(complex(L.value.value).imag) < 1e-12


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10 ** 5)) == 9592


def test_poly_product_identity():
    assert linalg.poly_equal(poly_product([]), P(1))
    assert linalg.poly_equal(poly_product([P(1, -1), P(1, 1)]), P(1, 0, -1))

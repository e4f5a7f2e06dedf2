import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_mul, gf_rem, gf_sqf_p, gf_factor_sqf

from sp4artin import polyfp

PRIMES = [3, 7, 13, 101, 997, 10007]


def to_sympy(a, p):
    """Lowest-degree-first list to sympy's highest-degree-first dense form."""
    return gf_from_int_poly(list(reversed(a)), p)


def from_sympy(a):
    return list(reversed(a))


polys = st.lists(st.integers(-50, 50), min_size=1, max_size=12)


@settings(max_examples=60, deadline=None)
@given(a=polys, b=polys, p=st.sampled_from(PRIMES))
def test_mul_rem_gcd_against_sympy(a, b, p):
    fa, fb = polyfp.trim(a, p), polyfp.trim(b, p)
    assert list(polyfp.mul(fa, fb, p)) == from_sympy(gf_mul(to_sympy(a, p), to_sympy(b, p), p, ZZ))
    if any(fb):
        assert list(polyfp.rem(fa, fb, p)) == from_sympy(gf_rem(to_sympy(a, p), to_sympy(b, p), p, ZZ))
        g = polyfp.gcd(fa, fb, p)
        assert list(g) == from_sympy(gf_gcd(to_sympy(a, p), to_sympy(b, p), p, ZZ))


@settings(max_examples=80, deadline=None)
@given(tail=st.lists(st.integers(-30, 30), min_size=1, max_size=15), p=st.sampled_from(PRIMES))
def test_distinct_degree_against_sympy(tail, p):
    f = list(tail) + [1]
    fp = polyfp.trim(f, p)
    squarefree = gf_sqf_p(to_sympy(f, p), p, ZZ)
    assert polyfp.is_squarefree(fp, p) == squarefree
    if not squarefree:
        with pytest.raises(ValueError):
            polyfp.distinct_degree(f, p)
        return
    _, factors = gf_factor_sqf(to_sympy(f, p), p, ZZ)
    expected = sorted(len(g) - 1 for g in factors)
    assert polyfp.distinct_degree(f, p) == expected


def test_distinct_degree_examples():
    # x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1 at 23 and 7
    e = [1, 3, -3, -4, 1, 1]
    assert polyfp.distinct_degree(e, 23) == [1, 1, 1, 1, 1]
    assert polyfp.distinct_degree(e, 7) == [5]
    assert not polyfp.is_squarefree(polyfp.trim(e, 11), 11)


def test_large_degree_uses_matrix_path():
    # x^40 - 2 is squarefree mod 10007; compare with sympy
    f = [-2] + [0] * 39 + [1]
    _, factors = gf_factor_sqf(to_sympy(f, 10007), 10007, ZZ)
    assert polyfp.distinct_degree(f, 10007) == sorted(len(g) - 1 for g in factors)


def test_powmod_against_sympy_and_fermat():
    from sympy.polys.galoistools import gf_pow_mod

    p = 101
    e = [1, 3, -3, -4, 1, 1]
    f = polyfp.trim(e, p)
    for k in (1, 2, 7, 101, 12345):
        ours = list(polyfp.powmod([0, 1], k, f, p))
        theirs = from_sympy(gf_pow_mod([1, 0], k, to_sympy(e, p), p, ZZ))
        assert ours == theirs
    # 101 is inert in E, so x^(101^5) = x modulo the defining polynomial
    assert list(polyfp.powmod([0, 1], p ** 5, f, p)) == [0, 1]

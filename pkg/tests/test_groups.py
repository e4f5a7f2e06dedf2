from itertools import combinations

import pytest

from sp4artin import linalg
from sp4artin.characters import character_table
from sp4artin.groups import (GroupError, abelianization_order, closure_from_matrices, coset_action, cycle_type,
                             fixed_point_check, generated_by_order, low_index_subgroup_check, order_histogram,
                             quotient, verify_matrix_homomorphism)
from sp4artin.standard import ORDER, cyclic_group, e32_generators
from sp4artin.verify import group_suite, lemma33_identities


def perm_matrix(perm):
    n = len(perm)
    return linalg.matrix([[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)], ORDER)


def brute_force_subgroups(G, size):
    """Every subset of the given size closed under multiplication (small G only)."""
    out = []
    for subset in combinations(range(G.size), size):
        s = set(subset)
        if 0 in s and all(G.mult[a][b] in s for a in s for b in s):
            out.append(subset)
    return out


@pytest.fixture(scope="module")
def s3():
    return closure_from_matrices([perm_matrix((1, 0, 2)), perm_matrix((1, 2, 0))], name="S3")


@pytest.fixture(scope="module")
def d8():
    return closure_from_matrices([perm_matrix((1, 2, 3, 0)), perm_matrix((3, 2, 1, 0))], name="D8")


def test_trivial_closure():
    G = closure_from_matrices([linalg.identity(4, ORDER)])
    assert G.size == 1


def test_plus_and_minus_type_extraspecial():
    plus = closure_from_matrices(e32_generators(minus_type=False), cap=64)
    minus = closure_from_matrices(e32_generators(minus_type=True), cap=64)
    assert plus.size == minus.size == 32
    assert order_histogram(plus) == {1: 1, 2: 19, 4: 12}
    assert order_histogram(minus) == {1: 1, 2: 11, 4: 20}


def test_closure_errors():
    with pytest.raises(GroupError):
        closure_from_matrices([linalg.matrix([[1, 0], [0, 0]], ORDER)])
    with pytest.raises(GroupError):
        closure_from_matrices(e32_generators(), cap=10)
    with pytest.raises(GroupError):
        closure_from_matrices([])


def test_standard_group_sizes(std):
    assert std.e32.size == 32 and std.G.size == 160 and std.Gbar.size == 80
    assert std.G.mult[0] == list(range(160))


def test_conjugacy_class_counts(std, table):
    C5 = cyclic_group(5)
    assert len(C5.classes) == 5 and all(len(m) == 1 for _, m in C5.classes.classes)
    e32 = std.e32
    sizes = sorted(e32.classes.sizes)
    assert sizes == [1, 1] + [2] * 15
    assert len(std.G.classes) == len(table) == 13
    # classes partition G; representatives are least indices
    seen = set()
    for rep, members in std.G.classes.classes:
        assert rep == min(members)
        assert not seen & members
        seen |= members
    assert seen == set(range(160))


def test_order_histograms(std):
    assert order_histogram(std.Gbar) == {1: 1, 2: 15, 5: 64}
    assert order_histogram(cyclic_group(5)) == {1: 1, 5: 4}
    assert order_histogram(std.e32) == {1: 1, 2: 11, 4: 20}


def test_low_index_examples(std):
    C4 = cyclic_group(4)
    assert len(low_index_subgroup_check(C4, 2)) == 1
    assert low_index_subgroup_check(std.G, 2) == []
    assert low_index_subgroup_check(std.G, 4) == []
    assert len(low_index_subgroup_check(std.G, 5)) == 1  # H itself
    assert low_index_subgroup_check(std.G, 3) == []


def test_low_index_against_brute_force(s3, d8):
    for G in (s3, d8):
        for k in (2, 3, 4):
            if G.size % k:
                continue
            assert low_index_subgroup_check(G, k) == brute_force_subgroups(G, G.size // k)
    assert len(low_index_subgroup_check(d8, 2)) == 3
    assert len(low_index_subgroup_check(s3, 3)) == 3


def test_primitivity_oracle(std):
    assert generated_by_order(std.G, 5) == frozenset(range(160))
    assert abelianization_order(std.G) == 5
    assert abelianization_order(cyclic_group(4)) == 4


def test_fixed_point_examples(std):
    Gb = std.Gbar
    ebar = std.Ebar
    assert fixed_point_check(Gb, 0, ebar) == ebar
    ubar = std.projection(std.u_index)
    assert fixed_point_check(Gb, ubar, ebar) == frozenset({0})
    for t in ebar:
        if Gb.element_orders[t] == 2:
            assert fixed_point_check(Gb, t, ebar) == ebar
    with pytest.raises(GroupError):
        fixed_point_check(std.G, std.u_index, [0, std.G.generators[0]])


def test_center(std):
    assert std.G.center == frozenset({0, std.minus_identity})
    scalars = [g for g, m in enumerate(std.G.matrices) if linalg.is_scalar(m)]
    assert sorted(scalars) == sorted(std.G.center)


def test_fifth_powers_land_in_H(std):
    G = std.G
    hset = frozenset(std.H.embedding)
    assert all(G.power(g, 5) in hset for g in range(G.size))


def test_rearrangement_identity(std):
    assert lemma33_identities(std) == (True, True)


def test_quotient_map(std, s3):
    proj = std.projection
    G = std.G
    assert proj.kernel == frozenset({0, std.minus_identity})
    for a in range(0, 160, 7):
        for b in range(0, 160, 11):
            assert proj(G.mult[a][b]) == proj.target.mult[proj(a)][proj(b)]
    assert proj.image(range(160)) == frozenset(range(80))
    with pytest.raises(GroupError):
        quotient(s3, [0, s3.generators[0]])


def test_matrix_homomorphism(std):
    assert verify_matrix_homomorphism(std.G)
    with pytest.raises(GroupError):
        verify_matrix_homomorphism(std.Gbar)


def test_power_and_orders(std):
    G = std.G
    for g in range(G.size):
        n = G.element_orders[g]
        assert G.power(g, n) == 0
        assert G.power(g, n + 1) == g
        assert G.power(g, -1) == G.inverse[g]


def test_coset_action_examples(std):
    G, H = std.G, std.H
    hset = frozenset(H.embedding)
    for g in range(G.size):
        ct = cycle_type(coset_action(G, hset, g))
        if g == 0 or G.element_orders[g] in (2, 4):
            assert ct == (1,) * 5
        if G.element_orders[g] == 5:
            assert ct == (5,)


def test_cycle_type():
    assert cycle_type([1, 2, 0, 4, 3, 5]) == (1, 2, 3)


def test_group_suite_passes():
    results = group_suite()
    failed = [k for k, v in results.items() if not v["passed"]]
    assert failed == []

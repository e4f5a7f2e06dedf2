"""Named verification suites shared by the command line and the acceptance tests.

Each suite returns an ordered dict: check name -> {"passed": bool, ...details}.
Exact values are rendered as strings; nothing here depends on timing or randomness.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from . import linalg
from .characters import (Character, character_table, det_character, exterior_square, fs_indicator, induce,
                         inner, restrict, symmetric_square)
from .cyclotomic import format_cyc
from .groups import (abelianization_order, fixed_point_check, generated_by_order, low_index_subgroup_check,
                     order_histogram, verify_matrix_homomorphism)
from .lfunction import (dirichlet_cross_check, verify_dedekind, verify_direct_sum, verify_inductivity,
                        verify_matrix_oracle, verify_twisting)
from .reps import (MatrixRep, ambiguity_scan, char_of_rep, four_dim_reps, is_antisymmetric,
                   negative_control_rep, polarization_table, preserves_form, sign_flip_oracle, symplectic_form)
from .standard import ORDER, build_standard_groups


def _check(passed: bool, **detail) -> dict:
    return {"passed": bool(passed), **detail}


def _hist(h: dict) -> dict:
    return {str(k): v for k, v in sorted(h.items())}


def lemma33_identities(std) -> tuple[bool, bool]:
    """(az)^5 = a (z a z^-1) ... (z^4 a z^-4) and z (az)^5 z^-1 = (az)^5 in Gbar, for all a, z."""
    Gb = std.Gbar
    ebar = sorted(std.Ebar)
    fives = [z for z in range(Gb.size) if Gb.element_orders[z] == 5]
    rearr = commute = True
    for z in fives:
        zi = Gb.inverse[z]
        for a in ebar:
            g = Gb.mult[a][z]
            g5 = Gb.power(g, 5)
            prod = 0
            for k in range(5):
                # z^k a z^-k, with conj(x, y) = y^-1 x y
                prod = Gb.mult[prod][Gb.conj(a, Gb.power(zi, k))]
            rearr &= prod == g5
            commute &= Gb.mult[Gb.mult[z][g5]][zi] == g5
    return rearr, commute


def group_suite() -> dict:
    std = build_standard_groups()
    G, H, Gb = std.G, std.H, std.Gbar
    out: dict = {}
    out["e32_order"] = _check(std.e32.size == 32, value=std.e32.size)
    out["e32_order_histogram"] = _check(order_histogram(std.e32) == {1: 1, 2: 11, 4: 20},
                                        value=_hist(order_histogram(std.e32)))
    z32 = std.e32.center
    out["e32_center"] = _check(len(z32) == 2 and len(std.e32.classes) == 17,
                               center_size=len(z32), classes=len(std.e32.classes))
    u = std.U
    ident = linalg.identity(4, ORDER)
    out["U_order5_det1"] = _check(linalg.mat_key(linalg.mat_pow(u, 5)) == linalg.mat_key(ident)
                                  and linalg.det(u) == 1, U=[[format_cyc(x) for x in row] for row in u])
    out["G_order"] = _check(G.size == 160, value=G.size)
    out["G_order_histogram"] = _check(sum(order_histogram(G).values()) == 160, value=_hist(order_histogram(G)))
    out["G_associative"] = _check(G.check_associativity())
    out["matrix_homomorphism_all_pairs"] = _check(verify_matrix_homomorphism(G), pairs=G.size ** 2)
    center = sorted(G.center)
    out["G_center"] = _check(center == sorted({0, std.minus_identity}) and len(center) == 2,
                             size=len(center))
    out["Gbar_order"] = _check(Gb.size == 80, value=Gb.size)
    hb = order_histogram(Gb)
    out["Gbar_order_histogram"] = _check(hb == {1: 1, 2: 15, 5: 64} and hb.get(10, 0) == 0, value=_hist(hb))
    ebar = std.Ebar
    elementary = all(Gb.element_orders[x] <= 2 for x in ebar) and all(
        Gb.commutes(a, b) for a in ebar for b in ebar)
    ubar = std.projection(std.u_index)
    out["Ebar_elementary_abelian_normal"] = _check(len(ebar) == 16 and elementary and Gb.is_normal(ebar))
    out["complement_order5"] = _check(Gb.element_orders[ubar] == 5 and ubar not in ebar)
    fixed = fixed_point_check(Gb, ubar, ebar)
    out["fixed_point_free"] = _check(fixed == frozenset({0}), fixed_points=len(fixed))
    hset = frozenset(H.embedding)
    fifth = all(G.power(g, 5) in hset for g in range(G.size) if g not in hset)
    out["fifth_powers_in_H"] = _check(fifth)
    rearr, commute = lemma33_identities(std)
    out["rearrangement_identity"] = _check(rearr and commute, rearrangement=rearr, commutes_with_z=commute)
    idx2 = low_index_subgroup_check(G, 2)
    idx4 = low_index_subgroup_check(G, 4)
    out["no_index_2_subgroup"] = _check(not idx2, found=len(idx2))
    out["no_index_4_subgroup"] = _check(not idx4, found=len(idx4))
    gen5 = generated_by_order(G, 5)
    ab = abelianization_order(G)
    out["primitivity_oracle"] = _check(len(gen5) == G.size and ab == 5,
                                       generated_by_order5=len(gen5), abelianization_order=ab)
    out["normalizer_choice"] = _check(True, **std.describe())
    return out


def rep_suite(with_oracle: bool = True) -> dict:
    std = build_standard_groups()
    G, H = std.G, std.H
    table = character_table(G)
    out: dict = {}
    out["degrees"] = _check(table.degrees == [1] * 5 + [4] * 5 + [5] * 3 and sum(d * d for d in table.degrees) == 160,
                            value=",".join(map(str, table.degrees)))
    out["orthogonality"] = _check(table.row_orthogonality() and table.column_orthogonality())
    gbar_deg = character_table(std.Gbar).degrees
    out["Gbar_degrees"] = _check(sorted(gbar_deg) == [1] * 5 + [5] * 3, value=",".join(map(str, gbar_deg)))
    rho = MatrixRep.natural(G)
    chi = char_of_rep(rho)
    out["rho_irreducible"] = _check(inner(chi, chi) == 1, table_row=table.index(chi))
    out["rho_indicator"] = _check(fs_indicator(chi) == -1, value=str(fs_indicator(chi)))
    out["det_character_trivial"] = _check(det_character(chi) == Character.trivial(G))
    ok = all(exterior_square(c) + symmetric_square(c) == c * c for c in table)
    out["ext_plus_sym_is_square"] = _check(ok)
    res = restrict(chi, H)
    four = character_table(H).of_degree(4)
    out["restriction_to_E32"] = _check(len(four) == 1 and res == four[0] and inner(res, res) == 1)
    lin_h = character_table(H).linear()
    recip = all(inner(induce(lam), c) == inner(lam, restrict(c, H)) for lam in lin_h for c in table)
    out["frobenius_reciprocity"] = _check(recip, pairs=len(lin_h) * len(table))
    trivial_ind = induce(Character.trivial(H))
    out["induced_trivial_is_sum_of_linear"] = _check(
        trivial_ind == sum(table.linear()[1:], table.linear()[0]))
    rows = []
    all_ok = True
    forms_ok = True
    for row, rep in zip(polarization_table(G, H), four_dim_reps(G)):
        j, nu_form = symplectic_form(rep, table)
        ok_form = (is_antisymmetric(j) and not linalg.det(j).is_zero()
                   and preserves_form(rep, j, nu_form, G.generators) and nu_form == row.nu)
        forms_ok &= ok_form
        ok = (row.nu_count == 1 and row.r_irreducible and row.lam is not None and row.restriction_irreducible)
        all_ok &= ok
        nu_order = next(k for k in range(1, G.exponent + 1) if all(v ** k == 1 for v in row.nu.values))
        rows.append({
            "chi": row.chi.label, "indicator": str(row.indicator), "nu": row.nu.label,
            "nu_order": nu_order, "r": table[table.index(row.r)].label if row.r_irreducible else None,
            "lambda_on_H": row.lam.label if row.lam is not None else None,
            "restriction_irreducible": row.restriction_irreducible,
            "form_similitude": nu_form.label, "form_ok": ok_form,
        })
    out["lemma31_decomposition"] = _check(all_ok, rows=rows)
    out["symplectic_forms"] = _check(forms_ok)
    indicators = sorted(str(fs_indicator(c)) for c in table.of_degree(4))
    out["indicators_4dim"] = _check(indicators == ["-1", "0", "0", "0", "0"], value=indicators)
    violations = ambiguity_scan(rho)
    out["ambiguity_scan"] = _check(not violations, pairs=G.size ** 2, violations=len(violations))
    control = ambiguity_scan(negative_control_rep())
    out["ambiguity_scan_negative_control"] = _check(bool(control), violations=len(control))
    if with_oracle:
        o = sign_flip_oracle(20, 4)
        out["sign_flip_oracle"] = _check(not o["failures"] and o["hypothesis_holds"] == o["order10_forced"],
                                         multisets=o["multisets"], hypothesis_holds=o["hypothesis_holds"],
                                         order10_forced=o["order10_forced"])
    return out


def lfunction_suite(dirichlet_bound: int = 10000) -> dict:
    std = build_standard_groups()
    G = std.G
    table = character_table(G)
    out: dict = {}
    rows = polarization_table(G, std.H)
    direct = [verify_direct_sum(exterior_square(r.chi), [r.nu, r.r], f"direct_sum[{r.chi.label}]") for r in rows]
    out["direct_sum"] = _check(all(x.passed for x in direct), reports=[x.to_json() for x in direct])
    ind = [verify_inductivity(r.lam, f"inductivity[{r.lam.label}]") for r in rows]
    ind.append(verify_inductivity(Character.trivial(std.H), "inductivity[trivial]"))
    out["inductivity"] = _check(all(x.passed for x in ind), reports=[x.to_json() for x in ind])
    ded = verify_dedekind(G, table)
    out["dedekind"] = _check(ded.passed, report=ded.to_json())
    tw = [verify_twisting(c, th) for c in table for th in table.linear()]
    out["twisting"] = _check(all(x.passed for x in tw), pairs=len(tw))
    oracle = [verify_matrix_oracle(r) for r in four_dim_reps(G)]
    out["newton_vs_matrix"] = _check(all(x.passed for x in oracle), reps=len(oracle))
    wrong = next(c for c in table.of_degree(5) if c != rows[0].r)
    neg = verify_direct_sum(exterior_square(rows[0].chi), [table[0], wrong], "direct_sum_negative_control")
    out["direct_sum_negative_control"] = _check(not neg.passed, counterexample_class=neg.counterexample)
    dc = dirichlet_cross_check(dirichlet_bound)
    out["dirichlet_cross_check"] = _check(dc.passed, bound=dirichlet_bound,
                                          primes_checked=dc.detail["primes_checked"], skipped=dc.detail["skipped"])
    return out


def all_passed(results: dict) -> bool:
    return all(v.get("passed", True) for v in results.values())

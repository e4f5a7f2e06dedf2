"""The concrete groups: E32 = Q8 o D8, an order-5 normalizer U, G = E32 : C5 of order 160.

E32 is generated by iX(x)I, iZ(x)I (a Q8) and I(x)X, I(x)Z (a D8) inside
GL4 over Q(i).  U is solved for from linear conjugation constraints, so the
construction never depends on a hand-copied matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import linalg
from .cyclotomic import CycNum
from .groups import Group, GroupError, QuotientMap, closure_from_matrices, quotient
from .linalg import Matrix

ORDER = 40  # ambient Q(zeta_40) for every matrix entry and character value


def _m(rows) -> Matrix:
    return linalg.matrix(rows, ORDER)


I_UNIT = CycNum.zeta(ORDER, ORDER // 4)
ID2 = _m([[1, 0], [0, 1]])
PX = _m([[0, 1], [1, 0]])
PZ = _m([[1, 0], [0, -1]])


def e32_generators(minus_type: bool = True) -> list[Matrix]:
    """Generators of the order-32 extraspecial group.

    With minus_type the first tensor factor is the quaternion pair iX, iZ
    (Q8 o D8, 20 elements of order 4); otherwise the real Pauli pair is used
    (D8 o D8, 12 elements of order 4).
    """
    a, b = PX, PZ
    if minus_type:
        a, b = linalg.scale(I_UNIT, PX), linalg.scale(I_UNIT, PZ)
    return [linalg.kron(a, ID2), linalg.kron(b, ID2), linalg.kron(ID2, PX), linalg.kron(ID2, PZ)]


def _lift(gens: list[Matrix], v: int) -> Matrix:
    m = linalg.identity(4, ORDER)
    for i, g in enumerate(gens):
        if v >> i & 1:
            m = linalg.mat_mul(m, g)
    return m


def _apply(cols: tuple[int, ...], v: int) -> int:
    out = 0
    for i, c in enumerate(cols):
        if v >> i & 1:
            out ^= c
    return out


def find_order5_automorphism(quad: list[int]) -> tuple[int, ...]:
    """First (lexicographic in column images) order-5 map of F_2^4 preserving the quadratic form."""
    for cols in product(range(1, 16), repeat=4):
        images = {_apply(cols, v) for v in range(16)}
        if len(images) != 16:
            continue
        if any(quad[_apply(cols, v)] != quad[v] for v in range(16)):
            continue
        v_ok = True
        for v in range(1, 16):
            w = v
            for _ in range(5):
                w = _apply(cols, w)
            if w != v:
                v_ok = False
                break
        if v_ok and any(_apply(cols, v) != v for v in range(16)):
            return cols
    raise GroupError("no order-5 isometry of the quadratic form")


def _conjugation_rows(g: Matrix, h: Matrix) -> list[list[CycNum]]:
    # U g - h U = 0 as linear equations in the 16 entries u[a][b] (index 4a+b)
    zero = linalg.const(0, ORDER)
    rows = []
    for a in range(4):
        for c in range(4):
            row = [zero] * 16
            for b in range(4):
                row[4 * a + b] = row[4 * a + b] + g[b][c]
                row[4 * b + c] = row[4 * b + c] - h[a][b]
            rows.append(row)
    return rows


@dataclass(eq=False)
class StandardGroups:
    e32: Group
    U: Matrix
    G: Group
    H: Group  # the index-5 subgroup of G (the copy of E32 inside G)
    projection: QuotientMap  # G -> Gbar = G / {+-I}
    sigma: tuple[int, ...]  # images of the F_2^4 basis vectors under U-conjugation
    signs: tuple[int, ...]
    u_index: int  # index of U in G
    minus_identity: int  # index of -I in G

    @property
    def Gbar(self) -> Group:
        return self.projection.target

    @property
    def Ebar(self) -> frozenset:
        return self.projection.image(self.H.embedding)

    def describe(self) -> dict:
        return {
            "sigma_columns": list(self.sigma),
            "lift_signs": list(self.signs),
            "U": [[str(x) for x in row] for row in self.U],
        }


def find_normalizer(gens: list[Matrix]) -> tuple[Matrix, tuple[int, ...], tuple[int, ...]]:
    """An order-5 matrix U, det 1, with U E32 U^-1 = E32 acting without fixed points on E32/Z."""
    minus_i = linalg.scale(-1, linalg.identity(4, ORDER))
    lifts = [_lift(gens, v) for v in range(16)]
    quad = [int(linalg.is_scalar(linalg.mat_mul(m, m)) and linalg.mat_mul(m, m)[0][0] == -1)
            for m in lifts]
    sigma = find_order5_automorphism(quad)
    for signs in product((1, -1), repeat=4):
        rows = []
        for i, g in enumerate(gens):
            h = lifts[sigma[i]]
            if signs[i] < 0:
                h = linalg.mat_mul(minus_i, h)
            rows.extend(_conjugation_rows(g, h))
        basis = linalg.nullspace(rows, 16, ORDER)
        if len(basis) != 1:
            continue
        u = tuple(tuple(basis[0][4 * a: 4 * a + 4]) for a in range(4))
        u5 = linalg.mat_pow(u, 5)
        if not linalg.is_scalar(u5):
            continue
        # rescale so that U^5 = I and det U = 1 (t = det/c solves both)
        t = linalg.det(u) / u5[0][0]
        u = linalg.scale(t, u)
        return u, sigma, signs
    raise GroupError("no order-5 normalizer found; generator choice is wrong")


_CACHE: dict[str, StandardGroups] = {}


def build_standard_groups() -> StandardGroups:
    if "std" in _CACHE:
        return _CACHE["std"]
    gens = e32_generators(minus_type=True)
    e32 = closure_from_matrices(gens, cap=64, name="E32")
    U, sigma, signs = find_normalizer(gens)
    G = closure_from_matrices(gens + [U], cap=400, name="G")
    index = {linalg.mat_key(m): i for i, m in enumerate(G.matrices)}
    h_set = G.generate(G.generators[:4])
    H = G.subgroup(h_set, name="H")
    minus_identity = index[linalg.mat_key(linalg.scale(-1, linalg.identity(4, ORDER)))]
    proj = quotient(G, {0, minus_identity}, name="Gbar")
    std = StandardGroups(e32, U, G, H, proj, sigma, signs,
                         index[linalg.mat_key(U)], minus_identity)
    _CACHE["std"] = std
    return std


def cyclic_group(n: int) -> Group:
    """C_n realized by diag(zeta_n, 1, 1, 1)."""
    from math import gcd as _gcd

    order = n * ORDER // _gcd(n, ORDER)
    z = CycNum.zeta(n).promote(order)
    m = linalg.matrix([[z, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], order)
    return closure_from_matrices([m], cap=n + 1, name=f"C{n}")

"""Matrix representations, Frobenius-eigenvalue multisets and the sign-flip argument."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .characters import (Character, CharacterError, CharacterTable, character_table, exterior_square,
                         fs_indicator, induce, inner, restrict)
from .cyclotomic import CycNum
from .groups import Group, GroupError
from .linalg import Matrix
from .standard import ORDER


class RepError(Exception):
    pass


@dataclass(frozen=True, eq=False)
class MatrixRep:
    group: Group
    images: tuple[Matrix, ...]  # one matrix per group element
    label: str = ""

    @classmethod
    def from_generators(cls, group: Group, gen_images: dict[int, Matrix], label: str = "") -> "MatrixRep":
        """Extend generator images along the multiplication table (breadth first)."""
        if set(gen_images) != set(group.generators):
            raise RepError("need an image for every generator")
        dim = len(next(iter(gen_images.values())))
        order = next(iter(gen_images.values()))[0][0].order
        images: list[Optional[Matrix]] = [None] * group.size
        images[0] = linalg.identity(dim, order)
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for s in group.generators:
                    h = group.mult[g][s]
                    if images[h] is None:
                        images[h] = linalg.mat_mul(images[g], gen_images[s])
                        nxt.append(h)
            frontier = nxt
        if any(m is None for m in images):
            raise RepError("generators do not generate the group")
        return cls(group, tuple(images), label)

    @classmethod
    def natural(cls, group: Group, label: str = "rho") -> "MatrixRep":
        if group.matrices is None:
            raise RepError("group carries no matrices")
        return cls(group, tuple(group.matrices), label)

    @property
    def dim(self) -> int:
        return len(self.images[0])

    def __call__(self, g: int) -> Matrix:
        return self.images[g]

    def twist(self, theta: Character) -> "MatrixRep":
        if theta.group is not self.group or theta.degree != 1:
            raise RepError("twist needs a linear character of the same group")
        return MatrixRep(self.group, tuple(linalg.scale(theta(g), m) for g, m in enumerate(self.images)),
                         f"{self.label}*{theta.label}")

    def verify(self, pairs: Optional[Sequence[tuple[int, int]]] = None) -> bool:
        keys = [linalg.mat_key(m) for m in self.images]
        G = self.group
        it = pairs if pairs is not None else ((a, b) for a in range(G.size) for b in range(G.size))
        return all(linalg.mat_key(linalg.mat_mul(self.images[a], self.images[b])) == keys[G.mult[a][b]]
                   for a, b in it)


def char_of_rep(rep: MatrixRep) -> Character:
    G = rep.group
    return Character(G, tuple(linalg.trace(rep(r)) for r in G.classes.reps), rep.label)


# -- eigenvalues -----------------------------------------------------------

@dataclass(frozen=True)
class EigenMultiset:
    """Eigenvalues zeta_n^k, stored as the sorted exponents k mod n."""

    n: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted(k % self.n for k in self.exponents)))

    @property
    def values(self) -> tuple[CycNum, ...]:
        return tuple(CycNum.zeta(self.n, k) for k in self.exponents)

    def negate(self) -> "EigenMultiset":
        if self.n % 2:
            raise RepError("negation needs an even root-of-unity order")
        return EigenMultiset(self.n, tuple(k + self.n // 2 for k in self.exponents))

    def power(self, e: int) -> "EigenMultiset":
        return EigenMultiset(self.n, tuple(e * k for k in self.exponents))

    def exterior_square(self) -> "EigenMultiset":
        return EigenMultiset(self.n, tuple(a + b for a, b in combinations(self.exponents, 2)))

    def product(self) -> CycNum:
        return CycNum.zeta(self.n, sum(self.exponents))

    def element_order(self, k: int) -> int:
        return self.n // gcd(k % self.n, self.n)


def eigen_multiset(rep: MatrixRep, g: int, n: Optional[int] = None) -> EigenMultiset:
    """Roots of the exact characteristic polynomial found among the n-th roots of unity."""
    n = n or rep.group.exponent
    m = rep(g)
    order = m[0][0].order
    if order % n:
        raise RepError(f"matrix field Q(zeta_{order}) does not contain the {n}-th roots of unity")
    poly = linalg.charpoly(m)
    found = []
    k = 0
    while len(poly) > 1 and k < n:
        root = CycNum.zeta(n, k).promote(order)
        if linalg.poly_eval(poly, root).is_zero():
            poly = linalg.poly_divide_linear(poly, root)
            found.append(k)
        else:
            k += 1
    if len(poly) > 1:
        raise RepError("characteristic polynomial has a root that is not a root of unity of the expected order")
    return EigenMultiset(n, tuple(found))


@dataclass(frozen=True)
class Violation:
    g: int
    h: int
    eigen_g: tuple[int, ...]
    eigen_h: tuple[int, ...]


def ambiguity_scan(rep: MatrixRep, n: Optional[int] = None) -> list[Violation]:
    """All ordered pairs whose exterior-square and 5th-power spectra agree but whose spectra differ."""
    G = rep.group
    n = n or G.exponent
    spectra = [eigen_multiset(rep, g, n) for g in range(G.size)]
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for g, s in enumerate(spectra):
        buckets[(s.exterior_square().exponents, s.power(5).exponents)].append(g)
    out = []
    for members in buckets.values():
        for g in members:
            for h in members:
                if spectra[g] != spectra[h]:
                    out.append(Violation(g, h, spectra[g].exponents, spectra[h].exponents))
    out.sort(key=lambda v: (v.g, v.h))
    return out


def ambiguity_scan_pairs(rep: MatrixRep, n: Optional[int] = None) -> tuple[int, list[Violation]]:
    """Same scan done literally over every ordered pair; returns (pairs examined, violations)."""
    G = rep.group
    n = n or G.exponent
    spectra = [eigen_multiset(rep, g, n) for g in range(G.size)]
    ext = [s.exterior_square() for s in spectra]
    fifth = [s.power(5) for s in spectra]
    out = []
    count = 0
    for g in range(G.size):
        for h in range(G.size):
            count += 1
            if ext[g] == ext[h] and fifth[g] == fifth[h] and spectra[g] != spectra[h]:
                out.append(Violation(g, h, spectra[g].exponents, spectra[h].exponents))
    return count, out


def negative_control_rep() -> MatrixRep:
    """<D, -I> with D = diag(1, -z5, z5^2, -z5^3): D and -D fool both spectral tests."""
    z5 = CycNum.zeta(5).promote(ORDER)
    d = linalg.matrix([[1, 0, 0, 0], [0, -z5, 0, 0], [0, 0, z5 ** 2, 0], [0, 0, 0, -(z5 ** 3)]], ORDER)
    from .groups import closure_from_matrices

    minus = linalg.scale(-1, linalg.identity(4, ORDER))
    grp = closure_from_matrices([d, minus], cap=100, name="control")
    return MatrixRep.natural(grp, "control")


@dataclass(frozen=True)
class SignFlipWitness:
    a: int  # exponents mod n
    b: int
    ratio: int
    ratio_order: int
    n: int


def sign_flip_witness(s: EigenMultiset) -> Optional[SignFlipWitness]:
    """If -S != S but S and -S have equal 5th-power multisets, exhibit b = -zeta_5^k a with k != 0."""
    n = s.n
    if n % 10:
        raise RepError("entries must be roots of unity of order dividing a multiple of 10")
    neg = s.negate()
    if neg == s or neg.power(5) != s.power(5):
        return None
    half = n // 2
    exps = s.exponents
    # a perfect matching x -> y with x^5 = -y^5 exists since the 5th-power multisets agree
    for perm in permutations(range(len(exps))):
        if all((5 * exps[i] - 5 * exps[j] - 5 * half) % n == 0 for i, j in zip(range(len(exps)), perm)):
            for i, j in zip(range(len(exps)), perm):
                r = (exps[j] - exps[i]) % n
                if r != half:
                    return SignFlipWitness(exps[i], exps[j], r, n // gcd(r, n), n)
    raise RepError("no matching found although the 5th-power multisets agree")


def sign_flip_oracle(n: int = 20, size: int = 4) -> dict:
    """Check every size-multiset of n-th roots: the hypothesis always forces an order-10 ratio."""
    hyp = forced = 0
    failures = []
    for exps in combinations_with_replacement(range(n), size):
        s = EigenMultiset(n, exps)
        neg = s.negate()
        hypothesis = neg != s and Counter(5 * k % n for k in exps) == Counter(5 * k % n for k in neg.exponents)
        ratio_orders = {n // gcd((b - a) % n, n) for a in exps for b in exps
                        if (5 * (b - a)) % n == (n // 2) % n}
        w = sign_flip_witness(s)
        if hypothesis:
            hyp += 1
            ok = (w is not None and w.ratio_order == 10 and 10 in ratio_orders
                  and (5 * w.ratio) % n == n // 2)
            forced += ok
            if not ok:
                failures.append(exps)
        elif w is not None:
            failures.append(exps)
    return {"multisets": sum(1 for _ in combinations_with_replacement(range(n), size)),
            "hypothesis_holds": hyp, "order10_forced": forced, "failures": failures}


# -- symplectic structure --------------------------------------------------

def symplectic_form(rep: MatrixRep, table: Optional[CharacterTable] = None) -> tuple[Matrix, Character]:
    """J and linear nu with g^T J g = nu(g) J for all g; J normalized by its first nonzero entry."""
    G = rep.group
    table = table or character_table(G)
    n = rep.dim
    order = rep(0)[0][0].order
    for nu in table.linear():
        rows = []
        for s in G.generators:
            g = rep(s)
            val = nu(s)
            for a in range(n):
                for b in range(n):
                    row = [linalg.const(0, order)] * (n * n)
                    for c in range(n):
                        for d in range(n):
                            coef = g[c][a] * g[d][b]
                            if not coef.is_zero():
                                row[n * c + d] = row[n * c + d] + coef
                    row[n * a + b] = row[n * a + b] - val
                    rows.append(row)
        basis = linalg.nullspace(rows, n * n, order)
        if not basis:
            continue
        if len(basis) > 1:
            raise RepError("invariant form is not unique; representation is reducible")
        j = tuple(tuple(basis[0][n * a: n * a + n]) for a in range(n))
        return j, nu
    raise RepError("no invariant bilinear form up to a linear character")


def is_antisymmetric(j: Matrix) -> bool:
    return all(j[a][b] == -j[b][a] for a in range(len(j)) for b in range(len(j)))


def preserves_form(rep: MatrixRep, j: Matrix, nu: Character, elements: Optional[Sequence[int]] = None) -> bool:
    for g in (elements if elements is not None else range(rep.group.size)):
        m = rep(g)
        lhs = linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), j), m)
        if linalg.mat_key(lhs) != linalg.mat_key(linalg.scale(nu(g), j)):
            return False
    return True


# -- exterior-square decomposition ------------------------------------------

@dataclass
class PolarizationRow:
    chi: Character
    indicator: Fraction
    nu: Character
    nu_count: int  # how many linear characters occur in the exterior square
    r: Character
    r_irreducible: bool
    lam: Optional[Character]  # linear character of H with Ind lam = r
    restriction_irreducible: bool
    form_nu: Optional[Character] = None


def polarization(chi: Character, table: CharacterTable, H: Group) -> PolarizationRow:
    ext = exterior_square(chi)
    linear = [(lam, inner(ext, lam)) for lam in table.linear()]
    hits = [lam for lam, m in linear if m != 0]
    if len(hits) != 1 or inner(ext, hits[0]) != 1:
        raise CharacterError("exterior square does not contain exactly one linear character")
    nu = hits[0]
    r = ext - nu
    r_irr = inner(r, r) == 1 and r.degree == 5
    lam_found = None
    for lam in character_table(H).linear():
        if induce(lam) == r:
            lam_found = lam
            break
    res = restrict(chi, H)
    return PolarizationRow(chi, fs_indicator(chi), nu, len(hits), r, r_irr, lam_found, inner(res, res) == 1)


def polarization_table(G: Group, H: Group) -> list[PolarizationRow]:
    table = character_table(G)
    return [polarization(chi, table, H) for chi in table.of_degree(4)]


def four_dim_reps(G: Group) -> list[MatrixRep]:
    """The natural rep and its twists by the linear characters, ordered like the character table."""
    table = character_table(G)
    base = MatrixRep.natural(G)
    reps = [base.twist(theta) for theta in table.linear()]
    by_index = sorted(reps, key=lambda r: table.index(char_of_rep(r)))
    return by_index

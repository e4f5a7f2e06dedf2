"""Local L-factors from characters, the Artin formalism as exact polynomial identities, partial Euler products."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import mpmath

from . import linalg
from .characters import Character, CharacterTable, character_table, induce
from .cyclotomic import CycNum, embed, format_cyc
from .groups import Group
from .linalg import Poly
from .numeric import DEFAULT_PRECISION, ComplexApprox
from .standard import ORDER


class LFunctionError(Exception):
    pass


def _c(x, order: int = ORDER) -> CycNum:
    return linalg.const(x, order)


def newton_elementary(power_sums: Sequence[CycNum], d: int) -> list[CycNum]:
    """e_0..e_d from p_1..p_d by k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i."""
    if len(power_sums) < d:
        raise LFunctionError("need d power sums")
    order = power_sums[0].order if power_sums else ORDER
    e = [_c(1, order)]
    for k in range(1, d + 1):
        acc = _c(0, order)
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc * Fraction(1, k))
    return e


@dataclass(frozen=True)
class LocalFactor:
    """det(1 - rho(Fr) T); T stands for q^-s."""

    q: Optional[int]
    cls: int
    poly: Poly

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def key(self) -> tuple:
        return tuple(c.key() for c in self.poly)

    def __eq__(self, other):
        if not isinstance(other, LocalFactor):
            return NotImplemented
        return linalg.poly_equal(self.poly, other.poly)

    def __hash__(self):
        return hash(tuple(hash(c) for c in linalg.poly_trim(self.poly)))

    def exact_strings(self) -> list[str]:
        return [format_cyc(c) for c in self.poly]


def det_poly(chi: Character, cls: int) -> Poly:
    """Coefficients of det(1 - A T) for A in class cls of a representation with character chi."""
    G = chi.group
    d = chi.degree
    if d.denominator != 1 or d < 0:
        raise LFunctionError("degree is not a non-negative integer; not a character")
    d = int(d)
    g = G.classes.reps[cls]
    sums = [chi(G.power(g, k)) for k in range(1, d + 2)]
    e = newton_elementary(sums, d + 1)
    if not e[d + 1].is_zero():
        raise LFunctionError("power sums are not those of a d-element multiset; not a character")
    poly = [c if k % 2 == 0 else -c for k, c in enumerate(e[:d + 1])]
    return linalg.poly_trim(poly)


def local_factor(chi: Character, cls: int, q: Optional[int] = None) -> LocalFactor:
    return LocalFactor(q, cls, det_poly(chi, cls))


def poly_product(polys: Iterable[Poly], order: int = ORDER) -> Poly:
    out: Poly = (_c(1, order),)
    for p in polys:
        out = linalg.poly_mul(out, p)
    return out


# -- identity reports -------------------------------------------------------

@dataclass
class IdentityReport:
    name: str
    per_class: list[bool]
    counterexample: Optional[int] = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.per_class) and bool(self.per_class)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "per_class": self.per_class,
                "counterexample_class": self.counterexample, **self.detail}


def _report(name: str, results: list[bool], detail: Optional[dict] = None) -> IdentityReport:
    bad = next((i for i, ok in enumerate(results) if not ok), None)
    return IdentityReport(name, results, bad, detail or {})


def verify_direct_sum(chi: Character, parts: Sequence[Character], name: str = "direct_sum") -> IdentityReport:
    G = chi.group
    results = []
    for c in range(len(G.classes)):
        lhs = det_poly(chi, c)
        rhs = poly_product(det_poly(p, c) for p in parts)
        results.append(linalg.poly_equal(lhs, rhs))
    return _report(name, results)


def coset_orbit_factor(lam: Character, g: int) -> Poly:
    """prod over <g>-orbits on G/H of (1 - lam(x^-1 g^f x) T^f), H = lam.group normal of finite index."""
    H = lam.group
    G = H.parent
    local = {h: i for i, h in enumerate(H.embedding)}
    hset = set(H.embedding)
    # coset of x is identified by its least element
    coset_rep: dict[int, int] = {}
    reps = []
    for x in range(G.size):
        if x in coset_rep:
            continue
        members = [G.mult[x][h] for h in H.embedding]
        for m in members:
            coset_rep[m] = x
        reps.append(x)
    seen = set()
    factors = []
    for x in reps:
        if x in seen:
            continue
        f, y = 0, x
        while True:
            y = coset_rep[G.mult[g][y]]
            f += 1
            seen.add(y)
            if y == x:
                break
        gf = G.power(g, f)
        h = G.conj(gf, x)
        if h not in hset:
            raise LFunctionError("orbit product left the subgroup")
        poly = [_c(0)] * (f + 1)
        poly[0] = _c(1)
        poly[f] = -lam(local[h])
        factors.append(tuple(poly))
    return poly_product(factors)


def verify_inductivity(lam: Character, name: str = "inductivity") -> IdentityReport:
    ind = induce(lam)
    G = ind.group
    results = []
    for c, g in enumerate(G.classes.reps):
        results.append(linalg.poly_equal(det_poly(ind, c), coset_orbit_factor(lam, g)))
    return _report(name, results)


def verify_dedekind(G: Group, table: Optional[CharacterTable] = None, name: str = "dedekind") -> IdentityReport:
    """prod_chi det_poly(chi, c)^deg(chi) == (1 - T^m)^(|G|/m) with m the order of c."""
    table = table or character_table(G)
    results = []
    for c, g in enumerate(G.classes.reps):
        m = G.element_orders[g]
        lhs = poly_product(linalg.poly_pow(det_poly(chi, c), int(chi.degree)) for chi in table)
        base = [_c(0)] * (m + 1)
        base[0], base[m] = _c(1), _c(-1)
        rhs = linalg.poly_pow(tuple(base), G.size // m)
        results.append(linalg.poly_equal(lhs, rhs))
    return _report(name, results)


def verify_twisting(chi: Character, theta: Character, name: str = "twisting") -> IdentityReport:
    """det_poly(chi * theta, c)(T) == det_poly(chi, c)(theta(c) T)."""
    G = chi.group
    tw = chi * theta
    results = []
    for c in range(len(G.classes)):
        lhs = det_poly(tw, c)
        rhs = linalg.poly_scale_var(det_poly(chi, c), theta.values[c])
        results.append(linalg.poly_equal(lhs, rhs))
    return _report(name, results)


def verify_matrix_oracle(rep, name: str = "newton_vs_matrix") -> IdentityReport:
    from .reps import char_of_rep

    chi = char_of_rep(rep)
    G = rep.group
    results = []
    for c, g in enumerate(G.classes.reps):
        results.append(linalg.poly_equal(det_poly(chi, c), linalg.det_one_minus_tA(rep(g))))
    return _report(name, results)


# -- numerics ---------------------------------------------------------------

def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def _p_to_minus_s(p: int, s: complex, precision: int) -> ComplexApprox:
    with mpmath.workprec(precision):
        v = mpmath.power(mpmath.mpf(p), -mpmath.mpc(s))
    # mpmath's power is accurate to a few ulps; allow 8
    return ComplexApprox(v, 8 * 2.0 ** (-precision) * float(abs(v)), precision)


def eval_poly(poly: Sequence[ComplexApprox], t: ComplexApprox) -> ComplexApprox:
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * t + c
    return acc


@dataclass
class PartialL:
    label: str
    s: complex
    bound: int
    value: ComplexApprox
    included: int
    skipped: dict[str, list[int]]  # reason -> primes, e.g. "ramified", "ambiguous", "unmatched"

    def to_json(self) -> dict:
        return {"label": self.label, "s": [self.s.real, self.s.imag], "bound": self.bound,
                "value": self.value.to_json(), "included_primes": self.included,
                "skipped": {k: v for k, v in sorted(self.skipped.items())},
                "skipped_count": sum(len(v) for v in self.skipped.values())}


# A factor source maps a prime to an exact polynomial in T, None for a ramified prime,
# or a string naming why the prime is left out ("ambiguous", "unmatched", ...).
FactorSource = Callable[[int], object]


def partial_L(label: str, factor_source: FactorSource, s: complex, bound: int,
              precision: int = DEFAULT_PRECISION) -> PartialL:
    """Euler product over p <= bound in ascending order; excluded primes are reported, never guessed."""
    s = complex(s)
    if s.real <= 1:
        raise LFunctionError("need Re(s) > 1")
    value = ComplexApprox.exact(1, precision)
    cache: dict[tuple, list[ComplexApprox]] = {}
    included = 0
    skipped: dict[str, list[int]] = {}
    for p in primes_up_to(bound):
        poly = factor_source(p)
        if poly is None or isinstance(poly, str):
            skipped.setdefault(poly or "ramified", []).append(p)
            continue
        key = tuple(c.key() for c in poly)
        approx = cache.get(key)
        if approx is None:
            approx = [embed(c, precision) for c in poly]
            cache[key] = approx
        value = value / eval_poly(approx, _p_to_minus_s(p, s, precision))
        included += 1
    return PartialL(label, s, bound, value, included, skipped)


def trivial_source(p: int) -> Poly:
    return (_c(1, 1), _c(-1, 1))


def character_source(chi: Character, frobenius: Callable[[int], Optional[frozenset]]) -> FactorSource:
    """Unambiguous primes only: every candidate class must give the same local factor."""
    polys: dict[int, Poly] = {}

    def source(p: int):
        cands = frobenius(p)
        if cands is None:
            return None
        if not cands:
            return "unmatched"
        keys = set()
        for c in cands:
            if c not in polys:
                polys[c] = det_poly(chi, c)
            keys.add(tuple(x.key() for x in polys[c]))
        if len(keys) != 1:
            return "ambiguous"
        return polys[next(iter(cands))]

    return source


def tail_bound(value: ComplexApprox, dim: int, sigma: float, bound: int) -> float:
    """Bound on |L_inf - L_X| for a product of dim unitary factors, Re s = sigma > 1."""
    tau = dim * bound ** (1 - sigma) / ((sigma - 1) * (1 - bound ** (-sigma)))
    return (float(abs(value.value)) + value.err) * math.expm1(tau)


def zeta2_oracle(terms: int) -> tuple[float, float]:
    """sum_{n<=N} 1/n^2 with the interval [1/(N+1), 1/N] for the tail."""
    s = math.fsum(1.0 / (n * n) for n in range(1, terms + 1))
    return s + 1.0 / (terms + 1), s + 1.0 / terms


# -- quintic Dirichlet characters mod 11 ------------------------------------

def discrete_log_mod11(p: int) -> int:
    a = p % 11
    if a == 0:
        raise LFunctionError("11 divides p")
    x = 1
    for k in range(10):
        if x == a:
            return k
        x = x * 2 % 11
    raise LFunctionError("2 does not generate (Z/11)^x")


def quintic_character(j: int, p: int) -> CycNum:
    """chi_j(p) = zeta_5^(j * log_2 p), the characters of (Z/11)^x / {+-1}."""
    return CycNum.zeta(5, j * discrete_log_mod11(p)).promote(ORDER)


def dirichlet_factor(p: int, characters: Sequence[int] = (0, 1, 2, 3, 4)) -> Poly:
    return linalg.one_minus_poly([quintic_character(j, p) for j in characters], [1] * len(characters), ORDER)


def splitting_factor(degrees: Sequence[int]) -> Poly:
    """prod over primes above p of (1 - T^f)."""
    out: Poly = (_c(1),)
    for f in degrees:
        base = [_c(0)] * (f + 1)
        base[0], base[f] = _c(1), _c(-1)
        out = linalg.poly_mul(out, tuple(base))
    return out


def dedekind_e_source(p: int):
    """Local factor of zeta_E read off from the splitting of p in E."""
    from .tower import NumberField, E_POLY, split_prime

    if p == 11:
        return None
    st = split_prime(NumberField("E", E_POLY), p)
    return None if st.ramified else splitting_factor(st.degrees)


def dirichlet_source(p: int):
    return None if p == 11 else dirichlet_factor(p)


def dirichlet_cross_check(bound: int) -> IdentityReport:
    """Splitting-derived local factor of zeta_E equals prod_j (1 - chi_j(p) T) for every p != 11."""
    if bound < 100:
        raise LFunctionError("bound must be at least 100")
    primes, results, skipped = [], [], []
    for p in primes_up_to(bound):
        lhs = dedekind_e_source(p)
        if lhs is None:
            skipped.append(p)
            continue
        primes.append(p)
        results.append(linalg.poly_equal(lhs, dirichlet_factor(p)))
    rep = _report("dirichlet_cross_check", results, {"primes_checked": len(primes), "skipped": skipped})
    if rep.counterexample is not None:
        rep.detail["counterexample_prime"] = primes[rep.counterexample]
    return rep

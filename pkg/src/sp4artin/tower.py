"""The explicit tower over E = Q(zeta_11 + zeta_11^-1), prime splitting, and Frobenius fingerprints.

Absolute defining polynomials come from iterated resultants (sympy), made monic
and integral by scaling the primitive element.  Splitting of a prime is read off
from the distinct-degree factorization of the defining polynomial mod p.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

import sympy
from sympy import Poly, expand, invert, resultant, symbols

from . import polyfp
from .cyclotomic import alpha, minimal_polynomial
from .groups import Group, coset_action, cycle_type
from .lfunction import primes_up_to

TOWER_VERSION = "1"
E_POLY = (1, 3, -3, -4, 1, 1)  # x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1, lowest degree first
SKIP_ALWAYS = (2, 5, 11)

_x, _y, _a, _b, _t = symbols("x y a b t")


class TowerError(Exception):
    pass


@dataclass(frozen=True)
class NumberField:
    label: str
    poly: tuple[int, ...]  # monic, integer, lowest degree first
    base: Optional[str] = None
    relative: str = ""  # description of the layer over the base
    primitive_element: str = ""
    scale: int = 1  # the defining polynomial is that of scale * (primitive element)
    shift: int = 0  # primitive element was theta + shift * y
    radicand_norm: Optional[int] = None

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def to_json(self) -> dict:
        d = asdict(self)
        d["poly"] = list(self.poly)
        d["degree"] = self.degree
        return d

    @classmethod
    def from_json(cls, d: dict) -> "NumberField":
        d = dict(d)
        d.pop("degree", None)
        d["poly"] = tuple(d["poly"])
        return cls(**d)


# -- construction ---------------------------------------------------------

def _e_modulus():
    return sum(c * _y ** k for k, c in enumerate(E_POLY))


def alpha_in_y(k: int):
    """alpha_k as a polynomial in y = alpha_1, reduced mod the minimal polynomial of alpha_1."""
    m = _e_modulus()
    prev, cur = sympy.Integer(2), _y
    if k % 11 == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, expand(_y * cur - prev)
    return sympy.rem(cur, m, _y)


def _reduce(expr):
    return sympy.rem(expand(expr), _e_modulus(), _y)


def monic_integral(coeffs: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    """Least d > 0 with d^n f(x/d) integral for monic rational f; returns (that polynomial, d)."""
    n = len(coeffs) - 1
    if Fraction(coeffs[-1]) != 1:
        lead = Fraction(coeffs[-1])
        coeffs = [Fraction(c) / lead for c in coeffs]
    need: dict[int, int] = {}
    for k, c in enumerate(coeffs[:-1]):
        c = Fraction(c)
        if c == 0:
            continue
        for q, v in sympy.factorint(c.denominator).items():
            need[q] = max(need.get(q, 0), -(-v // (n - k)))
    d = 1
    for q, e in need.items():
        d *= q ** e
    out = tuple(int(Fraction(c) * d ** (n - k)) for k, c in enumerate(coeffs))
    return out, d


def _absolute(eliminant) -> list[Fraction]:
    p = Poly(eliminant, _x)
    coeffs = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in reversed(p.all_coeffs())]
    return coeffs


def _squarefree(expr) -> bool:
    p = Poly(expr, _x, domain="QQ")
    return p.gcd(p.diff(_x)).degree() == 0


def _eliminate(build, degree: int, max_shift: int = 20):
    """build(c) returns the eliminant for theta + c*y; first squarefree c wins."""
    for c in range(max_shift + 1):
        elim = build(c)
        if Poly(elim, _x).degree() != degree:
            raise TowerError("resultant has the wrong degree")
        if _squarefree(elim):
            return elim, c
    raise TowerError("no squarefree eliminant within the shift budget")


def _field(label, elim, shift, **kw) -> NumberField:
    poly, d = monic_integral(_absolute(elim))
    return NumberField(label, poly, scale=d, shift=shift, **kw)


def _norm(expr) -> int:
    # norm from E to Q of an element given as a polynomial in y
    res = resultant(_e_modulus(), _x - expr, _y)
    val = Poly(res, _x).eval(0)
    return int(val) * (-1) ** 5


RADICANDS = {
    "EA": "3 + alpha_5",
    "EB": "1 + alpha_1^2 + alpha_1^2 alpha_3^2",
    "EC": "alpha_2 + alpha_4 + 4",
}


def _radicand_exprs():
    a1, a2, a3, a4, a5 = (alpha_in_y(k) for k in range(1, 6))
    return {
        "EA": _reduce(3 + a5),
        "EB": _reduce(1 + a1 ** 2 + a1 ** 2 * a3 ** 2),
        "EC": _reduce(a2 + a4 + 4),
    }


def build_tower(include_degree40: bool = True) -> list[NumberField]:
    m = _e_modulus()
    e_min = tuple(int(c) for c in minimal_polynomial(alpha(1)))
    if e_min != E_POLY:
        raise TowerError("minimal polynomial of alpha_1 disagrees with the stored polynomial")
    fields = [NumberField("E", E_POLY, relative="Q(alpha_1)", primitive_element="alpha_1")]
    rad = _radicand_exprs()
    inv = {k: invert(v, m, _y) for k, v in rad.items()}
    # A = (3+alpha_5)^(-1/2), B = (1+alpha_1^2+alpha_1^2 alpha_3^2)^(-1/2), C = (alpha_2+alpha_4+4)^(1/2)
    layer = {"EA": (inv["EA"], "A"), "EB": (inv["EB"], "B"), "EC": (rad["EC"], "C")}
    for label, (square, name) in layer.items():
        elim, c = _eliminate(lambda c, sq=square: resultant(expand((_x - c * _y) ** 2) - sq, m, _y), 10)
        fields.append(_field(label, elim, c, base="E", relative=f"{name}^2 = ({RADICANDS[label]})"
                             + ("^-1" if label != "EC" else ""), primitive_element=name,
                             radicand_norm=_norm(rad[label])))
    if include_degree40:
        sa, sb = inv["EA"], inv["EB"]

        def k_elim(c):
            p = expand((_x - c * _y) ** 2 - (1 + _a) * (1 + _b))
            r = resultant(p, _b ** 2 - sb, _b)
            r = resultant(r, _a ** 2 - sa, _a)
            return resultant(r, m, _y)

        elim, c = _eliminate(k_elim, 40)
        fields.append(_field("K", elim, c, base="E", relative="gamma^2 = 1 + A + B + AB",
                             primitive_element="gamma"))
        a1, a2 = alpha_in_y(1), alpha_in_y(2)
        # beta^2 = alpha_1 + i alpha_2  <=>  (beta^2 - alpha_1)^2 + alpha_2^2 = 0 over E
        quartic = expand(_t ** 4 - 2 * a1 * _t ** 2 + _reduce(a1 ** 2 + a2 ** 2))

        def m_elim(c):
            p = expand((_x - _t - c * _y) ** 2 - rad["EC"])
            r = resultant(p, quartic, _t)
            return resultant(r, m, _y)

        elim, c = _eliminate(m_elim, 40)
        fields.append(_field("M", elim, c, base="E",
                             relative="beta^2 = alpha_1 + i alpha_2, C^2 = alpha_2 + alpha_4 + 4",
                             primitive_element="beta + C"))
    return fields


def load_or_build(cache_path: Optional[str], include_degree40: bool = True) -> list[NumberField]:
    """Tower from a versioned JSON cache; rebuilt and rewritten on a version mismatch."""
    if cache_path and os.path.exists(cache_path):
        try:
            with open(cache_path, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("version") == TOWER_VERSION:
                fields = [NumberField.from_json(d) for d in data["fields"]]
                if include_degree40 or len(fields) >= 4:
                    return [f for f in fields if include_degree40 or f.degree < 40]
        except (OSError, ValueError, KeyError, TypeError):
            pass
    fields = build_tower(include_degree40)
    if cache_path:
        with open(cache_path, "w", encoding="utf-8") as fh:
            json.dump({"version": TOWER_VERSION, "fields": [f.to_json() for f in fields]}, fh,
                      indent=1, sort_keys=True)
    return fields


# -- splitting ------------------------------------------------------------

@dataclass(frozen=True)
class SplittingType:
    degrees: tuple[int, ...]  # residue degrees, sorted; empty when ramified
    ramified: bool = False  # a repeated factor mod p (true ramification or an index divisor)

    def to_json(self):
        return {"degrees": list(self.degrees), "ramified": self.ramified}


def split_prime(F: NumberField, p: int) -> SplittingType:
    if F.poly[-1] != 1:
        raise TowerError("defining polynomial must be monic")
    f = polyfp.trim(F.poly, p)
    if not polyfp.is_squarefree(f, p):
        return SplittingType((), True)
    degrees = tuple(polyfp.distinct_degree(f, p))
    if sum(degrees) != F.degree:
        raise TowerError("residue degrees do not add up to the field degree")
    return SplittingType(degrees)


def mod11_residue_degree(p: int) -> int:
    """Least f with p^f = +-1 mod 11: the residue degree of p in E."""
    if p % 11 == 0:
        raise TowerError("11 ramifies in E")
    x = p % 11
    for f in range(1, 6):
        if x in (1, 10):
            return f
        x = x * p % 11
    raise TowerError("unreachable")


# -- fingerprints ----------------------------------------------------------

def order16_subgroups(G: Group, H: Group, u: int) -> list[frozenset]:
    """One order-16 subgroup of H per orbit of <u>-conjugation, in a fixed order."""
    hset = frozenset(H.embedding)
    subs = set()
    elems = sorted(hset)
    for trio in combinations([g for g in elems if g], 3):
        S = G.generate(trio)
        if len(S) == 16:
            subs.add(S)
    orbits = []
    seen = set()
    for S in sorted(subs, key=lambda s: sorted(s)):
        if S in seen:
            continue
        orbit = [S]
        cur = S
        for _ in range(4):
            cur = frozenset(G.conj(g, u) for g in cur)
            orbit.append(cur)
        seen.update(orbit)
        orbits.append(min(orbit, key=lambda s: sorted(s)))
    return orbits


@dataclass
class FingerprintTable:
    labels: list[str]  # the coset spaces, e.g. "G/H", "G/S0"
    types: list[tuple[tuple[int, ...], ...]]  # types[class][i] = cycle type on coset space i
    class_sizes: list[int]
    group_order: int

    def cell_key(self, cls: int) -> tuple:
        t = self.types[cls]
        return (t[0], tuple(sorted(t[1:])))


def fingerprint_table(G: Group, subgroups: Sequence[frozenset], labels: Sequence[str]) -> FingerprintTable:
    types = []
    for rep in G.classes.reps:
        types.append(tuple(cycle_type(coset_action(G, S, rep)) for S in subgroups))
    return FingerprintTable(list(labels), types, list(G.classes.sizes), G.size)


def standard_fingerprint_table(std) -> FingerprintTable:
    subs = [frozenset(std.H.embedding)] + order16_subgroups(std.G, std.H, std.u_index)
    return fingerprint_table(std.G, subs, ["G/H"] + [f"G/S{i}" for i in range(len(subs) - 1)])


@dataclass
class FrobeniusReport:
    p: int
    observed: dict  # field label -> residue degrees
    candidates: list[int]
    ambiguous: bool

    def to_json(self) -> dict:
        return {"p": self.p, "observed": {k: list(v) for k, v in self.observed.items()},
                "candidates": self.candidates, "ambiguous": self.ambiguous}


def _matches(table: FingerprintTable, cls: int, e_type, layer_types: Sequence[tuple]) -> bool:
    t = table.types[cls]
    if e_type is not None and t[0] != e_type:
        return False
    orbit_types = t[1:]
    # each degree-10 field sits at a distinct order-16 subgroup orbit; the pairing is unknown
    for perm in permutations(range(len(orbit_types)), len(layer_types)):
        if all(orbit_types[j] == lt for j, lt in zip(perm, layer_types)):
            return True
    return False


def frobenius_class(p: int, fields: Sequence[NumberField], table: FingerprintTable) -> FrobeniusReport:
    """Candidate classes of G compatible with the splitting of p in E and the degree-10 layers."""
    if p in SKIP_ALWAYS:
        raise TowerError(f"p = {p} is excluded (ramified or special)")
    observed = {}
    e_type = None
    layers = []
    for F in fields:
        st = split_prime(F, p)
        if st.ramified:
            raise TowerError(f"p = {p} has a repeated factor in {F.label}")
        observed[F.label] = st.degrees
        if F.degree == 5:
            e_type = st.degrees
        elif F.degree == 10:
            layers.append(st.degrees)
    cands = [c for c in range(len(table.types)) if _matches(table, c, e_type, layers)]
    return FrobeniusReport(p, observed, cands, len(cands) > 1)


def is_skipped(p: int, fields: Sequence[NumberField]) -> bool:
    return p in SKIP_ALWAYS or any(split_prime(F, p).ramified for F in fields)


@dataclass
class ChebotarevCell:
    classes: list[int]
    expected: float
    count: int = 0

    def deviation(self, n: int) -> Optional[float]:
        if n == 0:
            return 0.0
        se = math.sqrt(self.expected * (1 - self.expected) / n)
        obs = self.count / n
        if se == 0:
            return 0.0 if obs == self.expected else math.inf
        return (obs - self.expected) / se


@dataclass
class ChebotarevHistogram:
    bound: int
    cells: list[ChebotarevCell]
    unmatched: int
    unmatched_examples: list[int]
    total: int  # unramified primes used
    skipped: list[int]
    primes_considered: int
    tolerance: float = 5.0

    @property
    def max_deviation(self) -> float:
        devs = [abs(c.deviation(self.total)) for c in self.cells]
        if self.unmatched:
            devs.append(math.inf)
        return max(devs) if devs else 0.0

    @property
    def skipped_fraction(self) -> float:
        return len(self.skipped) / self.primes_considered if self.primes_considered else 0.0

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance and self.skipped_fraction < 0.01

    def to_json(self) -> dict:
        def dev(c):
            d = c.deviation(self.total)
            return None if math.isinf(d) else round(d, 6)

        return {
            "bound": self.bound, "unramified_primes": self.total, "primes_considered": self.primes_considered,
            "skipped": self.skipped, "skipped_fraction": round(self.skipped_fraction, 6),
            "cells": [{"classes": c.classes, "expected": round(c.expected, 8), "count": c.count,
                       "observed": round(c.count / self.total, 8) if self.total else 0.0,
                       "deviation_se": dev(c)} for c in self.cells],
            "unmatched": {"count": self.unmatched, "expected": 0.0, "examples": self.unmatched_examples},
            "max_abs_deviation_se": None if math.isinf(self.max_deviation) else round(self.max_deviation, 6),
            "passed": self.passed,
        }


def chebotarev_cells(table: FingerprintTable, use_layers: bool = True) -> dict[tuple, ChebotarevCell]:
    cells: dict[tuple, ChebotarevCell] = {}
    for c in range(len(table.types)):
        key = table.cell_key(c) if use_layers else (table.types[c][0],)
        cell = cells.setdefault(key, ChebotarevCell([], 0.0))
        cell.classes.append(c)
        cell.expected += table.class_sizes[c] / table.group_order
    return cells


def chebotarev_histogram(bound: int, fields: Sequence[NumberField], table: FingerprintTable,
                         tolerance: float = 5.0, example_limit: int = 20) -> ChebotarevHistogram:
    if bound < 100:
        raise TowerError("bound must be at least 100")
    e_field = next(F for F in fields if F.degree == 5)
    layers = [F for F in fields if F.degree == 10]
    use_layers = bool(layers)
    cells = chebotarev_cells(table, use_layers)
    unmatched, examples, skipped = 0, [], []
    primes = primes_up_to(bound)
    total = 0
    for p in primes:
        if p in SKIP_ALWAYS:
            skipped.append(p)
            continue
        types = [split_prime(F, p) for F in [e_field] + layers]
        if any(t.ramified for t in types):
            skipped.append(p)
            continue
        total += 1
        key = (types[0].degrees, tuple(sorted(t.degrees for t in types[1:]))) if use_layers else (types[0].degrees,)
        # residue degrees and cycle types are both sorted tuples, so they compare directly
        cell = cells.get(key)
        if cell is None:
            unmatched += 1
            if len(examples) < example_limit:
                examples.append(p)
        else:
            cell.count += 1
    ordered = sorted(cells.values(), key=lambda c: c.classes)
    return ChebotarevHistogram(bound, ordered, unmatched, examples, total, skipped, len(primes), tolerance)


def e_split_agrees_with_mod11(bound: int, e_field: Optional[NumberField] = None) -> tuple[int, list[int]]:
    """Checks split_prime(E, p) against the mod-11 rule; returns (primes checked, disagreements)."""
    e_field = e_field or NumberField("E", E_POLY)
    bad = []
    checked = 0
    for p in primes_up_to(bound):
        if p == 11:
            if not split_prime(e_field, p).ramified:
                bad.append(p)
            continue
        st = split_prime(e_field, p)
        f = mod11_residue_degree(p)
        checked += 1
        if st.ramified or st.degrees != tuple([f] * (5 // f)):
            bad.append(p)
    return checked, bad


def layer_parity_diagnostic(bound: int, fields: Sequence[NumberField]) -> dict:
    """Among primes split in E, how often a degree-10 layer has an odd number of inert primes.

    When the five conjugates of a radicand span only a 4-dimensional space
    modulo squares (as an E_2^4 : C_5 closure requires), that count is always
    even; an odd count means the radicand's norm is not a square.
    """
    e_field = next(F for F in fields if F.degree == 5)
    out = {}
    for F in (F for F in fields if F.degree == 10):
        odd = split = 0
        for p in primes_up_to(bound):
            if p in SKIP_ALWAYS or split_prime(F, p).ramified:
                continue
            if split_prime(e_field, p).degrees != (1, 1, 1, 1, 1):
                continue
            split += 1
            inert = split_prime(F, p).degrees.count(2)
            odd += inert % 2
        out[F.label] = {"split_in_E": split, "odd_inert_count": odd, "radicand_norm": F.radicand_norm}
    return out

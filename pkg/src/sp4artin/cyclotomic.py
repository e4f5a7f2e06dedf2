"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored over the power basis 1, z, ..., z^(phi(N)-1) of
Q(zeta_N) as integer numerators with one common positive denominator,
always reduced modulo the N-th cyclotomic polynomial and in lowest terms.
Elements of different orders combine in Q(zeta_lcm).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

import mpmath

from .numeric import ComplexApprox

Rat = Fraction
Scalar = Union[int, Fraction, "CycNum"]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        num = _exact_div_monic(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num[:dd]), "inexact cyclotomic division"
    return quot


@lru_cache(maxsize=None)
def _reducer(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    # x^phi = -sum_{j<phi} c_j x^j; keep only nonzero terms
    phi_n = cyclotomic_poly(n)
    deg = len(phi_n) - 1
    return deg, tuple((j, -c) for j, c in enumerate(phi_n[:-1]) if c)


def _reduce(vec: list[int], n: int) -> list[int]:
    deg, tail = _reducer(n)
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            base = i - deg
            for j, t in tail:
                vec[base + j] += c * t
    if len(vec) < deg:
        vec.extend([0] * (deg - len(vec)))
    return vec[:deg]


@lru_cache(maxsize=None)
def _ramanujan(n: int) -> tuple[int, ...]:
    # trace of zeta_n^k from Q(zeta_n) down to Q
    out = []
    for k in range(totient(n)):
        g = gcd(n, k)
        m = n // g
        out.append(mobius(m) * totient(n) // totient(m))
    return tuple(out)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = den
    for a in nums:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g != 1:
        nums = [a // g for a in nums]
        den //= g
    return tuple(nums), den


class CycNum:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "nums", "den", "_hash")

    def __init__(self, order: int, nums: Sequence[int], den: int = 1):
        if order < 1:
            raise ValueError("order must be positive")
        vec = _reduce(list(nums), order)
        self.order = order
        self.nums, self.den = _normalize(vec, den)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, nums: tuple[int, ...], den: int) -> "CycNum":
        obj = cls.__new__(cls)
        obj.order = order
        obj.nums = nums
        obj.den = den
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, value: Union[int, Fraction], order: int = 1) -> "CycNum":
        value = Fraction(value)
        nums = [0] * totient(order)
        nums[0] = value.numerator
        return cls._raw(order, tuple(nums), value.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        """zeta_n^k with zeta_n = exp(2 pi i / n)."""
        vec = [0] * n
        vec[k % n] = 1
        return cls(n, vec)

    @classmethod
    def from_coeffs(cls, order: int, coeffs: Iterable[Union[int, Fraction]]) -> "CycNum":
        """Build sum_k coeffs[k] * zeta_order^k (any length; reduced on entry)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(order, [int(c * den) for c in fr], den)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def key(self) -> tuple:
        """Canonical encoding at this element's order (used for sorting)."""
        return (self.order, self.nums, self.den)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- order changes ----------------------------------------------------
    def promote(self, m: int) -> "CycNum":
        """Same value viewed in Q(zeta_m); m must be a multiple of the order."""
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"cannot promote order {self.order} to {m}")
        step = m // self.order
        vec = [0] * (step * len(self.nums) + 1)
        for k, a in enumerate(self.nums):
            if a:
                vec[k * step] = a
        return CycNum(m, vec, self.den)

    def demote(self, m: int) -> "CycNum":
        """Same value viewed in Q(zeta_m); raises ValueError if it does not lie there."""
        g = gcd(m, self.order)
        if g != self.order:
            basis = _promotion_solver(g, self.order)
            sol = basis.solve(self)
            if sol is None:
                raise ValueError(f"value does not lie in Q(zeta_{m})")
            low = CycNum.from_coeffs(g, sol)
        else:
            low = self
        return low.promote(lcm(g, m)) if lcm(g, m) != g else low

    def minimal_order(self) -> int:
        for d in divisors(self.order):
            try:
                self.demote(d)
                return d
            except ValueError:
                continue
        return self.order

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(other, self.order)
        return NotImplemented

    @staticmethod
    def _align(a: "CycNum", b: "CycNum") -> tuple["CycNum", "CycNum"]:
        if a.order == b.order:
            return a, b
        m = lcm(a.order, b.order)
        return a.promote(m), b.promote(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        if a.den == b.den:
            nums = [x + y for x, y in zip(a.nums, b.nums)]
            den = a.den
        else:
            nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
            den = a.den * b.den
        n, d = _normalize(nums, den)
        return CycNum._raw(a.order, n, d)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            n, d = _normalize([x * other.numerator for x in self.nums],
                              self.den * other.denominator)
            return CycNum._raw(self.order, n, d)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._align(self, other)
        an = [(i, x) for i, x in enumerate(a.nums) if x]
        bn = [(j, y) for j, y in enumerate(b.nums) if y]
        size = len(a.nums)
        if not an or not bn:
            return CycNum._raw(a.order, (0,) * size, 1)
        vec = [0] * (2 * size - 1)
        for i, x in an:
            for j, y in bn:
                vec[i + j] += x * y
        n, d = _normalize(_reduce(vec, a.order), a.den * b.den)
        return CycNum._raw(a.order, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        nz = [(k, x) for k, x in enumerate(self.nums) if x]
        if len(nz) == 1:
            # c * z^k  ->  c^-1 * z^-k
            k, x = nz[0]
            c = Fraction(self.den, x)
            vec = [0] * self.order
            vec[(-k) % self.order] = c.numerator
            return CycNum(self.order, vec, c.denominator)
        prod = CycNum.rational(1, self.order)
        for j in units(self.order)[1:]:
            prod = prod * self.galois_conjugate(j)
        norm = (prod * self).to_fraction()
        return prod * (1 / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- Galois action ----------------------------------------------------
    def galois_conjugate(self, j: int) -> "CycNum":
        """Apply zeta_N -> zeta_N^j (j coprime to N)."""
        n = self.order
        if gcd(j, n) != 1:
            raise ValueError(f"{j} is not coprime to {n}")
        vec = [0] * n
        for k, a in enumerate(self.nums):
            if a:
                vec[(k * j) % n] += a
        return CycNum(n, vec, self.den)

    def conj(self) -> "CycNum":
        return self.galois_conjugate(self.order - 1) if self.order > 2 else self

    def trace(self) -> Fraction:
        r = _ramanujan(self.order)
        return Fraction(sum(a * t for a, t in zip(self.nums, r)), self.den)

    def norm(self) -> Fraction:
        prod = self
        for j in units(self.order)[1:]:
            prod = prod * self.galois_conjugate(j)
        return prod.to_fraction()

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.order == other.order:
            return self.nums == other.nums and self.den == other.den
        a, b = self._align(self, other)
        return a.nums == b.nums and a.den == b.den

    def __hash__(self):
        # normalized trace is invariant under change of order, so it is
        # consistent with cross-order equality; use key() for fast dict keys
        if self._hash is None:
            self._hash = hash(self.trace() / totient(self.order))
        return self._hash

    def __repr__(self):
        return f"CycNum({self.order}, {format_cyc(self)})"

    def __str__(self):
        return format_cyc(self)


def format_cyc(a: CycNum, var: str | None = None) -> str:
    """Exact string such as '-1/2 + 3*z40^5' (power basis notation)."""
    var = var or f"z{a.order}"
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(f"{var}^{k}")
        elif c == -1:
            terms.append(f"-{var}^{k}")
        else:
            terms.append(f"{c}*{var}^{k}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, max(n, 2)) if gcd(j, n) == 1) if n > 1 else (1,)


class _LinearSolver:
    """Solve promote(x) == target for x in Q(zeta_low) by elimination over Q."""

    def __init__(self, low: int, high: int):
        cols = []
        for i in range(totient(low)):
            cols.append(CycNum.zeta(low, i).promote(high).coeffs)
        self.rows = len(cols[0])
        self.ncols = len(cols)
        self.cols = cols

    def solve(self, target: CycNum) -> list[Fraction] | None:
        m = [[self.cols[c][r] for c in range(self.ncols)] + [target.coeffs[r]]
             for r in range(self.rows)]
        piv_cols = []
        row = 0
        for col in range(self.ncols):
            p = next((r for r in range(row, self.rows) if m[r][col]), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for r in range(self.rows):
                if r != row and m[r][col]:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[row])]
            piv_cols.append(col)
            row += 1
        if any(m[r][-1] for r in range(row, self.rows)):
            return None
        sol = [Fraction(0)] * self.ncols
        for r, col in enumerate(piv_cols):
            sol[col] = m[r][-1]
        return sol


@lru_cache(maxsize=None)
def _promotion_solver(low: int, high: int) -> _LinearSolver:
    return _LinearSolver(low, high)


def galois_conjugate(a: CycNum, j: int) -> CycNum:
    return a.galois_conjugate(j)


def embed(a: Union[CycNum, int, Fraction], precision: int = 53) -> ComplexApprox:
    """Complex value under zeta_N -> exp(2 pi i / N), with a rigorous error bound."""
    if not isinstance(a, CycNum):
        a = CycNum.rational(a)
    u = 2.0 ** (-precision)
    with mpmath.workprec(precision + 10):
        total = mpmath.mpc(0)
        abs_sum = 0.0
        terms = 0
        for k, c in enumerate(a.coeffs):
            if not c:
                continue
            cval = mpmath.mpf(c.numerator) / c.denominator
            if k == 0:
                w = mpmath.mpc(1)
            else:
                w = mpmath.expjpi(mpmath.mpf(2 * k) / a.order)
            total += cval * w
            abs_sum += abs(float(c))
            terms += 1
    with mpmath.workprec(precision):
        value = mpmath.mpc(+total.real, +total.imag)
    if a.is_rational():
        c = a.to_fraction()
        with mpmath.workprec(precision):
            exact = mpmath.mpf(c.numerator) / c.denominator
            err = 0.0 if exact * c.denominator == c.numerator else u * abs(float(c))
        return ComplexApprox(mpmath.mpc(exact), err, precision)
    err = (4 + terms) * u * abs_sum
    return ComplexApprox(value, err, precision)


def minimal_polynomial(a: CycNum) -> tuple[Fraction, ...]:
    """Monic minimal polynomial over Q, coefficients lowest degree first."""
    orbit: dict[tuple, CycNum] = {}
    for j in units(a.order):
        b = a.galois_conjugate(j)
        orbit.setdefault(b.key(), b)
    poly = [CycNum.rational(1, a.order)]
    for b in orbit.values():
        # multiply by (x - b)
        shifted = [CycNum.rational(0, a.order)] + poly
        for i, c in enumerate(poly):
            shifted[i] = shifted[i] - b * c
        poly = shifted
    return tuple(c.to_fraction() for c in poly)


def primitive_integer_poly(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational polynomial to a primitive integer one with positive leading term."""
    den = 1
    for c in coeffs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return tuple(x // g for x in ints)


def alpha(i: int) -> CycNum:
    """zeta_11^i + zeta_11^-i."""
    return CycNum.zeta(11, i) + CycNum.zeta(11, -i)

"""Polynomials over GF(p) and distinct-degree factorization.

Polynomials are lists of ints in [0, p), lowest degree first, no trailing zeros
(the zero polynomial is the empty list).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

FPoly = list[int]


def trim(a: Sequence[int], p: int) -> FPoly:
    out = [x % p for x in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def sub(a: FPoly, b: FPoly, p: int) -> FPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def mul(a: FPoly, b: FPoly, p: int) -> FPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def divmod_(a: FPoly, b: FPoly, p: int) -> tuple[FPoly, FPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q, p), trim(a[:db], p)


def rem(a: FPoly, b: FPoly, p: int) -> FPoly:
    return divmod_(a, b, p)[1]


def monic(a: FPoly, p: int) -> FPoly:
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def gcd(a: FPoly, b: FPoly, p: int) -> FPoly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a: FPoly, p: int) -> FPoly:
    return trim([i * a[i] for i in range(1, len(a))], p)


def is_squarefree(f: FPoly, p: int) -> bool:
    d = derivative(f, p)
    if not d:
        return False
    return len(gcd(f, d, p)) == 1


def powmod(base: FPoly, e: int, f: FPoly, p: int) -> FPoly:
    result = [1]
    base = rem(base, f, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), f, p)
    return result


def frobenius_matrix(f: FPoly, p: int) -> np.ndarray:
    """Column j holds the coefficients of x^(j p) mod f."""
    n = len(f) - 1
    xp = powmod([0, 1], p, f, p)
    cols = [[1] + [0] * (n - 1)]
    cur = [1]
    for _ in range(1, n):
        cur = rem(mul(cur, xp, p), f, p)
        cols.append(cur + [0] * (n - len(cur)))
    dtype = np.int64 if p * p * n < 2 ** 62 else object
    return np.array(cols, dtype=dtype).T.copy()


def _apply(q: np.ndarray, v: FPoly, n: int, p: int) -> FPoly:
    vec = np.array(v + [0] * (n - len(v)), dtype=q.dtype)
    return trim([int(x) for x in q.dot(vec)], p)


def distinct_degree(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f mod p, sorted."""
    f = monic(trim(f, p), p)
    n = len(f) - 1
    if n <= 0:
        return []
    if not is_squarefree(f, p):
        raise ValueError("polynomial is not squarefree mod p")
    q = frobenius_matrix(f, p)
    degrees: list[int] = []
    h = [0, 1]  # x^(p^d) mod the original f
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _apply(q, h, n, p)
        g = gcd(rest, sub(h, [0, 1], p), p)
        k = len(g) - 1
        if k:
            degrees.extend([d] * (k // d))
            rest = divmod_(rest, g, p)[0]
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return sorted(degrees)

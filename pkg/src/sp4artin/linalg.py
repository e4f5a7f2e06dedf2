"""Small exact matrices and polynomials with CycNum entries.

Matrices are tuples of row tuples.  Polynomials are tuples of coefficients,
lowest degree first, with trailing zeros stripped.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .cyclotomic import CycNum

Matrix = tuple[tuple[CycNum, ...], ...]
Poly = tuple[CycNum, ...]


def const(value, order: int) -> CycNum:
    if isinstance(value, CycNum):
        return value.promote(order) if value.order != order else value
    return CycNum.rational(value, order)


def matrix(rows: Sequence[Sequence], order: int) -> Matrix:
    return tuple(tuple(const(x, order) for x in row) for row in rows)


def identity(n: int, order: int) -> Matrix:
    return tuple(tuple(const(int(i == j), order) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = a[i]
        nz = [(j, row[j]) for j in range(m) if not row[j].is_zero()]
        out_row = []
        for c in range(k):
            acc = None
            for j, x in nz:
                y = b[j][c]
                if y.is_zero():
                    continue
                t = x * y
                acc = t if acc is None else acc + t
            out_row.append(acc if acc is not None else const(0, row[0].order))
        out.append(tuple(out_row))
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence[CycNum]) -> tuple[CycNum, ...]:
    return tuple(column[0] for column in mat_mul(a, tuple((x,) for x in v)))


def mat_pow(a: Matrix, e: int) -> Matrix:
    result = identity(len(a), a[0][0].order)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a for rb in b
    )


def mat_key(a: Matrix) -> tuple:
    return tuple(x.key() for row in a for x in row)


def trace(a: Matrix) -> CycNum:
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def is_scalar(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j].is_zero() for i in range(n) for j in range(n) if i != j) and all(
        a[i][i] == a[0][0] for i in range(n))


def det(a: Matrix) -> CycNum:
    """Determinant by Gaussian elimination over the field."""
    m = [list(r) for r in a]
    n = len(m)
    result = const(1, m[0][0].order)
    for col in range(n):
        p = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if p is None:
            return const(0, m[0][0].order)
        if p != col:
            m[col], m[p] = m[p], m[col]
            result = -result
        piv = m[col][col]
        result = result * piv
        inv = piv.inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    order = a[0][0].order
    m = [list(r) + [const(int(i == j), order) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        p = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[p] = m[p], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def nullspace(rows: Sequence[Sequence[CycNum]], ncols: int, order: int) -> list[tuple[CycNum, ...]]:
    """Basis of {x : rows . x = 0}, each vector with its first nonzero entry equal to 1."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        p = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = const(0, order), const(1, order)
    for fcol in free:
        vec = [zero] * ncols
        vec[fcol] = one
        for i, pcol in enumerate(pivots):
            vec[pcol] = -m[i][fcol]
        lead = next(x for x in vec if not x.is_zero())
        if lead != 1:
            linv = lead.inverse()
            vec = [x * linv for x in vec]
        basis.append(tuple(vec))
    return basis


# -- polynomials --------------------------------------------------------

def poly_trim(p: Sequence[CycNum]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1].is_zero():
        p.pop()
    return tuple(p)


def poly_mul(a: Poly, b: Poly) -> Poly:
    order = a[0].order
    out = [const(0, order)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_pow(a: Poly, e: int) -> Poly:
    result: Poly = (const(1, a[0].order),)
    for _ in range(e):
        result = poly_mul(result, a)
    return result


def poly_eval(p: Poly, x: CycNum) -> CycNum:
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def poly_equal(a: Poly, b: Poly) -> bool:
    a, b = poly_trim(a), poly_trim(b)
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def poly_scale_var(p: Poly, c: CycNum) -> Poly:
    """p(c*T)."""
    out = []
    power = const(1, p[0].order)
    for coeff in p:
        out.append(coeff * power)
        power = power * c
    return poly_trim(out)


def poly_divide_linear(p: Poly, root: CycNum) -> Poly:
    """Quotient of p by (x - root); assumes root is a root."""
    n = len(p) - 1
    q = [None] * n
    acc = p[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = p[i] + acc * root
    return tuple(q)


def one_minus_poly(values_t: Sequence[CycNum], exponents: Sequence[int], order: int) -> Poly:
    """prod_k (1 - values[k] * T^exponents[k])."""
    result: Poly = (const(1, order),)
    for v, e in zip(values_t, exponents):
        factor = [const(0, order)] * (e + 1)
        factor[0] = const(1, order)
        factor[e] = -const(v, order)
        result = poly_mul(result, tuple(factor))
    return result


def charpoly(a: Matrix) -> Poly:
    """det(x I - A) by Faddeev-LeVerrier, lowest degree first."""
    n = len(a)
    order = a[0][0].order
    coeffs = [const(0, order)] * (n + 1)
    coeffs[n] = const(1, order)
    m = identity(n, order)
    ident = m
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        c = trace(am) * Fraction(-1, k)
        coeffs[n - k] = c
        m = mat_add(am, scale(c, ident))
    return tuple(coeffs)


def det_one_minus_tA(a: Matrix) -> Poly:
    """det(I - T*A) expanded by the Leibniz formula over polynomial entries."""
    n = len(a)
    order = a[0][0].order
    entries = [[(const(int(i == j), order), -a[i][j]) for j in range(n)] for i in range(n)]
    total: Poly = (const(0, order),)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term: Poly = (const(sign, order),)
        for i, j in enumerate(perm):
            term = poly_mul(term, entries[i][j])
            if term == (const(0, order),):
                break
        total = _poly_add(total, term)
    return poly_trim(total)


def _poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    order = a[0].order
    z = const(0, order)
    return poly_trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])


def poly_add(a: Poly, b: Poly) -> Poly:
    return _poly_add(a, b)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def format_poly(p: Poly) -> list[str]:
    from .cyclotomic import format_cyc

    return [format_cyc(c) for c in p]

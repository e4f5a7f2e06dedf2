"""Class functions with exact cyclotomic values and Dixon's character table algorithm."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from sympy import isprime

from .cyclotomic import CycNum
from .groups import Group, GroupError
from .standard import ORDER


class CharacterError(Exception):
    pass


def _c(x, order: int = ORDER) -> CycNum:
    if isinstance(x, CycNum):
        return x if x.order == order else x.promote(order)
    return CycNum.rational(x, order)


@dataclass(frozen=True, eq=False)
class Character:
    """Class function on `group`, one value per conjugacy class (class order of group.classes)."""

    group: Group
    values: tuple[CycNum, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.values) != len(self.group.classes):
            raise CharacterError("one value per conjugacy class expected")

    @classmethod
    def from_function(cls, group: Group, fn, label: str = "") -> "Character":
        return cls(group, tuple(_c(fn(r)) for r in group.classes.reps), label)

    @classmethod
    def trivial(cls, group: Group) -> "Character":
        return cls(group, tuple(_c(1) for _ in group.classes.reps), "1")

    def __call__(self, g: int) -> CycNum:
        return self.values[self.group.class_of(g)]

    @property
    def degree(self) -> Fraction:
        return self.values[0].to_fraction()

    def _check(self, other: "Character"):
        if other.group is not self.group:
            raise CharacterError("characters live on different groups")

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Character") -> "Character":
        self._check(other)
        return Character(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, Character):
            self._check(other)
            return Character(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        return Character(self.group, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Character) or other.group is not self.group:
            return NotImplemented
        return all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return tuple(v.key() for v in self.values)

    def conj(self) -> "Character":
        return Character(self.group, tuple(v.conj() for v in self.values))

    def adams(self, k: int) -> "Character":
        """g -> chi(g^k)."""
        G = self.group
        return Character(G, tuple(self(G.power(r, k)) for r in G.classes.reps))

    def kernel(self) -> frozenset:
        d = self.values[0]
        return frozenset(g for g in range(self.group.size) if self(g) == d)

    def is_real(self) -> bool:
        return all(v == v.conj() for v in self.values)

    def __repr__(self):
        name = self.label or "chi"
        return f"Character({name}, degree={self.values[0]})"


def inner(chi: Character, psi: Character) -> Fraction:
    """(1/|G|) sum_g chi(g) conj(psi(g)), exact."""
    if chi.group is not psi.group:
        raise CharacterError("characters live on different groups")
    G = chi.group
    acc = _c(0)
    for size, a, b in zip(G.classes.sizes, chi.values, psi.values):
        acc = acc + a * b.conj() * size
    acc = acc * Fraction(1, G.size)
    if not acc.is_rational():
        raise CharacterError("inner product is not rational")
    return acc.to_fraction()


def restrict(chi: Character, H: Group) -> Character:
    if H.parent is not chi.group:
        raise CharacterError("restriction needs a subgroup of the character's group (fusion map)")
    return Character(H, tuple(chi.values[c] for c in H.fusion))


def induce(lam: Character, G: Group | None = None) -> Character:
    """Frobenius formula: (1/|H|) sum over x in G with x^-1 g x in H of lam(x^-1 g x)."""
    H = lam.group
    if H.parent is None:
        raise CharacterError("induction needs the subgroup's parent group")
    G = G or H.parent
    if G is not H.parent:
        raise CharacterError("H is not a subgroup of G")
    local = {g: i for i, g in enumerate(H.embedding)}
    values = []
    for r in G.classes.reps:
        acc = _c(0)
        for x in range(G.size):
            y = G.conj(r, x)
            if y in local:
                acc = acc + lam(local[y])
        values.append(acc * Fraction(1, H.size))
    return Character(G, tuple(values))


def exterior_square(chi: Character) -> Character:
    sq, ad = chi * chi, chi.adams(2)
    return Character(chi.group, tuple((a - b) * Fraction(1, 2) for a, b in zip(sq.values, ad.values)))


def symmetric_square(chi: Character) -> Character:
    sq, ad = chi * chi, chi.adams(2)
    return Character(chi.group, tuple((a + b) * Fraction(1, 2) for a, b in zip(sq.values, ad.values)))


def fs_indicator(chi: Character) -> Fraction:
    G = chi.group
    acc = _c(0)
    for g in range(G.size):
        acc = acc + chi(G.mult[g][g])
    acc = acc * Fraction(1, G.size)
    return acc.to_fraction()


def det_character(chi: Character) -> Character:
    """Determinant of a representation with character chi, via Newton's identities on classes."""
    from .lfunction import newton_elementary

    d = int(chi.degree)
    G = chi.group
    values = []
    for r in G.classes.reps:
        sums = [chi(G.power(r, k)) for k in range(1, d + 1)]
        values.append(newton_elementary(sums, d)[d])
    return Character(G, tuple(values))


# -- character table -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: Group
    characters: tuple[Character, ...]
    prime: int

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, i):
        return self.characters[i]

    @property
    def degrees(self) -> list[int]:
        return [int(c.degree) for c in self.characters]

    def linear(self) -> list[Character]:
        return [c for c in self.characters if c.degree == 1]

    def of_degree(self, d: int) -> list[Character]:
        return [c for c in self.characters if c.degree == d]

    def index(self, chi: Character) -> int:
        for i, c in enumerate(self.characters):
            if c == chi:
                return i
        raise CharacterError("not an irreducible character of this table")

    def decompose(self, chi: Character) -> list[Fraction]:
        return [inner(chi, c) for c in self.characters]

    def row_orthogonality(self) -> bool:
        for i, a in enumerate(self.characters):
            for j, b in enumerate(self.characters):
                if inner(a, b) != (1 if i == j else 0):
                    return False
        return True

    def column_orthogonality(self) -> bool:
        G = self.group
        sizes = G.classes.sizes
        for i in range(len(sizes)):
            for j in range(len(sizes)):
                acc = _c(0)
                for c in self.characters:
                    acc = acc + c.values[i] * c.values[j].conj()
                expected = Fraction(G.size, sizes[i]) if i == j else 0
                if acc != expected:
                    return False
        return True


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime p > 2 sqrt(|G|) with p = 1 mod exponent."""
    p = 2 * isqrt(order) + 1
    while not (isprime(p) and p % exponent == 1):
        p += 1
    return p


def _primitive_root_of_unity(e: int, p: int) -> int:
    for a in range(2, p):
        z = pow(a, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in _prime_factors(e)):
            return z
    if e == 1:
        return 1
    raise CharacterError("no primitive root of unity")


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def class_matrices(G: Group) -> list[list[list[int]]]:
    """a[j][i][k] = #{x in C_j : x^-1 z_k in C_i} for a fixed z_k in C_k."""
    cls = G.classes
    r = len(cls)
    out = []
    for j, (_, members) in enumerate(cls.classes):
        m = [[0] * r for _ in range(r)]
        for k, zk in enumerate(cls.reps):
            for x in members:
                m[cls.class_of[G.mult[G.inverse[x]][zk]]][k] += 1
        out.append(m)
    return out


def _nullspace_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    basis = []
    for fcol in (c for c in range(ncols) if c not in pivots):
        vec = [0] * ncols
        vec[fcol] = 1
        for i, pcol in enumerate(pivots):
            vec[pcol] = -m[i][fcol] % p
        basis.append(vec)
    return basis


def _split_space(space: list[list[int]], mat: list[list[int]], p: int) -> list[list[list[int]]]:
    # eigenspaces of mat restricted to span(space); vectors are columns
    r = len(mat)
    dim = len(space)
    applied = [[sum(mat[i][k] * v[k] for k in range(r)) % p for i in range(r)] for v in space]
    pieces = []
    for lam in range(p):
        # find x with sum_t x_t (mat - lam) space_t = 0
        rows = [[(applied[t][i] - lam * space[t][i]) % p for t in range(dim)] for i in range(r)]
        null = _nullspace_mod_p(rows, dim, p)
        if len(null) == dim:
            return [space]
        if null:
            pieces.append([[sum(x[t] * space[t][i] for t in range(dim)) % p for i in range(r)]
                           for x in null])
    return pieces


def _sqrt_small(value: int, p: int, bound: int) -> int:
    for d in range(1, bound + 1):
        if d * d % p == value % p:
            return d
    raise CharacterError("degree recovery failed")


def dixon_table(G: Group, cap: int = 2000) -> CharacterTable:
    """Irreducible characters by Dixon's method: split class matrices over F_p, lift to Q(zeta_e)."""
    if G.size > cap:
        raise CharacterError(f"group order {G.size} exceeds cap {cap}")
    cls = G.classes
    r = len(cls)
    e = G.exponent
    p = dixon_prime(G.size, e)
    mats = class_matrices(G)
    spaces = [[[int(i == j) for i in range(r)] for j in range(r)]]
    for mat in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        spaces = [piece for s in spaces for piece in _split_space(s, mat, p)]
    if not all(len(s) == 1 for s in spaces) or len(spaces) != r:
        raise CharacterError("class matrices did not split into one-dimensional eigenspaces")
    inv_class = [cls.class_of[G.inverse[rep]] for rep in cls.reps]
    sizes = cls.sizes
    z = _primitive_root_of_unity(e, p)
    zeta_e = [CycNum.zeta(e, k).promote(ORDER) if ORDER % e == 0 else CycNum.zeta(e, k)
              for k in range(e)]
    power_class = [[cls.class_of[G.power(rep, l)] for l in range(e)] for rep in cls.reps]
    chars = []
    e_inv = pow(e, p - 2, p)
    for (vec,) in spaces:
        inv0 = pow(vec[0], p - 2, p)
        omega = [x * inv0 % p for x in vec]
        s = sum(omega[i] * omega[inv_class[i]] * pow(sizes[i], p - 2, p) for i in range(r)) % p
        d2 = G.size * pow(s, p - 2, p) % p
        d = _sqrt_small(d2, p, isqrt(G.size))
        theta = [d * omega[i] * pow(sizes[i], p - 2, p) % p for i in range(r)]
        values = []
        for i in range(r):
            total = None
            mults = []
            for k in range(e):
                m = sum(theta[power_class[i][l]] * pow(z, (-k * l) % e, p) for l in range(e)) * e_inv % p
                if m > d:
                    raise CharacterError("eigenvalue multiplicity out of range")
                mults.append(m)
                if m:
                    term = zeta_e[k] * m
                    total = term if total is None else total + term
            if sum(mults) != d:
                raise CharacterError("multiplicities do not add up to the degree")
            values.append(total)
        chars.append(Character(G, tuple(_c(v) if v.order == ORDER else v for v in values)))
    chars.sort(key=lambda c: (c.degree, any(v != 1 for v in c.values), c.key()))
    labelled = tuple(Character(G, c.values, f"X{i}") for i, c in enumerate(chars))
    return CharacterTable(G, labelled, p)


def character_table(G: Group, cap: int = 2000) -> CharacterTable:
    cached = getattr(G, "_char_table", None)
    if cached is None:
        cached = dixon_table(G, cap)
        G._char_table = cached
    return cached


def linear_constituents(chi: Character, table: CharacterTable) -> list[Character]:
    return [lam for lam in table.linear() if inner(chi, lam) > 0]


def class_function_from_values(G: Group, values: Sequence) -> Character:
    return Character(G, tuple(_c(v) for v in values))

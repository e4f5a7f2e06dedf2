"""Finite groups as multiplication tables.

Elements are integer indices with the identity at 0.  Groups generated by
matrices keep the matrix of every element; subgroups and quotients keep a
link back to the group they came from.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .linalg import Matrix


class GroupError(Exception):
    pass


@dataclass(frozen=True)
class ConjClassPartition:
    """Conjugacy classes ordered by their least element (the representative)."""

    classes: tuple[tuple[int, frozenset], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def reps(self) -> list[int]:
        return [r for r, _ in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(m) for _, m in self.classes]


@dataclass(eq=False)
class Group:
    mult: list[list[int]]
    generators: list[int]
    matrices: Optional[list[Matrix]] = None
    name: str = ""
    parent: Optional["Group"] = None
    embedding: Optional[list[int]] = None
    inverse: list[int] = field(init=False)

    def __post_init__(self):
        n = len(self.mult)
        inv = [0] * n
        for i, row in enumerate(self.mult):
            j = row.index(0)
            inv[i] = j
        self.inverse = inv

    @property
    def size(self) -> int:
        return len(self.mult)

    def __len__(self) -> int:
        return len(self.mult)

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.size})"

    # -- basic element operations ------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conj(self, g: int, x: int) -> int:
        """x^-1 g x."""
        return self.mult[self.mult[self.inverse[x]][g]][x]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        result = 0
        for _ in range(k % self.element_orders[g]):
            result = self.mult[result][g]
        return result

    def commutes(self, a: int, b: int) -> bool:
        return self.mult[a][b] == self.mult[b][a]

    @cached_property
    def element_orders(self) -> list[int]:
        orders = []
        for g in range(self.size):
            k, x = 1, g
            while x != 0:
                x = self.mult[x][g]
                k += 1
            orders.append(k)
        return orders

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in set(self.element_orders):
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def classes(self) -> ConjClassPartition:
        return conjugacy_classes(self)

    def class_of(self, g: int) -> int:
        return self.classes.class_of[g]

    # -- subsets -------------------------------------------------------------
    def generate(self, gens: Iterable[int]) -> frozenset:
        gens = list(dict.fromkeys(gens))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.mult[x]
                for s in gens:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return 0 in s and all(self.mult[a][b] in s for a in s for b in s)

    def is_normal(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.conj(h, x) in s for h in s for x in range(self.size))

    def normalizes(self, actor: int, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.conj(h, actor) in s for h in s)

    @cached_property
    def center(self) -> frozenset:
        return frozenset(g for g in range(self.size)
                         if all(self.commutes(g, x) for x in self.generators))

    def derived_subgroup(self) -> frozenset:
        comms = {self.mult[self.mult[self.inverse[a]][self.inverse[b]]][self.mult[a][b]]
                 for a in range(self.size) for b in range(self.size)}
        return self.generate(comms)

    def subgroup(self, elements: Iterable[int], name: str = "") -> "Group":
        """The subgroup on `elements`, reindexed in increasing order of the parent index."""
        elems = sorted(set(elements))
        if not elems or elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        pos = {g: i for i, g in enumerate(elems)}
        try:
            mult = [[pos[self.mult[a][b]] for b in elems] for a in elems]
        except KeyError:
            raise GroupError("subset is not closed under multiplication") from None
        mats = [self.matrices[g] for g in elems] if self.matrices is not None else None
        gens = _small_generating_set(mult)
        return Group(mult, gens, mats, name=name, parent=self, embedding=elems)

    @cached_property
    def fusion(self) -> list[int]:
        """For a subgroup: parent class index of each own class."""
        if self.parent is None:
            raise GroupError("fusion map needs a parent group")
        return [self.parent.class_of(self.embedding[r]) for r in self.classes.reps]

    def check_associativity(self, exhaustive_limit: int = 200, samples: int = 20000, seed: int = 0) -> bool:
        m = np.asarray(self.mult, dtype=np.int64)
        n = len(m)
        if n <= exhaustive_limit:
            left = m[m]  # (ab)c
            right = m[np.arange(n)[:, None, None], m[None, :, :]]  # a(bc)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.array_equal(m[m[a, b], c], m[a, m[b, c]]))


def _small_generating_set(mult: list[list[int]]) -> list[int]:
    n = len(mult)
    gens: list[int] = []
    span = {0}
    for g in range(1, n):
        if g in span:
            continue
        gens.append(g)
        span = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = mult[x][s]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def closure_from_matrices(gens: Sequence[Matrix], cap: int = 2000, name: str = "") -> Group:
    """Group generated by invertible square matrices, elements in breadth-first order.

    Within each breadth-first layer new elements are sorted by their exact
    matrix entries, so the numbering is reproducible.
    """
    if not gens:
        raise GroupError("need at least one generator")
    n = len(gens[0])
    order = gens[0][0][0].order
    for g in gens:
        if linalg.det(g).is_zero():
            raise GroupError("non-invertible generator")
    ident = linalg.identity(n, order)
    elements = [ident]
    index = {linalg.mat_key(ident): 0}
    parent = [None]
    via = [None]
    rmul: list[list[int]] = []
    frontier = [0]
    while frontier:
        layer: dict[tuple, tuple[Matrix, int, int]] = {}
        products: dict[tuple[int, int], tuple] = {}
        for i in frontier:
            for s, g in enumerate(gens):
                m = linalg.mat_mul(elements[i], g)
                k = linalg.mat_key(m)
                products[(i, s)] = k
                if k not in index and k not in layer:
                    layer[k] = (m, i, s)
        new = []
        for k in sorted(layer):
            if len(elements) >= cap:
                raise GroupError(f"closure exceeds cap {cap}")
            m, i, s = layer[k]
            index[k] = len(elements)
            elements.append(m)
            parent.append(i)
            via.append(s)
            new.append(index[k])
        while len(rmul) < len(elements):
            rmul.append([None] * len(gens))
        for (i, s), k in products.items():
            rmul[i][s] = index[k]
        frontier = new
    size = len(elements)
    # M_i M_j = (M_i M_parent(j)) g_via(j), filled in breadth-first order of j
    mult = [[0] * size for _ in range(size)]
    for i in range(size):
        row = mult[i]
        row[0] = i
        for j in range(1, size):
            row[j] = rmul[row[parent[j]]][via[j]]
    gen_idx = [index[linalg.mat_key(g)] for g in gens]
    group = Group(mult, gen_idx, elements, name=name)
    if size <= 200 and not group.check_associativity():
        raise GroupError("table is not associative")
    return group


def verify_matrix_homomorphism(G: Group, pairs: Optional[Iterable[tuple[int, int]]] = None) -> bool:
    """Check M(a) M(b) == M(ab) exactly (all pairs by default)."""
    if G.matrices is None:
        raise GroupError("group has no matrix assignment")
    keys = [linalg.mat_key(m) for m in G.matrices]
    if pairs is None:
        pairs = ((a, b) for a in range(G.size) for b in range(G.size))
    for a, b in pairs:
        if linalg.mat_key(linalg.mat_mul(G.matrices[a], G.matrices[b])) != keys[G.mult[a][b]]:
            return False
    return True


def conjugacy_classes(G: Group) -> ConjClassPartition:
    class_of = [-1] * G.size
    classes = []
    for g in range(G.size):
        if class_of[g] >= 0:
            continue
        members = frozenset(G.conj(g, x) for x in range(G.size))
        for m in members:
            class_of[m] = len(classes)
        classes.append((g, members))
    return ConjClassPartition(tuple(classes), tuple(class_of))


def order_histogram(G: Group) -> dict[int, int]:
    return dict(sorted(Counter(G.element_orders).items()))


def cyclic_subgroups(G: Group) -> list[frozenset]:
    seen = {}
    for g in range(G.size):
        c = G.generate([g])
        seen.setdefault(c, g)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def low_index_subgroup_check(G: Group, k: int) -> list[tuple[int, ...]]:
    """All subgroups of index k, found by joining cyclic subgroups.

    Every subgroup is a join of cyclic subgroups, and every intermediate
    join lies inside it, so joins are pruned to orders dividing |G|/k.
    """
    if G.size % k:
        return []
    target = G.size // k
    cyclics = [c for c in cyclic_subgroups(G) if target % len(c) == 0]
    cyc_gen = {c: min(g for g in c if G.generate([g]) == c) for c in cyclics}
    found: dict[frozenset, list[int]] = {c: [cyc_gen[c]] for c in cyclics}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            if len(s) == target:
                continue
            gens = found[s]
            for c in cyclics:
                g = cyc_gen[c]
                if g in s:
                    continue
                joined = _bounded_generate(G, gens + [g], target)
                if joined is None or target % len(joined) or joined in found:
                    continue
                found[joined] = gens + [g]
                nxt.append(joined)
        frontier = nxt
    return sorted(tuple(sorted(s)) for s in found if len(s) == target)


def _bounded_generate(G: Group, gens: list[int], bound: int) -> Optional[frozenset]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = G.mult[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        return None
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generated_by_order(G: Group, m: int) -> frozenset:
    return G.generate(g for g in range(G.size) if G.element_orders[g] == m)


def abelianization_order(G: Group) -> int:
    return G.size // len(G.derived_subgroup())


@dataclass(eq=False)
class QuotientMap:
    source: Group
    target: Group
    element_map: list[int]
    kernel: frozenset

    def __call__(self, g: int) -> int:
        return self.element_map[g]

    def image(self, subset: Iterable[int]) -> frozenset:
        return frozenset(self.element_map[g] for g in subset)

    def preimage(self, subset: Iterable[int]) -> frozenset:
        s = set(subset)
        return frozenset(g for g in range(self.source.size) if self.element_map[g] in s)


def quotient(G: Group, normal: Iterable[int], name: str = "") -> QuotientMap:
    """G/N with cosets numbered by their least element."""
    n_set = frozenset(normal)
    if not G.is_subgroup(n_set) or not G.is_normal(n_set):
        raise GroupError("quotient needs a normal subgroup")
    coset_of = [-1] * G.size
    reps = []
    for g in range(G.size):
        if coset_of[g] < 0:
            for h in n_set:
                coset_of[G.mult[g][h]] = len(reps)
            reps.append(g)
    mult = [[coset_of[G.mult[a][b]] for b in reps] for a in reps]
    gens = sorted({coset_of[g] for g in G.generators} - {0})
    target = Group(mult, gens, None, name=name)
    return QuotientMap(G, target, coset_of, n_set)


def fixed_point_check(G: Group, actor: int, target: Iterable[int]) -> frozenset:
    """Elements of the target subgroup commuting with actor."""
    tset = frozenset(target)
    if not G.normalizes(actor, tset):
        raise GroupError("actor does not normalize the target subgroup")
    return frozenset(t for t in tset if G.commutes(actor, t))


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths))


def coset_action(G: Group, subgroup: Iterable[int], g: int) -> list[int]:
    """Permutation of the left cosets xS induced by left multiplication by g."""
    s = frozenset(subgroup)
    coset_of = [-1] * G.size
    reps = []
    for x in range(G.size):
        if coset_of[x] < 0:
            for h in s:
                coset_of[G.mult[x][h]] = len(reps)
            reps.append(x)
    return [coset_of[G.mult[g][x]] for x in reps]

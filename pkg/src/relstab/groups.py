"""Finite groups as Cayley tables, subgroups with left transversals.

Elements are indices 0..n-1 with 0 the identity. Everything is validated
exhaustively at desk scale (orders here stay well below 64), and all coset
bookkeeping is left-sided: induced-module bases downstream are indexed by
the left transversal computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClosureBoundExceeded, InvalidPermutation, ValidationFailure

DEFAULT_CLOSURE_BOUND = 512
_EXHAUSTIVE_LIMIT = 64


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    __slots__ = ("order", "cayley", "inverse", "generators", "label")

    def __init__(self, cayley, generators: Sequence[int], label: str = "G"):
        table = np.asarray(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("Cayley table must be square")
        table.setflags(write=False)
        self.order = int(table.shape[0])
        self.cayley = table
        self.label = label
        inv = np.full(self.order, -1, dtype=np.int64)
        for a in range(self.order):
            hits = np.nonzero(table[a] == 0)[0]
            if hits.size != 1:
                raise ValidationFailure(f"element {a} has no unique inverse", witness=a)
            inv[a] = hits[0]
        inv.setflags(write=False)
        self.inverse = inv
        self.generators = tuple(int(g) for g in generators)
        if self.order <= _EXHAUSTIVE_LIMIT:
            check_cayley(self)
        if sorted(_closure_of(self, self.generators)) != list(range(self.order)):
            raise ValidationFailure("generators do not generate the group")

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != 0:
            x = self.mul(x, a)
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup H <= G with the injection and a left transversal.

    transversal[i] is the lexicographically smallest representative of the
    i-th left coset tH, and transversal[0] is the identity.
    """

    parent: FiniteGroup
    sub: FiniteGroup
    inject: tuple
    transversal: tuple

    @property
    def index(self) -> int:
        return len(self.transversal)

    def coset_lookup(self):
        """Maps g -> (coset index i, h in H) with g = transversal[i] * inject[h]."""
        coset_of = {}
        for i, t in enumerate(self.transversal):
            for h in self.sub.elements():
                g = self.parent.mul(t, self.inject[h])
                coset_of[g] = (i, h)
        return coset_of


@dataclass(frozen=True)
class CayleyReport:
    order: int
    checked_triples: int
    ok: bool = True


def check_cayley(g: FiniteGroup) -> CayleyReport:
    """Exhaustively verify associativity, identity and inverses.

    Raises ValidationFailure with a witness triple on the first violation.
    """
    n = g.order
    if n > _EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive check limited to order {_EXHAUSTIVE_LIMIT}")
    t = g.cayley
    if int(t.min()) < 0 or int(t.max()) >= n:
        raise ValidationFailure("table entry out of range")
    for a in range(n):
        if t[0, a] != a or t[a, 0] != a:
            raise ValidationFailure(f"0 is not an identity at {a}", witness=(0, a))
    # (ab)c == a(bc), vectorized over c for each (a, b)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            lhs = t[t[a, b]]
            rhs = ta[t[b]]
            if not np.array_equal(lhs, rhs):
                c = int(np.nonzero(lhs != rhs)[0][0])
                raise ValidationFailure(
                    f"associativity fails at ({a},{b},{c})", witness=(a, b, c)
                )
    for a in range(n):
        b = g.inv(a)
        if t[a, b] != 0 or t[b, a] != 0:
            raise ValidationFailure(f"inverse fails at {a}", witness=a)
    return CayleyReport(order=n, checked_triples=n * n * n)


# ----------------------------------------------------------------- constructors

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = (1,) if n > 1 else (0,)
    return FiniteGroup(table, gens, label=f"C{n}")


def klein_four() -> FiniteGroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return FiniteGroup(table, (1, 2), label="V4")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; index e*n + i encodes r^i s^e."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    size = 2 * n

    def mul(x, y):
        e1, i1 = divmod(x, n)
        e2, i2 = divmod(y, n)
        i = (i1 + (i2 if e1 == 0 else -i2)) % n
        return ((e1 + e2) % 2) * n + i

    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    gens = (1, n) if n > 1 else (n,)
    return FiniteGroup(table, gens, label=f"D{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    table = np.zeros((n1 * n2, n1 * n2), dtype=np.int64)
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    table[a1 * n2 + a2, b1 * n2 + b2] = (
                        g1.mul(a1, b1) * n2 + g2.mul(a2, b2)
                    )
    gens = tuple(g * n2 for g in g1.generators) + tuple(g2.generators)
    return FiniteGroup(table, gens, label=f"{g1.label}x{g2.label}")


def from_permutations(perms: Sequence[Sequence[int]], bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroup:
    """Group generated by permutations (image tuples), closed breadth-first.

    Elements are indexed in BFS discovery order with the identity first, so
    the numbering is deterministic in the generator order given.
    """
    if not perms:
        raise InvalidPermutation("need at least one permutation")
    width = len(perms[0])
    gens = []
    for p in perms:
        t = tuple(int(v) for v in p)
        if len(t) != width or sorted(t) != list(range(width)):
            raise InvalidPermutation(f"not a permutation of 0..{width - 1}: {p}")
        gens.append(t)

    def compose(s, t):  # (s . t)(x) = s(t(x))
        return tuple(s[t[x]] for x in range(width))

    ident = tuple(range(width))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for gp in gens:
                c = compose(e, gp)
                if c not in index:
                    if len(elems) >= bound:
                        raise ClosureBoundExceeded(f"closure exceeds {bound} elements")
                    index[c] = len(elems)
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt
    n = len(elems)
    table = [[index[compose(elems[i], elems[j])] for j in range(n)] for i in range(n)]
    gen_idx = tuple(index[g] for g in gens)
    return FiniteGroup(table, gen_idx, label=f"perm{n}")


def build_named(kind: str, **params) -> FiniteGroup:
    """Dispatch constructor used by the scenario layer."""
    if kind == "cyclic":
        return cyclic(int(params["n"]))
    if kind == "klein_four":
        return klein_four()
    if kind == "dihedral":
        return dihedral(int(params["n"]))
    if kind == "direct_product":
        return direct_product(params["g1"], params["g2"])
    if kind == "from_permutations":
        return from_permutations(params["perms"], params.get("bound", DEFAULT_CLOSURE_BOUND))
    raise ValueError(f"unknown group kind {kind!r}")


def _closure_of(g: FiniteGroup, elems: Sequence[int]) -> list:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in elems:
                b = g.mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def subgroup_generated(g: FiniteGroup, elems: Sequence[int]) -> SubgroupEmbedding:
    """Subgroup closure with injection and left transversal.

    Coset representatives are the lexicographically smallest member of each
    left coset; the identity's coset comes first.
    """
    for e in elems:
        if not (0 <= e < g.order):
            raise ValueError(f"element index {e} out of range")
    members = _closure_of(g, list(elems))
    inject = tuple(members)
    pos = {m: i for i, m in enumerate(members)}
    k = len(members)
    table = [[pos[g.mul(inject[i], inject[j])] for j in range(k)] for i in range(k)]
    sub_gens = tuple(sorted({pos[e] for e in elems})) or ((0,) if k == 1 else ())
    sub = FiniteGroup(table, sub_gens, label=f"{g.label}.sub{k}")
    seen = set()
    transversal = []
    for t in range(g.order):
        if t in seen:
            continue
        transversal.append(t)
        for h in members:
            seen.add(g.mul(t, h))
    return SubgroupEmbedding(parent=g, sub=sub, inject=inject, transversal=tuple(transversal))

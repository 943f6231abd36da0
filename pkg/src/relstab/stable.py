"""Generic stable layer: stable homs, cones, suspensions, triangles.

Everything here is written against the FrobeniusContext contract, so the
same code drives both realizations (group modules and bounded complexes).
Objects of a context are value-like and immutable; a morphism always knows
its endpoints. Stable homs are E-homs modulo the subspace of maps that
factor through the chosen injective embedding, and all quotients carry
canonical deterministic bases.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .linalg import Mat, PrimeField, hstack, mat_mul, rank, rref, solve_linear, vstack


class FrobeniusContext(ABC):
    """Behavioral contract binding one exact-category realization.

    Implementations provide objects, morphisms, kernels, cokernels, finite
    direct sums, a split-mono embedding into a projective-injective object
    and a split-epi cover by one, plus a linearization of hom spaces
    (hom_vec / hom_from_vec) that the stable layer solves against.
    """

    field: PrimeField

    # -- morphism algebra ------------------------------------------------------

    @abstractmethod
    def hom_basis(self, m, n) -> list: ...

    @abstractmethod
    def identity(self, m): ...

    @abstractmethod
    def zero_hom(self, m, n): ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def add(self, f, g): ...

    @abstractmethod
    def scale(self, f, c: int): ...

    @abstractmethod
    def is_zero_hom(self, f) -> bool: ...

    def sub(self, f, g):
        return self.add(f, self.scale(g, -1))

    def hom_eq(self, f, g) -> bool:
        return self.is_zero_hom(self.sub(f, g))

    def morphism_check_exhaustive(self, f) -> bool:
        """Oracle hook: verify the defining identity beyond what construction checks."""
        return True

    # -- linearization ---------------------------------------------------------

    @abstractmethod
    def ambient_hom_dim(self, m, n) -> int: ...

    @abstractmethod
    def hom_vec(self, f) -> Mat:
        """Column vector of f in the ambient hom coordinates."""

    @abstractmethod
    def hom_from_vec(self, m, n, col: Mat): ...

    # -- exact structure -------------------------------------------------------

    @abstractmethod
    def kernel(self, f) -> tuple:
        """(kernel object, inclusion)."""

    @abstractmethod
    def cokernel(self, f) -> tuple:
        """(cokernel object, projection)."""

    @abstractmethod
    def direct_sum(self, objs: Sequence) -> tuple:
        """(sum object, injections, projections)."""

    @abstractmethod
    def injective_embedding(self, m):
        """The split mono m -> I(m) into a projective-injective object."""

    @abstractmethod
    def projective_epi(self, m):
        """The split epi P(m) -> m from a projective-injective object."""

    @abstractmethod
    def factor_through_epi(self, epi, t):
        """The unique u with u . epi = t (epi must be an epimorphism)."""

    # -- bookkeeping -----------------------------------------------------------

    @abstractmethod
    def weight(self, m) -> int: ...

    @abstractmethod
    def describe(self, m) -> str: ...

    @abstractmethod
    def obj_eq(self, a, b) -> bool: ...

    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def projective_generator(self):
        """The canonical free/contractible generator adjoined to AddList."""


class StableHomSpace:
    """Hom space of a pair with its projective-factoring subspace and quotient.

    `homs` is the deterministic E-hom basis, `phom_echelon` the reduced
    coordinates (in that basis) of maps factoring through the injective
    embedding of the source, and quotient coordinates are read off the
    non-pivot positions after echelon reduction.
    """

    __slots__ = ("ctx", "src", "dst", "homs", "hom_mat", "phom_echelon",
                 "phom_pivots", "free_cols", "qdim")

    def __init__(self, ctx: FrobeniusContext, src, dst, homs: list,
                 hom_mat: Mat, phom_echelon: Mat, phom_pivots: tuple):
        self.ctx = ctx
        self.src = src
        self.dst = dst
        self.homs = tuple(homs)
        self.hom_mat = hom_mat
        self.phom_echelon = phom_echelon
        self.phom_pivots = phom_pivots
        pivot_set = set(phom_pivots)
        self.free_cols = tuple(j for j in range(len(homs)) if j not in pivot_set)
        self.qdim = len(self.free_cols)

    @property
    def hom_dim(self) -> int:
        return len(self.homs)

    @property
    def phom_dim(self) -> int:
        return len(self.phom_pivots)

    def hom_coords(self, f) -> Mat:
        """Coordinates of f in the hom basis (f must be a morphism)."""
        if not self.homs:
            return Mat.zeros(self.ctx.field, 0, 1)
        c = solve_linear(self.hom_mat, self.ctx.hom_vec(f))
        if c is None:
            raise ValueError("map does not lie in the hom space")
        return c

    def quotient_coords(self, f) -> Mat:
        """Coordinates of the stable class of f, in the canonical quotient basis."""
        c = self.hom_coords(f)
        p = self.ctx.field.p
        vals = c.arr[:, 0].copy()
        for i, piv in enumerate(self.phom_pivots):
            coef = int(vals[piv]) % p
            if coef:
                vals = (vals - coef * self.phom_echelon.arr[i, :]) % p
        if not self.free_cols:
            return Mat.zeros(self.ctx.field, 0, 1)
        return Mat(self.ctx.field, vals[list(self.free_cols)].reshape(-1, 1))

    def representative(self, j: int):
        """E-hom representing the j-th canonical quotient basis vector."""
        return self.homs[self.free_cols[j]]

    def class_is_zero(self, f) -> bool:
        return self.quotient_coords(f).is_zero()


def stable_hom(ctx: FrobeniusContext, m, n) -> StableHomSpace:
    """Hom basis, projective-factoring subspace and quotient data for (m, n).

    The factoring subspace is spanned by h . iota_m over a hom basis of
    (I(m), n); its echelon form in hom coordinates fixes the quotient basis.
    """
    homs = ctx.hom_basis(m, n)
    k = len(homs)
    if k == 0:
        empty = Mat.zeros(ctx.field, ctx.ambient_hom_dim(m, n), 0)
        return StableHomSpace(ctx, m, n, [], empty, Mat.zeros(ctx.field, 0, 0), ())
    hom_mat = hstack([ctx.hom_vec(h) for h in homs])
    iota = ctx.injective_embedding(m)
    rows = []
    for h in ctx.hom_basis(iota.dst, n):
        comp = ctx.compose(h, iota)
        c = solve_linear(hom_mat, ctx.hom_vec(comp))
        assert c is not None, "factoring map escapes the hom space"
        rows.append(c.transpose())
    if rows:
        red, pivots, rk = rref(vstack(rows))
        ech = Mat(ctx.field, red.arr[:rk, :])
    else:
        ech, pivots = Mat.zeros(ctx.field, 0, k), ()
    return StableHomSpace(ctx, m, n, homs, hom_mat, ech, tuple(pivots))


def is_stably_zero_map(ctx: FrobeniusContext, f) -> bool:
    """Membership of f in the projective-factoring subspace."""
    return stable_hom(ctx, f.src, f.dst).class_is_zero(f)


def is_stably_zero_object(ctx: FrobeniusContext, m) -> bool:
    return is_stably_zero_map(ctx, ctx.identity(m))


@dataclass(frozen=True)
class ConeData:
    """Construction data of a cone: the sum n (+) I(m) and its maps."""

    sum_obj: object
    injections: tuple
    projections: tuple
    proj_to_cone: object
    graph_map: object  # (f, -iota): m -> n (+) I(m)


@dataclass(frozen=True)
class Triangle:
    """A distinguished triangle a -> b -> c -> a[1], c built as the cone of f."""

    a: object
    b: object
    c: object
    f: object
    g: object
    h: object
    suspension: object  # a[1] as constructed (cokernel of iota_a)
    cone: ConeData


def cone_triangle(ctx: FrobeniusContext, f) -> Triangle:
    """Complete f to a distinguished triangle via the cokernel of (f, -iota).

    g and h are the canonical structure maps; h . g vanishes exactly and
    g . f factors through the injective block by construction (both are
    asserted at build time).
    """
    m, n = f.src, f.dst
    iota = ctx.injective_embedding(m)
    sum_obj, injs, projs = ctx.direct_sum([n, iota.dst])
    s = ctx.sub(ctx.compose(injs[0], f), ctx.compose(injs[1], iota))
    c, proj = ctx.cokernel(s)
    assert ctx.is_zero_hom(ctx.compose(proj, s)), "cokernel does not kill its image"
    g = ctx.compose(proj, injs[0])
    sm, q = ctx.cokernel(iota)
    t = ctx.compose(q, projs[1])
    h = ctx.factor_through_epi(proj, t)
    assert ctx.is_zero_hom(ctx.compose(h, g)), "h . g must vanish exactly"
    return Triangle(a=m, b=n, c=c, f=f, g=g, h=h, suspension=sm,
                    cone=ConeData(sum_obj, tuple(injs), tuple(projs), proj, s))


def suspend(ctx: FrobeniusContext, m):
    """The shift [1]: cokernel of the injective embedding."""
    return ctx.cokernel(ctx.injective_embedding(m))[0]


def desuspend(ctx: FrobeniusContext, m):
    """The inverse shift: kernel of the projective-cover-style epi."""
    return ctx.kernel(ctx.projective_epi(m))[0]


def induced_matrix(ctx: FrobeniusContext, s_src: StableHomSpace,
                   s_dst: StableHomSpace, f) -> Mat:
    """Matrix of post-composition by f between two stable hom quotients."""
    cols = []
    for j in range(s_src.qdim):
        rep = s_src.representative(j)
        cols.append(s_dst.quotient_coords(ctx.compose(f, rep)))
    if not cols:
        return Mat.zeros(ctx.field, s_dst.qdim, 0)
    return hstack(cols)


def induced_stable_matrix(ctx: FrobeniusContext, r, f) -> Mat:
    """Matrix of (r, src f) -> (r, dst f) in the canonical quotient bases."""
    s_src = stable_hom(ctx, r, f.src)
    s_dst = stable_hom(ctx, r, f.dst)
    return induced_matrix(ctx, s_src, s_dst, f)


def les_exact_check(ctx: FrobeniusContext, r, t: Triangle) -> bool:
    """Exactness of (r,a) -> (r,b) -> (r,c) at the middle term."""
    sa = stable_hom(ctx, r, t.a)
    sb = stable_hom(ctx, r, t.b)
    sc = stable_hom(ctx, r, t.c)
    first = induced_matrix(ctx, sa, sb, t.f)
    second = induced_matrix(ctx, sb, sc, t.g)
    if not mat_mul(second, first).is_zero():
        return False
    return rank(first) + rank(second) == sb.qdim

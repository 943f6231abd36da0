"""Finite-dimensional kG-modules: the first Frobenius context.

A module stores its full action table (one invertible matrix per group
element); morphisms are verified intertwiners. Induction and restriction
along a subgroup embedding use the left transversal basis t_i (x) e_j, and
the counit map Ind Res X -> X is the precover of the subgroup-induced
family downstream.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .errors import KindUnavailable, RelationViolation, SingularMatrix
from .groups import FiniteGroup, SubgroupEmbedding
from .linalg import (
    Mat,
    PrimeField,
    column_space_basis,
    hstack,
    is_invertible,
    kernel_basis,
    kronecker,
    mat_mul,
    quotient_projection,
    rand_mat,
    solve_linear,
    vstack,
)
from .rng import SplitMix64


class GModule:
    """A representation of a finite group by invertible matrices over F_p."""

    __slots__ = ("group", "field", "dim", "action")

    def __init__(self, group: FiniteGroup, field: PrimeField, action: Sequence[Mat]):
        if len(action) != group.order:
            raise ValueError("need one action matrix per group element")
        d = action[0].rows
        for m in action:
            if m.rows != d or m.cols != d or m.field.p != field.p:
                raise ValueError("action matrices must be square over the same field")
        if action[0] != Mat.identity(field, d):
            raise RelationViolation("identity element must act as the identity matrix")
        self.group = group
        self.field = field
        self.dim = d
        self.action = tuple(action)

    def act(self, g: int) -> Mat:
        return self.action[g]

    def __repr__(self) -> str:
        return f"GModule({self.group.label}, F{self.field.p}, dim={self.dim})"


class GModuleHom:
    """An intertwiner between modules of the same group; checked exactly."""

    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: GModule, dst: GModule, mat: Mat):
        if src.group is not dst.group and src.group.cayley is not dst.group.cayley:
            raise ValueError("src and dst must be modules of the same group")
        if mat.rows != dst.dim or mat.cols != src.dim:
            raise ValueError(f"matrix shape {mat.rows}x{mat.cols} does not fit "
                             f"{dst.dim}x{src.dim}")
        for g in src.group.generators:
            if mat_mul(mat, src.act(g)) != mat_mul(dst.act(g), mat):
                raise ValueError("matrix does not intertwine the actions")
        self.src = src
        self.dst = dst
        self.mat = mat

    def __repr__(self) -> str:
        return f"GModuleHom({self.src.dim} -> {self.dst.dim})"


def module_from_action(group: FiniteGroup, field: PrimeField,
                       generator_mats: Sequence[Mat]) -> GModule:
    """Build the full action table from generator matrices.

    The table is filled by word evaluation along a breadth-first spanning
    tree of the Cayley graph, then checked against the Cayley table on all
    (element, generator) pairs, which pins down the whole homomorphism.
    """
    gens = group.generators
    if len(generator_mats) != len(gens):
        raise ValueError(f"need {len(gens)} generator matrices")
    d = generator_mats[0].rows if generator_mats else 0
    for m in generator_mats:
        if m.rows != m.cols:
            raise ValueError("generator matrices must be square")
        if not is_invertible(m):
            raise SingularMatrix("generator matrix is singular")
        d = m.rows
    table: List[Mat | None] = [None] * group.order
    table[0] = Mat.identity(field, d)
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g, gm in zip(gens, generator_mats):
                b = group.mul(a, g)
                if table[b] is None:
                    table[b] = mat_mul(table[a], gm)
                    nxt.append(b)
        frontier = nxt
    if any(t is None for t in table):
        raise RelationViolation("generators do not reach every element")
    for a in range(group.order):
        for g, gm in zip(gens, generator_mats):
            if mat_mul(table[a], gm) != table[group.mul(a, g)]:
                raise RelationViolation(
                    f"word evaluation inconsistent at element {a}, generator {g}"
                )
    return GModule(group, field, table)  # type: ignore[arg-type]


def regular_module(group: FiniteGroup, field: PrimeField) -> GModule:
    """Left regular module on the basis {e_h}: g . e_h = e_{gh}."""
    n = group.order
    action = []
    for g in range(n):
        m = np.zeros((n, n), dtype=np.int64)
        for h in range(n):
            m[group.mul(g, h), h] = 1
        action.append(Mat(field, m))
    return GModule(group, field, action)


def trivial_module(group: FiniteGroup, field: PrimeField) -> GModule:
    one = Mat.identity(field, 1)
    return GModule(group, field, [one] * group.order)


def jordan_module(group: FiniteGroup, field: PrimeField, size: int) -> GModule:
    """k[x]/(x^size) with x = g - 1, for a cyclic group in characteristic p.

    Available exactly when (I + N)^|G| = I, i.e. when the generator really
    has the group's order; this covers cyclic p-groups and small sizes for
    mixed orders.
    """
    n = group.order
    if group.element_order(group.generators[0]) != n or len(group.generators) != 1:
        raise KindUnavailable("jordan modules need a cyclic group")
    if n % field.p != 0:
        raise KindUnavailable("jordan modules need p dividing |G|")
    if not (1 <= size <= n):
        raise KindUnavailable(f"jordan size must lie in [1, {n}]")
    m = np.eye(size, dtype=np.int64)
    for i in range(size - 1):
        m[i + 1, i] = 1
    gen = Mat(field, m)
    power = Mat.identity(field, size)
    for _ in range(n):
        power = mat_mul(power, gen)
    if power != Mat.identity(field, size):
        raise KindUnavailable(f"x = g - 1 is not {n}-torsion at size {size}")
    return module_from_action(group, field, [gen])


def coset_permutation_module(emb: SubgroupEmbedding, field: PrimeField) -> GModule:
    """Permutation module on the left cosets of the subgroup."""
    g = emb.parent
    k = emb.index
    lookup = emb.coset_lookup()
    action = []
    for a in g.elements():
        m = np.zeros((k, k), dtype=np.int64)
        for i, t in enumerate(emb.transversal):
            j, _ = lookup[g.mul(a, t)]
            m[j, i] = 1
        action.append(Mat(field, m))
    return GModule(g, field, action)


def named_module(group: FiniteGroup, field: PrimeField, kind: str, *,
                 size: int | None = None, emb: SubgroupEmbedding | None = None) -> GModule:
    if kind == "trivial":
        return trivial_module(group, field)
    if kind == "regular":
        return regular_module(group, field)
    if kind == "jordan":
        if size is None:
            raise KindUnavailable("jordan needs a size")
        return jordan_module(group, field, size)
    if kind == "coset_permutation":
        if emb is None:
            raise KindUnavailable("coset_permutation needs a subgroup embedding")
        return coset_permutation_module(emb, field)
    raise KindUnavailable(f"unknown module kind {kind!r}")


def restrict(m: GModule, emb: SubgroupEmbedding) -> GModule:
    """Same underlying space, action indexed along the subgroup injection."""
    action = [m.act(emb.inject[h]) for h in emb.sub.elements()]
    return GModule(emb.sub, m.field, action)


def induce(emb: SubgroupEmbedding, n: GModule) -> GModule:
    """Induced module on the basis t_i (x) e_j over the left transversal.

    g . (t_i (x) e) = t_{i'} (x) rho_n(h) e  where g t_i = t_{i'} h in G.
    """
    if n.group is not emb.sub:
        raise ValueError("module must live over the subgroup")
    g = emb.parent
    k, d = emb.index, n.dim
    lookup = emb.coset_lookup()
    action = []
    for a in g.elements():
        m = np.zeros((k * d, k * d), dtype=np.int64)
        for i, t in enumerate(emb.transversal):
            j, h = lookup[g.mul(a, t)]
            m[j * d:(j + 1) * d, i * d:(i + 1) * d] = n.act(h).arr
        action.append(Mat(n.field, m))
    return GModule(g, n.field, action)


def counit_hom(m: GModule, emb: SubgroupEmbedding) -> GModuleHom:
    """The evaluation map Ind Res M -> M, t_i (x) v -> rho(t_i) v.

    Always surjective: the identity-coset block is the identity matrix.
    """
    src = induce(emb, restrict(m, emb))
    blocks = [m.act(t) for t in emb.transversal]
    return GModuleHom(src, m, hstack(blocks))


def hom_basis(m: GModule, n: GModule) -> List[GModuleHom]:
    """Basis of the intertwiner space, solved on generators.

    Ordering is the canonical kernel-basis ordering of the linear system
    rho_n(g) F - F rho_m(g) = 0 over the generators.
    """
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    field = m.field
    blocks = []
    for g in m.group.generators:
        left = kronecker(n.act(g), Mat.identity(field, dm))
        right = kronecker(Mat.identity(field, dn), m.act(g).transpose())
        blocks.append(left - right)
    if not blocks:
        sys_mat = Mat.zeros(field, 0, dn * dm)
    else:
        sys_mat = vstack(blocks)
    basis = kernel_basis(sys_mat)
    out = []
    for j in range(basis.cols):
        mat = Mat(field, basis.arr[:, j].reshape(dn, dm))
        out.append(GModuleHom(m, n, mat))
    return out


def kernel_with_inclusion(f: GModuleHom) -> Tuple[GModule, GModuleHom]:
    """Kernel module on canonical null-space coordinates, with its inclusion."""
    basis = kernel_basis(f.mat)
    src = f.src
    action = []
    for g in src.group.elements():
        moved = mat_mul(src.act(g), basis)
        a = solve_linear(basis, moved)
        assert a is not None, "kernel is not action-stable"
        action.append(a)
    ker = GModule(src.group, src.field, action)
    return ker, GModuleHom(ker, src, basis)


def cokernel_with_projection(f: GModuleHom) -> Tuple[GModule, GModuleHom]:
    """Quotient of the target by the image, with the projection map."""
    dst = f.dst
    proj, section = quotient_projection(dst.field, dst.dim, f.mat)
    action = []
    for g in dst.group.elements():
        b = mat_mul(mat_mul(proj, dst.act(g)), section)
        assert mat_mul(b, proj) == mat_mul(proj, dst.act(g)), \
            "image is not action-stable"
        action.append(b)
    quo = GModule(dst.group, dst.field, action)
    return quo, GModuleHom(dst, quo, proj)


def direct_sum_modules(mods: Sequence[GModule], *, group: FiniteGroup | None = None,
                       field: PrimeField | None = None
                       ) -> Tuple[GModule, List[GModuleHom], List[GModuleHom]]:
    """Block-diagonal sum with injection and projection structure maps.

    The empty sum is legal when group and field are passed explicitly.
    """
    if not mods:
        if group is None or field is None:
            raise ValueError("empty sum needs explicit group and field")
        zero = GModule(group, field, [Mat.zeros(field, 0, 0)] * group.order)
        return zero, [], []
    group, field = mods[0].group, mods[0].field
    for m in mods[1:]:
        if m.group is not group or m.field.p != field.p:
            raise ValueError("summands must share group and field")
    dims = [m.dim for m in mods]
    total = sum(dims)
    action = []
    for g in group.elements():
        big = np.zeros((total, total), dtype=np.int64)
        off = 0
        for m in mods:
            big[off:off + m.dim, off:off + m.dim] = m.act(g).arr
            off += m.dim
        action.append(Mat(field, big))
    summed = GModule(group, field, action)
    injections, projections = [], []
    off = 0
    for m in mods:
        inj = np.zeros((total, m.dim), dtype=np.int64)
        prj = np.zeros((m.dim, total), dtype=np.int64)
        inj[off:off + m.dim, :] = np.eye(m.dim, dtype=np.int64)
        prj[:, off:off + m.dim] = np.eye(m.dim, dtype=np.int64)
        injections.append(GModuleHom(m, summed, Mat(field, inj)))
        projections.append(GModuleHom(summed, m, Mat(field, prj)))
        off += m.dim
    return summed, injections, projections


def submodule_spanned(m: GModule, vectors: Mat) -> Tuple[GModule, GModuleHom]:
    """Submodule generated by the given column vectors, with its inclusion."""
    cols = [mat_mul(m.act(g), vectors) for g in m.group.elements()]
    span = column_space_basis(hstack(cols)) if cols else vectors
    action = []
    for g in m.group.elements():
        a = solve_linear(span, mat_mul(m.act(g), span))
        assert a is not None
        action.append(a)
    sub = GModule(m.group, m.field, action)
    return sub, GModuleHom(sub, m, span)


def random_module(group: FiniteGroup, field: PrimeField, recipe: str, seed: int, *,
                  rank: int = 1, vectors: int = 1) -> GModule:
    """Deterministic action-respecting random module.

    Recipes: submodule_of_free closes random vectors of a free module under
    the action; quotient_of_free divides a free module by such a closure;
    sum_of_named mixes small named modules. Same seed, same module.
    """
    rng = SplitMix64(seed)
    if recipe in ("submodule_of_free", "quotient_of_free"):
        free, _, _ = direct_sum_modules([regular_module(group, field)] * rank)
        vecs = rand_mat(field, free.dim, vectors, rng) if vectors else Mat.zeros(field, free.dim, 0)
        sub, incl = submodule_spanned(free, vecs)
        if recipe == "submodule_of_free":
            return sub
        quo, _ = cokernel_with_projection(incl)
        return quo
    if recipe == "sum_of_named":
        kinds = ["trivial", "regular"]
        n = group.order
        if len(group.generators) == 1 and group.element_order(group.generators[0]) == n \
                and n % field.p == 0:
            kinds += [f"jordan{s}" for s in range(1, n + 1)
                      if _jordan_ok(group, field, s)]
        parts = []
        for _ in range(1 + rng.below(3)):
            k = rng.choice(kinds)
            if k.startswith("jordan"):
                parts.append(jordan_module(group, field, int(k[6:])))
            else:
                parts.append(named_module(group, field, k))
        return direct_sum_modules(parts)[0]
    raise ValueError(f"unknown recipe {recipe!r}")


def _jordan_ok(group: FiniteGroup, field: PrimeField, size: int) -> bool:
    try:
        jordan_module(group, field, size)
        return True
    except KindUnavailable:
        return False

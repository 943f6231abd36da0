"""kG-modules: construction, induction/restriction, counit, kernels."""

from __future__ import annotations

import itertools

import pytest

from relstab.errors import KindUnavailable, RelationViolation, SingularMatrix
from relstab.groups import cyclic, klein_four, subgroup_generated
from relstab.linalg import Mat, PrimeField, mat_mul, rank
from relstab.modctx import (
    GModuleHom,
    cokernel_with_projection,
    counit_hom,
    direct_sum_modules,
    hom_basis,
    induce,
    jordan_module,
    kernel_with_inclusion,
    module_from_action,
    named_module,
    random_module,
    regular_module,
    restrict,
    trivial_module,
)

F2 = PrimeField(2)
F3 = PrimeField(3)


def brute_hom_dim(m, n):
    """Independent oracle: enumerate every matrix and count exact intertwiners."""
    p = m.field.p
    hits = []
    for combo in itertools.product(range(p), repeat=m.dim * n.dim):
        cand = Mat(m.field, [list(combo[i * m.dim:(i + 1) * m.dim]) for i in range(n.dim)])
        if all(mat_mul(cand, m.act(g)) == mat_mul(n.act(g), cand)
               for g in m.group.elements()):
            hits.append(cand)
    from relstab.linalg import row_space, vstack
    if not hits:
        return 0
    rows = vstack([Mat(m.field, [h.entries]) for h in hits])
    return row_space(rows).rows


class TestModuleFromAction:
    def test_regular_c2_from_swap(self):
        g = cyclic(2)
        swap = Mat(F2, [[0, 1], [1, 0]])
        m = module_from_action(g, F2, [swap])
        assert m.dim == 2
        assert m.act(1) == swap

    def test_unipotent_c4(self):
        g = cyclic(4)
        j = Mat(F2, [[1, 0], [1, 1]])
        m = module_from_action(g, F2, [j])
        assert m.act(2) == mat_mul(j, j)

    def test_singular_generator_rejected(self):
        g = cyclic(2)
        with pytest.raises(SingularMatrix):
            module_from_action(g, F2, [Mat(F2, [[1, 1], [1, 1]])])

    def test_relation_violation(self):
        # an order-3 matrix cannot generate a C4 action
        g = cyclic(4)
        bad = Mat(F2, [[0, 1], [1, 1]])
        with pytest.raises(RelationViolation):
            module_from_action(g, F2, [bad])


class TestNamedModules:
    def test_regular_c2_is_swap(self):
        m = regular_module(cyclic(2), F2)
        assert m.act(1) == Mat(F2, [[0, 1], [1, 0]])

    def test_jordan_full_size_iso_regular(self):
        g = cyclic(4)
        j4 = jordan_module(g, F2, 4)
        reg = regular_module(g, F2)
        homs = hom_basis(j4, reg)
        from relstab.linalg import is_invertible
        found = None
        p = 2
        for combo in itertools.product(range(p), repeat=len(homs)):
            cand = Mat.zeros(F2, 4, 4)
            for c, h in zip(combo, homs):
                if c:
                    cand = cand + c * h.mat
            if is_invertible(cand):
                found = cand
                break
        assert found is not None, "J4 must be isomorphic to the regular module"

    def test_jordan_preconditions(self):
        with pytest.raises(KindUnavailable):
            jordan_module(cyclic(3), F2, 2)  # p does not divide |G|
        with pytest.raises(KindUnavailable):
            jordan_module(cyclic(4), F2, 5)  # size out of range
        with pytest.raises(KindUnavailable):
            jordan_module(klein_four(), F2, 2)  # not cyclic

    def test_jordan_mixed_order(self):
        # C6 in characteristic 3: sizes up to the 3-part work, beyond fails
        g = cyclic(6)
        assert jordan_module(g, F3, 3).dim == 3
        with pytest.raises(KindUnavailable):
            jordan_module(g, F3, 4)

    def test_coset_permutation_klein(self):
        g = klein_four()
        emb = subgroup_generated(g, [1])
        m = named_module(g, F2, "coset_permutation", emb=emb)
        assert m.dim == 2
        assert m.act(1) == Mat.identity(F2, 2)       # a fixes both cosets
        assert m.act(2) == Mat(F2, [[0, 1], [1, 0]])  # b swaps them


class TestRestrictInduce:
    def test_restrict_regular_c4_to_c2(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        res = restrict(regular_module(g, F2), emb)
        assert res.dim == 4
        # the nontrivial element of C2 acts by the permutation g^2: two 2-cycles
        sq = res.act(1)
        assert mat_mul(sq, sq) == Mat.identity(F2, 4)
        assert sq != Mat.identity(F2, 4)
        two = regular_module(emb.sub, F2)
        pair = direct_sum_modules([two, two])[0]
        assert brute_hom_dim(res, pair) == brute_hom_dim(pair, pair)

    def test_restrict_trivial(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        assert restrict(trivial_module(g, F2), emb).dim == 1

    def test_restrict_to_trivial_subgroup_gives_identity_actions(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [])
        res = restrict(regular_module(g, F2), emb)
        assert res.dim == 4 and res.act(0) == Mat.identity(F2, 4)

    def test_induce_dims(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        ind = induce(emb, trivial_module(emb.sub, F2))
        assert ind.dim == 2

    def test_induce_from_trivial_subgroup_is_regular(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [])
        ind = induce(emb, trivial_module(emb.sub, F2))
        reg = regular_module(g, F2)
        assert ind.dim == 4
        assert all(ind.act(a) == reg.act(a) for a in g.elements())

    def test_induce_matches_coset_permutation(self):
        g = klein_four()
        emb = subgroup_generated(g, [1])
        ind = induce(emb, trivial_module(emb.sub, F2))
        cos = named_module(g, F2, "coset_permutation", emb=emb)
        assert all(ind.act(a) == cos.act(a) for a in g.elements())


class TestCounit:
    def test_counit_trivial_c4_c2(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        eps = counit_hom(trivial_module(g, F2), emb)
        assert eps.src.dim == 2 and eps.dst.dim == 1
        assert rank(eps.mat) == 1
        ker, incl = kernel_with_inclusion(eps)
        assert ker.dim == 1
        assert ker.act(1) == Mat.identity(F2, 1)  # the unique 1-dim module is trivial

    def test_counit_always_surjective(self):
        g = klein_four()
        emb = subgroup_generated(g, [2])
        for kind in ("trivial", "regular"):
            m = named_module(g, F2, kind)
            eps = counit_hom(m, emb)
            assert rank(eps.mat) == m.dim

    def test_counit_over_whole_group(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [1])
        m = regular_module(g, F2)
        eps = counit_hom(m, emb)
        assert eps.src.dim == m.dim and rank(eps.mat) == m.dim


class TestHomBasis:
    def test_regular_c2_endos(self):
        m = regular_module(cyclic(2), F2)
        assert len(hom_basis(m, m)) == 2
        assert brute_hom_dim(m, m) == 2

    def test_trivial_endos(self):
        m = trivial_module(cyclic(4), F2)
        assert len(hom_basis(m, m)) == 1

    def test_jordan_pair(self):
        g = cyclic(4)
        j2, j3 = jordan_module(g, F2, 2), jordan_module(g, F2, 3)
        assert len(hom_basis(j2, j3)) == 2
        assert brute_hom_dim(j2, j3) == 2

    def test_intertwining_asserted(self):
        g = cyclic(2)
        m = regular_module(g, F2)
        t = trivial_module(g, F2)
        with pytest.raises(ValueError):
            GModuleHom(m, t, Mat(F2, [[1, 0]]))  # not an intertwiner


class TestKernelCokernel:
    def test_kernel_of_identity(self):
        m = regular_module(cyclic(2), F2)
        ident = GModuleHom(m, m, Mat.identity(F2, 2))
        ker, incl = kernel_with_inclusion(ident)
        assert ker.dim == 0

    def test_kernel_of_zero_map(self):
        m = regular_module(cyclic(2), F2)
        z = GModuleHom(m, m, Mat.zeros(F2, 2, 2))
        ker, incl = kernel_with_inclusion(z)
        assert ker.dim == 2

    def test_cokernel_of_identity(self):
        m = regular_module(cyclic(2), F2)
        ident = GModuleHom(m, m, Mat.identity(F2, 2))
        quo, proj = cokernel_with_projection(ident)
        assert quo.dim == 0

    def test_cokernel_of_zero(self):
        m = regular_module(cyclic(2), F2)
        z = GModuleHom(m, m, Mat.zeros(F2, 2, 2))
        quo, proj = cokernel_with_projection(z)
        assert quo.dim == 2 and rank(proj.mat) == 2

    def test_socle_quotient(self):
        g = cyclic(2)
        reg = regular_module(g, F2)
        t = trivial_module(g, F2)
        socle = GModuleHom(t, reg, Mat(F2, [[1], [1]]))  # fixed vector
        quo, proj = cokernel_with_projection(socle)
        assert quo.dim == 1
        assert quo.act(1) == Mat.identity(F2, 1)

    def test_composites_vanish(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        eps = counit_hom(jordan_module(g, F2, 3), emb)
        ker, incl = kernel_with_inclusion(eps)
        assert mat_mul(eps.mat, incl.mat).is_zero()
        quo, proj = cokernel_with_projection(incl)
        assert mat_mul(proj.mat, incl.mat).is_zero()
        assert rank(incl.mat) == ker.dim  # inclusion injective
        assert eps.src.dim == ker.dim + rank(eps.mat)  # rank-nullity


class TestDirectSumAndRandom:
    def test_dims_add(self):
        g = cyclic(4)
        s = direct_sum_modules([jordan_module(g, F2, 2), jordan_module(g, F2, 3)])[0]
        assert s.dim == 5

    def test_empty_sum_with_context(self):
        g = cyclic(4)
        s = direct_sum_modules([], group=g, field=F2)[0]
        assert s.dim == 0

    def test_structure_maps(self):
        g = cyclic(2)
        a, b = trivial_module(g, F2), regular_module(g, F2)
        s, injs, projs = direct_sum_modules([a, b])
        assert mat_mul(projs[0].mat, injs[0].mat) == Mat.identity(F2, 1)
        assert mat_mul(projs[1].mat, injs[1].mat) == Mat.identity(F2, 2)
        assert mat_mul(projs[0].mat, injs[1].mat).is_zero()

    def test_single_summand_identity_maps(self):
        g = cyclic(2)
        m = regular_module(g, F2)
        s, injs, projs = direct_sum_modules([m])
        assert injs[0].mat == Mat.identity(F2, 2)

    def test_random_deterministic(self):
        g = cyclic(4)
        a = random_module(g, F2, "submodule_of_free", 99)
        b = random_module(g, F2, "submodule_of_free", 99)
        assert a.dim == b.dim
        assert all(x == y for x, y in zip(a.action, b.action))

    def test_quotient_of_free_with_no_vectors_is_regular(self):
        g = cyclic(4)
        m = random_module(g, F2, "quotient_of_free", 5, vectors=0)
        assert m.dim == 4

    def test_submodule_of_free_is_jordan_sized(self):
        g = cyclic(4)
        for seed in range(6):
            m = random_module(g, F2, "submodule_of_free", seed)
            assert 0 <= m.dim <= 4

"""Cayley-table groups, subgroups, transversals."""

from __future__ import annotations

import numpy as np
import pytest

from relstab.errors import ClosureBoundExceeded, InvalidPermutation, ValidationFailure
from relstab.groups import (
    FiniteGroup,
    build_named,
    check_cayley,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    klein_four,
    subgroup_generated,
)

S3_GENS = [(1, 0, 2), (0, 2, 1)]


def s3():
    return from_permutations(S3_GENS)


class TestConstructors:
    def test_cyclic_orders(self):
        g = cyclic(4)
        assert sorted(g.element_order(a) for a in g.elements()) == [1, 2, 4, 4]

    def test_klein_four_orders(self):
        g = klein_four()
        assert [g.element_order(a) for a in g.elements()] == [1, 2, 2, 2]

    def test_from_permutations_klein(self):
        g = from_permutations([(1, 0, 2, 3), (0, 1, 3, 2)])
        assert g.order == 4
        assert all(g.element_order(a) == 2 for a in range(1, 4))

    def test_s3(self):
        g = s3()
        assert g.order == 6
        assert sorted(g.element_order(a) for a in g.elements()) == [1, 2, 2, 2, 3, 3]

    def test_dihedral(self):
        g = dihedral(3)
        assert g.order == 6
        # r s != s r
        r, s = 1, 3
        assert g.mul(r, s) != g.mul(s, r)

    def test_direct_product(self):
        g = direct_product(cyclic(2), cyclic(2))
        assert g.order == 4
        assert all(g.element_order(a) == 2 for a in range(1, 4))

    def test_build_named_dispatch(self):
        assert build_named("cyclic", n=6).order == 6
        assert build_named("klein_four").order == 4
        with pytest.raises(ValueError):
            build_named("simple")

    def test_closure_bound(self):
        # a 5-cycle and a transposition generate S5 (order 120 > 32)
        with pytest.raises(ClosureBoundExceeded):
            from_permutations([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], bound=32)

    def test_invalid_permutation(self):
        with pytest.raises(InvalidPermutation):
            from_permutations([(0, 0, 1)])


class TestCheckCayley:
    def test_cyclic6_passes(self):
        rep = check_cayley(cyclic(6))
        assert rep.ok and rep.order == 6

    def test_corrupted_entry_fails_with_witness(self):
        table = np.array([[(i + j) % 3 for j in range(3)] for i in range(3)])
        table[2, 2] = 2  # should be 1
        with pytest.raises(ValidationFailure) as err:
            FiniteGroup(table, (1,))
        assert err.value.witness is not None

    def test_direct_product_passes(self):
        assert check_cayley(direct_product(cyclic(2), cyclic(2))).ok


class TestSubgroups:
    def test_c4_subgroup_of_order_two(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [2])
        assert emb.sub.order == 2
        assert len(emb.transversal) == 2
        assert emb.transversal[0] == 0

    def test_trivial_subgroup(self):
        g = cyclic(4)
        emb = subgroup_generated(g, [])
        assert emb.sub.order == 1
        assert emb.transversal == (0, 1, 2, 3)

    def test_klein_coset_reps(self):
        g = klein_four()
        emb = subgroup_generated(g, [1])
        assert emb.sub.order == 2
        assert emb.transversal == (0, 2)

    def test_index_times_order(self):
        for g, elems in [(cyclic(4), [2]), (klein_four(), [1]), (s3(), [])]:
            emb = subgroup_generated(g, elems)
            assert len(emb.transversal) * emb.sub.order == g.order

    def test_cosets_partition(self):
        g = s3()
        order3 = next(a for a in g.elements() if g.element_order(a) == 3)
        emb = subgroup_generated(g, [order3])
        seen = []
        for t in emb.transversal:
            seen += [g.mul(t, emb.inject[h]) for h in emb.sub.elements()]
        assert sorted(seen) == list(g.elements())

    def test_injection_is_homomorphism(self):
        g = s3()
        order3 = next(a for a in g.elements() if g.element_order(a) == 3)
        emb = subgroup_generated(g, [order3])
        for a in emb.sub.elements():
            for b in emb.sub.elements():
                assert emb.inject[emb.sub.mul(a, b)] == g.mul(emb.inject[a], emb.inject[b])


class TestInvariants:
    @pytest.mark.parametrize("g", [cyclic(5), klein_four(), dihedral(4)],
                             ids=["C5", "V4", "D4"])
    def test_left_multiplication_is_permutation(self, g):
        for a in g.elements():
            row = [g.mul(a, b) for b in g.elements()]
            assert sorted(row) == list(g.elements())

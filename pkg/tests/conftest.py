"""Shared fixtures and brute-force helpers for the test suite."""

from __future__ import annotations

import itertools

import pytest

from relstab import PrimeField
from relstab.linalg import Mat, is_invertible


@pytest.fixture(scope="session")
def f2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def f3():
    return PrimeField(3)


def find_invertible_combo(ctx, homs, budget: int = 4096):
    """Search coefficient combinations of a hom basis for an isomorphism.

    Exhaustive within the budget; returns the first invertible combination
    or None. Used to certify 'isomorphic' claims independently of any
    solver shortcut.
    """
    if not homs:
        return None
    p = ctx.field.p
    k = len(homs)
    if p ** k > budget:
        raise ValueError(f"p^{k} exceeds the search budget")
    for combo in itertools.product(range(p), repeat=k):
        f = ctx.zero_hom(homs[0].src, homs[0].dst)
        for c, h in zip(combo, homs):
            if c:
                f = ctx.add(f, ctx.scale(h, c))
        mat = getattr(f, "mat", None)
        if mat is not None:
            if is_invertible(mat):
                return f
        else:
            if all(is_invertible(f.comp(i)) for i in f.src.degrees()) \
                    and f.src.dims == f.dst.dims and f.src.lo == f.dst.lo:
                return f
    return None


def stable_dim_vector(ctx, probes, obj):
    """Stable-hom dimensions of obj against a probe battery."""
    from relstab.stable import stable_hom
    return [stable_hom(ctx, r, obj).qdim for r in probes]

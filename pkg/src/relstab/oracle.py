"""Independent second-route computations guarding the main solvers.

These are deliberately naive: full enumeration where feasible, and
textbook identities (stable homs out of spheres are homology) where not.
They exist to catch the primary solvers lying, so they never share a code
path with what they check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List

import numpy as np

from . import chctx
from .chctx import FComplex
from .contexts import ComplexContext
from .errors import BudgetExceeded
from .linalg import Mat, row_space, vstack
from .stable import FrobeniusContext, stable_hom

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class OracleReport:
    route_a: object
    route_b: object
    agree: bool
    search_space: int

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Mat):
                return v.tolist()
            return v
        return {
            "route_a": enc(self.route_a),
            "route_b": enc(self.route_b),
            "agree": self.agree,
            "search_space": self.search_space,
        }


def hom_basis_bruteforce(ctx: FrobeniusContext, m, n,
                         budget: int = DEFAULT_BUDGET) -> list:
    """Enumerate every candidate map and keep the exact morphisms.

    The search space is p^(ambient hom dimension); a basis of the span of
    all hits is returned in canonical echelon order.
    """
    p = ctx.field.p
    amb = ctx.ambient_hom_dim(m, n)
    if p ** amb > budget:
        raise BudgetExceeded(f"p^{amb} = {p ** amb} exceeds budget {budget}")
    hits: List[Mat] = []
    for combo in itertools.product(range(p), repeat=amb):
        col = Mat(ctx.field, np.array(combo, dtype=np.int64).reshape(-1, 1))
        try:
            cand = ctx.hom_from_vec(m, n, col)
        except ValueError:
            continue
        if not ctx.morphism_check_exhaustive(cand):
            continue
        hits.append(col.transpose())
    if not hits:
        return []
    ech = row_space(vstack(hits))
    out = []
    for i in range(ech.rows):
        col = Mat(ctx.field, ech.arr[i, :].reshape(-1, 1))
        out.append(ctx.hom_from_vec(m, n, col))
    return out


def span_of_homs(ctx: FrobeniusContext, homs) -> Mat:
    """Canonical row-space form of a list of morphisms (ambient coordinates)."""
    if not homs:
        return Mat.zeros(ctx.field, 0, 0)
    rows = vstack([ctx.hom_vec(h).transpose() for h in homs])
    return row_space(rows)


def phom_dual_route(ctx: FrobeniusContext, m, n) -> OracleReport:
    """Compare the two descriptions of maps factoring through projective-injectives.

    Route A composes hom(I(m), n) with the injective embedding of the
    source; route B composes the projective epi onto the target with
    hom(m, P(n)). Both spans are compared as canonical row spaces.
    """
    iota = ctx.injective_embedding(m)
    route_a = [ctx.compose(h, iota) for h in ctx.hom_basis(iota.dst, n)]
    epi = ctx.projective_epi(n)
    route_b = [ctx.compose(epi, h) for h in ctx.hom_basis(m, epi.src)]
    span_a = span_of_homs(ctx, route_a)
    span_b = span_of_homs(ctx, route_b)
    agree = (span_a.rows == span_b.rows
             and (span_a.rows == 0 or span_a == span_b))
    return OracleReport(route_a=span_a, route_b=span_b, agree=agree,
                        search_space=len(route_a) + len(route_b))


def homology_stablehom_oracle(x: FComplex, degree_range) -> OracleReport:
    """Stable homs out of spheres must be homology, degree by degree."""
    ctx = ComplexContext(x.field)
    hdims = chctx.homology_dims(x)
    route_a, route_b = [], []
    for i in degree_range:
        s = chctx.sphere(x.field, i)
        route_a.append(stable_hom(ctx, s, x).qdim)
        route_b.append(hdims.get(i, 0))
    return OracleReport(route_a=route_a, route_b=route_b,
                        agree=route_a == route_b,
                        search_space=len(route_a))

"""The approximation ladder, localization triangles, and their verification.

Given a finite resolution K_0 = X, (R_i -> K_i, K_{i+1} -> R_i), the ladder
starts on the far left with the inclusion K_d -> R_{d-1} and repeatedly
cones: L_i = cone(eps_{i+1}), with a canonical filler mu_i : L_i -> K_i
that is zero on the injective block of the cone presentation (well-defined
because the composite into K_i vanishes exactly, which is asserted). The
maps eps_i = (K_i -> R_{i-1}) . mu_i continue the descent, and the final
filler over K_0 = X is the comparison map lam: L_0 -> X.

cone(lam) packages the localization triangle X_R -> X -> X_{R-perp}; the
verification harness then checks, for a finite member battery plus seeded
extension-closure objects, that post-composition by lam is an isomorphism
on stable homs and that X_{R-perp} is right-orthogonal to the battery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    CompositeNonzero,
    ConditionalViolated,
    FactorizationFailure,
    NotFinite,
    WellDefinednessFailure,
)
from .linalg import Mat, rank
from .precover import (
    CapReached,
    FiniteDim,
    PrecoverSystem,
    Resolution,
    ResolutionStep,
    build_resolution,
    express_through,
    _is_surjective,
)
from .rng import SplitMix64
from .stable import (
    FrobeniusContext,
    StableHomSpace,
    Triangle,
    cone_triangle,
    induced_matrix,
    is_stably_zero_object,
    stable_hom,
)


@dataclass(frozen=True)
class LadderStep:
    """One rung: L_i = cone(eps into R_i), with its filler and descent map."""

    index: int
    triangle: Triangle      # previous -> R_i -> L_i
    mu: object              # L_i -> K_i, zero on the injective block
    eps: Optional[object]   # L_i -> R_{i-1} (absent at i = 0)


@dataclass(frozen=True)
class Ladder:
    resolution: Resolution
    steps: Tuple[LadderStep, ...]   # indices d-1, ..., 0
    l0: object
    lam: object                     # lam: L_0 -> X

    @property
    def d(self) -> int:
        out = self.resolution.outcome
        return out.d if isinstance(out, FiniteDim) else -1


def _cone_filler(ctx: FrobeniusContext, tri: Triangle, target_map):
    """Descend (target_map on the R block, 0 on the injective block) to the cone.

    target_map: R_i -> K_i. Well-defined iff target_map . eps vanishes
    exactly in E, which is asserted before solving; the filler is unique
    because the cone presentation's projection is epi.
    """
    phi = ctx.compose(target_map, tri.cone.projections[0])
    if not ctx.is_zero_hom(ctx.compose(phi, tri.cone.graph_map)):
        raise WellDefinednessFailure(
            "composite into the kernel object does not vanish on the cone presentation")
    return ctx.factor_through_epi(tri.cone.proj_to_cone, phi)


def build_ladder(res: Resolution) -> Ladder:
    """Run the cone ladder over a finite resolution.

    d = 0 returns the trivial ladder L_0 = X, lam = id. For d >= 1 the far
    left is seeded with R_d := K_d and eps_d := (K_d -> R_{d-1}); each rung
    asserts exactly the vanishing that makes its filler well-defined.
    """
    if isinstance(res.outcome, CapReached):
        raise NotFinite(f"resolution capped at {res.outcome.cap} steps")
    ctx = res.system.ctx
    d = res.outcome.d
    if d == 0:
        return Ladder(resolution=res, steps=(), l0=res.x, lam=ctx.identity(res.x))
    steps = res.steps  # steps[i]: (K_i, R_i, pre_i, K_{i+1}, incl_{i+1})
    assert len(steps) == d
    # R_d := K_d; eps_d is the kernel inclusion K_d -> R_{d-1}
    eps = steps[d - 1].inclusion
    rungs: List[LadderStep] = []
    for i in range(d - 1, -1, -1):
        tri = cone_triangle(ctx, eps)
        mu = _cone_filler(ctx, tri, steps[i].precover)
        # the composite (previous -> L_i -> K_i) vanishes exactly in E
        via_prev = ctx.compose(mu, ctx.compose(tri.g, tri.f))
        if not ctx.is_zero_hom(via_prev):
            raise WellDefinednessFailure(
                f"rung {i}: previous object does not die in K_{i}")
        # Lemma-1-style square: mu . (R_i -> L_i) equals the precover map
        assert ctx.hom_eq(ctx.compose(mu, tri.g), steps[i].precover), \
            "cone structure map must commute with the precover"
        if i > 0:
            eps = ctx.compose(steps[i - 1].inclusion, mu)
            rungs.append(LadderStep(index=i, triangle=tri, mu=mu, eps=eps))
        else:
            rungs.append(LadderStep(index=i, triangle=tri, mu=mu, eps=None))
    lam = rungs[-1].mu  # K_0 = X, so the last filler is the comparison map
    return Ladder(resolution=res, steps=tuple(rungs), l0=rungs[-1].triangle.c, lam=lam)


@dataclass(frozen=True)
class LocalizationTriangle:
    """X_R -> X -> X_{R-perp}, built as the cone of lam."""

    x_r: object
    x: object
    x_perp: object
    lam: object
    mu: object          # X -> X_{R-perp}
    connecting: object  # X_{R-perp} -> X_R[1]
    triangle: Triangle


def localization_triangle(ladder: Ladder) -> LocalizationTriangle:
    ctx = ladder.resolution.system.ctx
    tri = cone_triangle(ctx, ladder.lam)
    return LocalizationTriangle(x_r=ladder.l0, x=ladder.resolution.x,
                                x_perp=tri.c, lam=ladder.lam, mu=tri.g,
                                connecting=tri.h, triangle=tri)


@dataclass(frozen=True)
class ObjectCheck:
    subject: str
    dim_l0: int
    dim_x: int
    iso: bool
    orthogonal_dim: int
    extension: bool = False

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "dim_hom_L0": self.dim_l0,
            "dim_hom_X": self.dim_x,
            "iso": self.iso,
            "dim_hom_X_perp": self.orthogonal_dim,
            "extension": self.extension,
        }


@dataclass(frozen=True)
class VerificationReport:
    system: str
    seed: int
    checks: Tuple[ObjectCheck, ...]

    @property
    def verdict(self) -> bool:
        return all(c.iso and c.orthogonal_dim == 0 for c in self.checks)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "seed": self.seed,
            "per_object": [c.to_json() for c in self.checks],
            "verdict": "pass" if self.verdict else "fail",
        }


def _extension_battery(ctx: FrobeniusContext, base: Sequence, depth: int,
                       rng: SplitMix64, weight_cap: int = 512) -> list:
    """Seeded objects built from the battery by iterated cones of random maps."""
    pool = list(base)
    out = []
    for _ in range(depth):
        a = rng.choice(pool)
        b = rng.choice(pool)
        basis = ctx.hom_basis(a, b)
        f = ctx.zero_hom(a, b)
        for h in basis:
            c = rng.below(ctx.field.p)
            if c:
                f = ctx.add(f, ctx.scale(h, c))
        cone = cone_triangle(ctx, f).c
        if ctx.weight(cone) > weight_cap:
            continue
        pool.append(cone)
        out.append(cone)
    return out


def verify_localization(ladder: Ladder, sys: PrecoverSystem, window: int = 2,
                        seed: int = 1, extension_depth: int = 1) -> VerificationReport:
    """Check the comparison isomorphisms and orthogonality over a battery.

    For every battery object R: the induced map (R, L_0) -> (R, X) must be
    invertible and (R, X_perp) must vanish. Extension-closure objects are
    sampled by seeded cone steps and checked the same way.
    """
    ctx = sys.ctx
    loc = localization_triangle(ladder)
    rng = SplitMix64(seed)
    battery = [(obj, False) for obj in sys.test_objects(window)]
    ext = _extension_battery(ctx, [b for b, _ in battery], extension_depth, rng.spawn())
    battery += [(obj, True) for obj in ext]
    checks = []
    for obj, is_ext in battery:
        s_l0 = stable_hom(ctx, obj, loc.x_r)
        s_x = stable_hom(ctx, obj, loc.x)
        mat = induced_matrix(ctx, s_l0, s_x, loc.lam)
        iso = s_l0.qdim == s_x.qdim and rank(mat) == s_x.qdim
        orth = stable_hom(ctx, obj, loc.x_perp).qdim
        checks.append(ObjectCheck(subject=ctx.describe(obj), dim_l0=s_l0.qdim,
                                  dim_x=s_x.qdim, iso=iso, orthogonal_dim=orth,
                                  extension=is_ext))
    return VerificationReport(system=sys.label, seed=seed, checks=tuple(checks))


def adjoint_values(x, sys: PrecoverSystem, cap: int = 4,
                   dim_budget: int = 4096) -> tuple:
    """(value of the right adjoint to the inclusion, value of the quotient's adjoint).

    Runs resolution -> ladder -> localization triangle and returns
    (L_0, X_perp); NotFinite propagates when the resolution caps out.
    """
    res = build_resolution(sys, x, cap=cap, dim_budget=dim_budget)
    ladder = build_ladder(res)
    loc = localization_triangle(ladder)
    return loc.x_r, loc.x_perp


def remark_iii_check(ladder: Ladder) -> bool:
    """If every step was a conflation, the comparison map must be a stable iso.

    Returns True when the conditional applied and held, False when it did
    not apply; raises ConditionalViolated if it applied and failed (which
    must never happen).
    """
    if not all(s.conflation for s in ladder.resolution.steps):
        return False
    ctx = ladder.resolution.system.ctx
    cone = cone_triangle(ctx, ladder.lam).c
    if not is_stably_zero_object(ctx, cone):
        raise ConditionalViolated(
            "all steps were conflations but the comparison cone is not stably zero")
    return True


@dataclass(frozen=True)
class SyntheticStep:
    """Externally supplied rung data: R_i, its map to K_i, and the next inclusion."""

    r: object
    precover: object    # R_i -> K_i
    inclusion: object   # K_{i+1} -> R_i


def synthetic_ladder(ctx_system: PrecoverSystem | FrobeniusContext, x,
                     steps: Sequence[SyntheticStep], mode: str = "strict") -> Ladder:
    """Run the ladder on an externally supplied chain (unit-test plumbing).

    Consecutive composites K_{i+1} -> R_i -> K_i must vanish exactly
    (CompositeNonzero otherwise). In strict mode every supplied map must
    pass factorization spot-checks against the supplied R_j's
    (FactorizationFailure); lax mode asserts only structural invariants.
    """
    if mode not in ("strict", "lax"):
        raise ValueError("mode must be 'strict' or 'lax'")
    ctx = ctx_system.ctx if isinstance(ctx_system, PrecoverSystem) else ctx_system
    current = x
    built: List[ResolutionStep] = []
    for i, st in enumerate(steps):
        if st.precover.dst is not current and not ctx.obj_eq(st.precover.dst, current):
            raise ValueError(f"step {i}: precover target is not K_{i}")
        comp = ctx.compose(st.precover, st.inclusion)
        if not ctx.is_zero_hom(comp):
            raise CompositeNonzero(f"step {i}: K_{i + 1} -> R_{i} -> K_{i} is nonzero")
        built.append(ResolutionStep(k=current, r=st.r, precover=st.precover,
                                    kernel=st.inclusion.src, inclusion=st.inclusion,
                                    conflation=_is_surjective(ctx, st.precover)))
        current = st.inclusion.src
    if mode == "strict":
        for i, st in enumerate(steps):
            for j, other in enumerate(steps):
                for f in ctx.hom_basis(other.r, built[i].k):
                    if express_through(ctx, st.precover, f) is None:
                        raise FactorizationFailure(
                            f"hom from R_{j} into K_{i} does not factor through R_{i}")

    class _Chain(PrecoverSystem):
        def __init__(self, inner: FrobeniusContext):
            self.ctx = inner
            self.label = f"synthetic(depth {len(steps)}, {mode})"

        def generators(self):
            return [st.r for st in steps]

    res = Resolution(system=_Chain(ctx), x=x, steps=tuple(built),
                     outcome=FiniteDim(len(built)))
    return build_ladder(res)

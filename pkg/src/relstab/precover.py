"""Precovering families, precovers, membership, and resolutions.

Three families ship: SubgroupInducedSystem covers a module by the counit
Ind Res X -> X; AddListSystem covers by the full evaluation map from hom
bases of a finite generator list (with the free/contractible generator
always adjoined); TruncationSystem covers a complex by the inclusion of
its good truncation. Membership is the E-level split-epi test: one exact
linear solve, no decomposition machinery.

A resolution iterates precover/kernel until the kernel is a member
(FiniteDim) or a step cap is hit (CapReached); per-step conflation flags
record whether the precover happened to be surjective, which nothing here
assumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import chctx, modctx
from .contexts import ComplexContext, ModuleContext
from .errors import DimensionBudgetExceeded
from .groups import SubgroupEmbedding
from .linalg import Mat, hstack, solve_linear
from .rng import SplitMix64
from .stable import FrobeniusContext, desuspend, suspend

DEFAULT_CAP = 4
DEFAULT_DIM_BUDGET = 4096


def express_through(ctx: FrobeniusContext, through, f) -> Optional[object]:
    """Solve f = through . g for a morphism g, inside the hom space.

    `through`: R -> X and `f`: M -> X; the unknown g: M -> R is sought as a
    combination of hom basis elements, so the factorization is exact and
    categorical, not merely linear.
    """
    basis = ctx.hom_basis(f.src, through.src)
    if not basis:
        return None if not ctx.is_zero_hom(f) else ctx.zero_hom(f.src, through.src)
    cols = [ctx.hom_vec(ctx.compose(through, b)) for b in basis]
    rhs = ctx.hom_vec(f)
    sol = solve_linear(hstack(cols), rhs)
    if sol is None:
        return None
    g = ctx.zero_hom(f.src, through.src)
    for j, b in enumerate(basis):
        c = int(sol.arr[j, 0])
        if c:
            g = ctx.add(g, ctx.scale(b, c))
    return g


def split_section(ctx: FrobeniusContext, epi_candidate) -> Optional[object]:
    """Section s with epi_candidate . s = id, if one exists."""
    return express_through(ctx, epi_candidate, ctx.identity(epi_candidate.dst))


class PrecoverSystem:
    """Shared surface of the three shipped precovering families."""

    ctx: FrobeniusContext
    label: str

    def precover_of(self, x):
        raise NotImplementedError

    def test_objects(self, window: int) -> list:
        """Finite member battery standing in for the whole family."""
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def sample_objects(self, rng: SplitMix64, count: int) -> list:
        """Seeded context objects for factorization spot-checks."""
        raise NotImplementedError

    def sample_members(self, rng: SplitMix64, count: int) -> list:
        """Seeded members (finite sums of generators)."""
        out = []
        gens = self.generators()
        for _ in range(count):
            picks = [rng.choice(gens) for _ in range(1 + rng.below(2))]
            out.append(self.ctx.direct_sum(picks)[0])
        return out


class SubgroupInducedSystem(PrecoverSystem):
    """H-projective modules, precovered by the counit Ind Res X -> X."""

    def __init__(self, ctx: ModuleContext, emb: SubgroupEmbedding):
        if emb.parent is not ctx.group:
            raise ValueError("embedding must target the context group")
        self.ctx = ctx
        self.emb = emb
        self.label = f"subgroup_induced([{ctx.group.label}:{emb.sub.label}])"

    def precover_of(self, x):
        return modctx.counit_hom(x, self.emb)

    def generators(self):
        triv = modctx.trivial_module(self.emb.sub, self.ctx.field)
        reg = modctx.regular_module(self.emb.sub, self.ctx.field)
        return [modctx.induce(self.emb, triv), modctx.induce(self.emb, reg)]

    def test_objects(self, window: int):
        gens = self.generators()
        out = list(gens)
        up = down = gens[0]
        for _ in range(window):
            up = suspend(self.ctx, up)
            down = desuspend(self.ctx, down)
            out.append(up)
            out.append(down)
        return out

    def sample_objects(self, rng: SplitMix64, count: int):
        out = []
        recipes = ["sum_of_named", "submodule_of_free", "quotient_of_free"]
        for _ in range(count):
            recipe = rng.choice(recipes)
            out.append(modctx.random_module(
                self.ctx.group, self.ctx.field, recipe, rng.next_u64(),
                rank=1, vectors=1 + rng.below(2)))
        return out


class AddListSystem(PrecoverSystem):
    """add(generators): precover by the full hom-basis evaluation map.

    The free (resp. contractible) generator is adjoined when absent so that
    projective-injectives stay inside the family.
    """

    def __init__(self, ctx: FrobeniusContext, generators: Sequence):
        self.ctx = ctx
        gens = list(generators)
        canonical = ctx.projective_generator()
        if not any(ctx.obj_eq(g, canonical) for g in gens):
            gens.append(canonical)
        if isinstance(ctx, ComplexContext):
            # adjoin disks covering the generators' shifted support, so that
            # contractible covers of members stay members
            lo = min([g.lo for g in gens] + [0])
            hi = max([g.hi for g in gens] + [0])
            for i in range(lo + 1, hi + 2):
                d = chctx.disk(ctx.field, i)
                if not any(ctx.obj_eq(g, d) for g in gens):
                    gens.append(d)
        self._generators = gens
        self.label = f"add_list({len(gens)} generators)"

    def generators(self):
        return list(self._generators)

    def precover_of(self, x):
        ctx = self.ctx
        pieces: List = []
        maps: List = []
        for g in self._generators:
            for h in ctx.hom_basis(g, x):
                pieces.append(g)
                maps.append(h)
        if not pieces:
            z = ctx.zero_object()
            return ctx.zero_hom(z, x)
        summed, injs, projs = ctx.direct_sum(pieces)
        ev = ctx.zero_hom(summed, x)
        for h, p in zip(maps, projs):
            ev = ctx.add(ev, ctx.compose(h, p))
        return ev

    def test_objects(self, window: int):
        out = list(self._generators)
        for g in self._generators:
            up = down = g
            for _ in range(window):
                up = suspend(self.ctx, up)
                out.append(up)
                if isinstance(self.ctx, ModuleContext):
                    down = desuspend(self.ctx, down)
                    out.append(down)
        return out

    def sample_objects(self, rng: SplitMix64, count: int):
        if isinstance(self.ctx, ModuleContext):
            return [modctx.random_module(self.ctx.group, self.ctx.field,
                                         "sum_of_named", rng.next_u64())
                    for _ in range(count)]
        return [chctx.random_complex(self.ctx.field, rng.spawn()) for _ in range(count)]


class TruncationSystem(PrecoverSystem):
    """Complexes supported in degrees >= 0, precovered by good truncation."""

    def __init__(self, ctx: ComplexContext):
        self.ctx = ctx
        self.label = "truncation(cutoff 0)"

    def precover_of(self, x):
        w, incl = chctx.truncation_W(x)
        return incl

    def generators(self):
        return [chctx.sphere(self.ctx.field, 0), chctx.disk(self.ctx.field, 1)]

    def test_objects(self, window: int):
        f = self.ctx.field
        out = [chctx.sphere(f, i) for i in range(0, window + 1)]
        out += [chctx.disk(f, i) for i in range(1, window + 1)]
        rng = SplitMix64(0x5eed)
        for _ in range(2):
            out.append(chctx.random_complex(f, rng.spawn(), lo=0, hi=max(window, 1)))
        return out

    def sample_objects(self, rng: SplitMix64, count: int):
        return [chctx.random_complex(self.ctx.field, rng.spawn()) for _ in range(count)]

    def sample_members(self, rng: SplitMix64, count: int):
        return [chctx.random_complex(self.ctx.field, rng.spawn(), lo=0, hi=3)
                for _ in range(count)]


def precover_of(sys: PrecoverSystem, x):
    return sys.precover_of(x)


def is_member(sys: PrecoverSystem, x) -> bool:
    """True iff the precover of x is a split epimorphism (one exact solve).

    This is an E-level notion: a complex merely homotopy-equivalent to a
    member may report False.
    """
    pre = sys.precover_of(x)
    return split_section(sys.ctx, pre) is not None


@dataclass(frozen=True)
class FiniteDim:
    d: int


@dataclass(frozen=True)
class CapReached:
    cap: int


@dataclass(frozen=True)
class ResolutionStep:
    k: object          # K_i
    r: object          # R_i, the precover source
    precover: object   # R_i -> K_i
    kernel: object     # K_{i+1}
    inclusion: object  # K_{i+1} -> R_i
    conflation: bool   # whether the precover map was surjective


@dataclass(frozen=True)
class Resolution:
    system: PrecoverSystem
    x: object
    steps: Tuple[ResolutionStep, ...]
    outcome: object  # FiniteDim | CapReached

    @property
    def kernel_dims(self) -> list:
        return [self.system.ctx.weight(s.kernel) for s in self.steps]


def _is_surjective(ctx: FrobeniusContext, f) -> bool:
    if isinstance(ctx, ModuleContext):
        from .linalg import rank as _rank
        return _rank(f.mat) == f.dst.dim
    from .linalg import rank as _rank
    return all(_rank(f.comp(i)) == f.dst.dim(i) for i in f.dst.degrees())


def build_resolution(sys: PrecoverSystem, x, cap: int = DEFAULT_CAP,
                     dim_budget: int = DEFAULT_DIM_BUDGET) -> Resolution:
    """Iterate precover/kernel until membership or the cap.

    Raises DimensionBudgetExceeded when any intermediate object outgrows
    the budget; nothing assumes the steps are conflations.
    """
    ctx = sys.ctx
    steps: List[ResolutionStep] = []
    current = x
    for i in range(cap + 1):
        if is_member(sys, current):
            return Resolution(sys, x, tuple(steps), FiniteDim(i))
        if i == cap:
            return Resolution(sys, x, tuple(steps), CapReached(cap))
        pre = sys.precover_of(current)
        if ctx.weight(pre.src) > dim_budget:
            raise DimensionBudgetExceeded(
                f"precover source weight {ctx.weight(pre.src)} > {dim_budget}")
        ker, incl = ctx.kernel(pre)
        if ctx.weight(ker) > dim_budget:
            raise DimensionBudgetExceeded(
                f"kernel weight {ctx.weight(ker)} > {dim_budget}")
        assert ctx.is_zero_hom(ctx.compose(pre, incl)), \
            "kernel inclusion must compose to zero with the precover"
        steps.append(ResolutionStep(
            k=current, r=pre.src, precover=pre, kernel=ker, inclusion=incl,
            conflation=_is_surjective(ctx, pre)))
        current = ker
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class HypothesisRow:
    subject: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class HypothesisReport:
    """Results of the three family hypotheses, shift-closure split by direction."""

    system: str
    precovering: Tuple[HypothesisRow, ...]
    shifts_up: Tuple[HypothesisRow, ...]
    shifts_down: Tuple[HypothesisRow, ...]
    injectives: Tuple[HypothesisRow, ...]

    @property
    def passed_as_used(self) -> bool:
        """(i), (ii) in the upward direction, and (iii).

        The downward direction is reported separately and informationally;
        the ladder only consumes upward shifts.
        """
        return (all(r.ok for r in self.precovering)
                and all(r.ok for r in self.shifts_up)
                and all(r.ok for r in self.injectives))

    @property
    def passed_both_directions(self) -> bool:
        return self.passed_as_used and all(r.ok for r in self.shifts_down)

    def to_json(self) -> dict:
        def rows(rs):
            return [{"subject": r.subject, "ok": r.ok, "detail": r.detail} for r in rs]
        return {
            "system": self.system,
            "precovering": rows(self.precovering),
            "shifts_up": rows(self.shifts_up),
            "shifts_down": rows(self.shifts_down),
            "injectives": rows(self.injectives),
            "passed_as_used": self.passed_as_used,
            "passed_both_directions": self.passed_both_directions,
        }


def check_hypotheses(sys: PrecoverSystem, window: int = 2, seed: int = 1,
                     samples: int = 4) -> HypothesisReport:
    """Spot-check the family hypotheses on a finite battery.

    (i) every map from a sampled member factors through the precover;
    (ii) membership of suspensions (and, informationally, desuspensions)
    of the generators; (iii) membership of the injective of each generator.
    """
    ctx = sys.ctx
    rng = SplitMix64(seed)
    precovering = []
    members = sys.sample_members(rng.spawn(), samples)
    objects = sys.sample_objects(rng.spawn(), samples)
    for mi, member in enumerate(members):
        x = objects[mi % len(objects)]
        pre = sys.precover_of(x)
        ok = True
        for f in ctx.hom_basis(member, x):
            if express_through(ctx, pre, f) is None:
                ok = False
                break
        precovering.append(HypothesisRow(
            subject=f"member#{mi}({ctx.describe(member)}) -> {ctx.describe(x)}", ok=ok))
    ups, downs, injs = [], [], []
    for gi, g in enumerate(sys.generators()):
        up = g
        ok_up = True
        for _ in range(max(window, 1)):
            up = suspend(ctx, up)
            if not is_member(sys, up):
                ok_up = False
                break
        ups.append(HypothesisRow(subject=f"suspend(gen#{gi}={ctx.describe(g)})",
                                 ok=ok_up,
                                 detail=ctx.describe(up)))
        down = g
        ok_down = True
        for _ in range(max(window, 1)):
            down = desuspend(ctx, down)
            if not is_member(sys, down):
                ok_down = False
                break
        downs.append(HypothesisRow(subject=f"desuspend(gen#{gi}={ctx.describe(g)})",
                                   ok=ok_down,
                                   detail=ctx.describe(down)))
        iobj = ctx.injective_embedding(g).dst
        injs.append(HypothesisRow(subject=f"I(gen#{gi}={ctx.describe(g)})",
                                  ok=is_member(sys, iobj),
                                  detail=ctx.describe(iobj)))
    return HypothesisReport(system=sys.label,
                            precovering=tuple(precovering),
                            shifts_up=tuple(ups),
                            shifts_down=tuple(downs),
                            injectives=tuple(injs))

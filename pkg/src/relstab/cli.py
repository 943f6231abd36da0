"""Scenario-driven command line: run, verify, oracle, suite.

Reports are emitted as a plain-text table and a canonical JSON document
(sorted keys, fixed indentation) so equal scenarios produce byte-identical
files. Exit codes: 0 task completed (and verdict pass where applicable),
1 verification verdict fail, 2 input error, 3 cap or budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from . import __version__, chctx, modctx
from .chctx import shift as shift_complex
from .contexts import ComplexContext, ModuleContext
from .errors import (
    DimensionBudgetExceeded,
    NotFinite,
    ParseError,
    RelstabError,
    ScenarioValidationError,
)
from .groups import FiniteGroup, build_named, subgroup_generated
from .linalg import Mat, PrimeField
from .localize import (
    build_ladder,
    localization_triangle,
    remark_iii_check,
    verify_localization,
)
from .oracle import homology_stablehom_oracle, phom_dual_route
from .precover import (
    AddListSystem,
    CapReached,
    FiniteDim,
    SubgroupInducedSystem,
    TruncationSystem,
    build_resolution,
    check_hypotheses,
)
from .rng import SplitMix64
from .scenario import Scenario, parse_scenario
from .stable import stable_hom

EXIT_OK = 0
EXIT_VERDICT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_EXHAUSTED = 3


# ------------------------------------------------------------------ builders

def _build_group(sc: Scenario) -> FiniteGroup:
    spec = dict(sc.group)
    kind = spec.pop("kind", None)
    if kind is None:
        raise ScenarioValidationError("group needs a kind", "group.kind")
    if kind == "permutations":
        perms = spec.get("perms")
        if not perms:
            raise ScenarioValidationError("permutations need perms=[[...],...]", "group.perms")
        return build_named("from_permutations", perms=perms)
    try:
        return build_named(kind, **spec)
    except (ValueError, KeyError) as exc:
        raise ScenarioValidationError(str(exc), "group") from exc


def _module_atom(ctx: ModuleContext, emb, tok: str):
    parts = tok.split(":")
    kind = parts[0]
    if kind == "trivial":
        return modctx.trivial_module(ctx.group, ctx.field)
    if kind == "regular":
        return modctx.regular_module(ctx.group, ctx.field)
    if kind == "jordan":
        return modctx.jordan_module(ctx.group, ctx.field, int(parts[1]))
    if kind == "coset_permutation":
        if emb is None:
            raise ScenarioValidationError("coset_permutation needs a subgroup", "object")
        return modctx.coset_permutation_module(emb, ctx.field)
    if kind == "ind":
        if emb is None:
            raise ScenarioValidationError("induced parts need a subgroup", "object")
        sub_field = ctx.field
        inner = parts[1]
        if inner == "jordan":
            base = modctx.jordan_module(emb.sub, sub_field, int(parts[2]))
        else:
            base = modctx.named_module(emb.sub, sub_field, inner)
        return modctx.induce(emb, base)
    raise ScenarioValidationError(f"unknown module atom {tok!r}", "object.parts")


def _complex_atom(ctx: ComplexContext, tok: str):
    parts = tok.split(":")
    if parts[0] == "sphere":
        return chctx.sphere(ctx.field, int(parts[1]))
    if parts[0] == "disk":
        return chctx.disk(ctx.field, int(parts[1]))
    raise ScenarioValidationError(f"unknown complex atom {tok!r}", "object.parts")


def _build_module_object(sc: Scenario, ctx: ModuleContext, emb):
    spec = sc.obj
    kind = spec.get("kind")
    if kind in ("trivial", "regular", "coset_permutation"):
        return _module_atom(ctx, emb, kind)
    if kind == "jordan":
        return _module_atom(ctx, emb, f"jordan:{spec.get('size', 1)}")
    if kind == "induced":
        of = spec.get("of", "trivial")
        tok = f"ind:{of}" + (f":{spec['size']}" if "size" in spec else "")
        return _module_atom(ctx, emb, tok)
    if kind == "sum":
        parts = spec.get("parts", [])
        if not parts:
            raise ScenarioValidationError("sum needs parts=[...]", "object.parts")
        mods = [_module_atom(ctx, emb, t) for t in parts]
        return modctx.direct_sum_modules(mods)[0]
    if kind == "random":
        return modctx.random_module(ctx.group, ctx.field,
                                    spec.get("recipe", "sum_of_named"),
                                    int(spec.get("seed", sc.task.seed)))
    raise ScenarioValidationError(f"unknown module object kind {kind!r}", "object.kind")


def _build_complex_object(sc: Scenario, ctx: ComplexContext):
    spec = sc.obj
    kind = spec.get("kind")
    if kind == "complex":
        degrees = spec.get("degrees")
        dims = spec.get("dims")
        if not isinstance(degrees, list) or len(degrees) != 2:
            raise ScenarioValidationError("complex needs degrees=[lo,hi]", "object.degrees")
        lo, hi = degrees
        if not isinstance(dims, list) or len(dims) != hi - lo + 1:
            raise ScenarioValidationError(
                f"dims must list {hi - lo + 1} entries", "object.dims")
        diffs = []
        for i in range(lo + 1, hi + 1):
            key = f"d{i}"
            rows = spec.get(key)
            down, here = dims[i - 1 - lo], dims[i - lo]
            if rows is None:
                diffs.append(Mat.zeros(ctx.field, down, here))
                continue
            if len(rows) != down or any(len(r) != here for r in rows):
                raise ScenarioValidationError(
                    f"{key} must be a {down}x{here} matrix", f"object.{key}")
            diffs.append(Mat.from_rows(ctx.field, rows, cols=here)
                         if down else Mat.zeros(ctx.field, 0, here))
        return chctx.complex_from_data(ctx.field, lo, dims, diffs)
    if kind == "sum":
        parts = spec.get("parts", [])
        if not parts:
            raise ScenarioValidationError("sum needs parts=[...]", "object.parts")
        return ctx.direct_sum([_complex_atom(ctx, t) for t in parts])[0]
    if kind in ("sphere", "disk"):
        return _complex_atom(ctx, f"{kind}:{spec.get('size', 0)}")
    if kind == "random":
        seed = int(spec.get("seed", sc.task.seed))
        return chctx.random_complex(ctx.field, SplitMix64(seed))
    raise ScenarioValidationError(f"unknown complex object kind {kind!r}", "object.kind")


def _build_system(sc: Scenario, ctx, emb):
    kind = sc.system.get("kind", "subgroup_induced" if sc.context_kind == "module" else "truncation")
    if kind == "subgroup_induced":
        return SubgroupInducedSystem(ctx, emb)
    if kind == "truncation":
        return TruncationSystem(ctx)
    if kind == "add_list":
        toks = sc.system.get("generators", [])
        if sc.context_kind == "module":
            gens = [_module_atom(ctx, emb, t) for t in toks]
        else:
            gens = [_complex_atom(ctx, t) for t in toks]
        return AddListSystem(ctx, gens)
    raise ScenarioValidationError(f"unknown system kind {kind!r}", "system.kind")


# ------------------------------------------------------------------ running

def run(sc: Scenario) -> Tuple[dict, int]:
    """Execute the scenario's task pipeline; deterministic given the text."""
    field = PrimeField(sc.p)
    report: Dict[str, object] = {
        "scenario": sc.to_json(),
        "hypotheses": None,
        "resolution": None,
        "ladder": None,
        "verification": None,
        "oracle": None,
        "verdict": None,
        "seed": sc.task.seed,
        "version": __version__,
    }
    emb = None
    if sc.context_kind == "module":
        group = _build_group(sc)
        if sc.subgroup is not None:
            emb = subgroup_generated(group, sc.subgroup.get("elems", []))
        ctx = ModuleContext(group, field)
        x = _build_module_object(sc, ctx, emb)
    else:
        ctx = ComplexContext(field)
        x = _build_complex_object(sc, ctx)
        cutoff = sc.system.get("cutoff", 0)
        if cutoff:
            x = shift_complex(x, -int(cutoff))
    system = _build_system(sc, ctx, emb)
    task = sc.task
    code = EXIT_OK

    if task.kind == "stable-hom":
        rows = []
        for r in system.test_objects(task.window):
            rows.append({"subject": ctx.describe(r),
                         "dim": stable_hom(ctx, r, x).qdim})
        report["verification"] = {"stable_hom_dims": rows,
                                  "object": ctx.describe(x)}
        report["verdict"] = "pass"
        return report, code

    if task.kind == "oracle":
        if sc.context_kind == "complex":
            rep = homology_stablehom_oracle(x, range(-3, 4))
            report["oracle"] = {"homology_vs_stable": rep.to_json()}
            ok = rep.agree
        else:
            rep = phom_dual_route(ctx, x, x)
            report["oracle"] = {"phom_dual_route": rep.to_json()}
            ok = rep.agree
        report["verdict"] = "pass" if ok else "fail"
        return report, EXIT_OK if ok else EXIT_VERDICT_FAIL

    res = build_resolution(system, x, cap=task.cap, dim_budget=task.budget)
    steps = []
    for s in res.steps:
        steps.append({
            "k_dim": ctx.weight(s.k),
            "precover_dim": ctx.weight(s.r),
            "kernel_dim": ctx.weight(s.kernel),
            "conflation": s.conflation,
        })
    outcome = (
        {"kind": "finite", "d": res.outcome.d}
        if isinstance(res.outcome, FiniteDim)
        else {"kind": "cap_reached", "cap": res.outcome.cap}
    )
    report["resolution"] = {"outcome": outcome, "steps": steps,
                            "object": ctx.describe(x), "member": isinstance(res.outcome, FiniteDim) and res.outcome.d == 0}

    if task.kind == "resolve":
        report["verdict"] = "pass"
        if isinstance(res.outcome, CapReached):
            code = EXIT_EXHAUSTED
        return report, code

    if isinstance(res.outcome, CapReached):
        report["verdict"] = "fail"
        return report, EXIT_EXHAUSTED

    ladder = build_ladder(res)
    loc = localization_triangle(ladder)
    report["ladder"] = {
        "d": res.outcome.d,
        "L0": ctx.describe(loc.x_r),
        "X": ctx.describe(loc.x),
        "X_perp": ctx.describe(loc.x_perp),
        "remark_iii": remark_iii_check(ladder),
    }
    if task.kind == "localize":
        report["verdict"] = "pass"
        return report, code

    # verify
    hyp = check_hypotheses(system, window=min(task.window, 2), seed=task.seed)
    report["hypotheses"] = hyp.to_json()
    ver = verify_localization(ladder, system, window=task.window,
                              seed=task.seed, extension_depth=task.extension_depth)
    report["verification"] = ver.to_json()
    ok = ver.verdict and hyp.passed_as_used
    report["verdict"] = "pass" if ok else "fail"
    return report, EXIT_OK if ok else EXIT_VERDICT_FAIL


# ------------------------------------------------------------------ reports

def render_text(report: dict) -> str:
    lines = [f"relstab {report.get('version', '')} report"]
    sc = report.get("scenario") or {}
    task = (sc.get("task") or {}).get("kind", "?")
    lines.append(f"task: {task}   seed: {report.get('seed')}")
    res = report.get("resolution")
    if res:
        lines.append(f"object: {res['object']}")
        out = res["outcome"]
        if out["kind"] == "finite":
            lines.append(f"resolution: finite dimension d = {out['d']}")
        else:
            lines.append(f"resolution: cap reached at {out['cap']}")
        for i, s in enumerate(res["steps"]):
            lines.append(f"  step {i}: |K|={s['k_dim']} |R|={s['precover_dim']} "
                         f"|ker|={s['kernel_dim']} conflation={s['conflation']}")
    lad = report.get("ladder")
    if lad:
        lines.append(f"ladder: L0={lad['L0']}  X_perp={lad['X_perp']}  "
                     f"remark_iii={lad['remark_iii']}")
    hyp = report.get("hypotheses")
    if hyp:
        lines.append(f"hypotheses: as-used={'pass' if hyp['passed_as_used'] else 'fail'} "
                     f"both-directions={'pass' if hyp['passed_both_directions'] else 'fail'}")
    ver = report.get("verification")
    if ver and "per_object" in ver:
        lines.append("verification:")
        for row in ver["per_object"]:
            lines.append(f"  {row['subject']:<24} (R,L0)={row['dim_hom_L0']} "
                         f"(R,X)={row['dim_hom_X']} iso={row['iso']} "
                         f"(R,Xperp)={row['dim_hom_X_perp']}"
                         + ("  [extension]" if row.get("extension") else ""))
    if ver and "stable_hom_dims" in ver:
        lines.append(f"stable homs into {ver['object']}:")
        for row in ver["stable_hom_dims"]:
            lines.append(f"  {row['subject']:<24} dim = {row['dim']}")
    orc = report.get("oracle")
    if orc:
        for name, rep in orc.items():
            lines.append(f"oracle {name}: agree={rep['agree']}")
    if report.get("verdict") is not None:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def emit_reports(report: dict, json_path: Optional[str], text_path: Optional[str],
                 quiet: bool = False) -> None:
    text = render_text(report)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(render_json(report))
    if text_path:
        with open(text_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not quiet:
        sys.stdout.write(text)


# ------------------------------------------------------------------ suite

SUITE_SCENARIOS: List[Tuple[str, str]] = [
    ("module_d0_c4", """
field p=2
context kind=module
group kind=cyclic n=4
subgroup elems=[2]
system kind=subgroup_induced
object kind=sum parts=[ind:trivial,ind:regular]
task kind=verify cap=4 window=1 seed=7
"""),
    ("module_capped_chain", """
field p=2
context kind=module
group kind=cyclic n=4
subgroup elems=[2]
system kind=subgroup_induced
object kind=trivial
task kind=resolve cap=4 seed=7
"""),
    ("module_jordan_stable_hom", """
field p=2
context kind=module
group kind=cyclic n=4
subgroup elems=[]
system kind=add_list generators=[jordan:2]
object kind=jordan size=1
task kind=stable-hom window=1 seed=7
"""),
    ("complex_truncation_verify", """
field p=2
context kind=complex
system kind=truncation
object kind=complex degrees=[-1,0] dims=[1,1] d0=[[0]]
task kind=verify window=2 seed=7 extension_depth=2
"""),
    ("complex_oracle", """
field p=3
context kind=complex
system kind=truncation
object kind=complex degrees=[-1,1] dims=[1,1,1] d0=[[0]] d1=[[1]]
task kind=oracle seed=7
"""),
    ("module_oracle", """
field p=2
context kind=module
group kind=klein_four
subgroup elems=[1]
system kind=subgroup_induced
object kind=coset_permutation
task kind=oracle seed=7
"""),
]


def run_suite(json_path: Optional[str], text_path: Optional[str], quiet: bool) -> int:
    """Run the shipped battery; byte-identical reports for equal inputs."""
    entries = []
    worst = EXIT_OK
    for name, text in SUITE_SCENARIOS:
        sc = parse_scenario(text)
        report, code = run(sc)
        entries.append({"name": name, "exit": code, "report": report})
        if code == EXIT_EXHAUSTED and sc.task.kind == "resolve":
            code = EXIT_OK  # a capped resolve is this entry's documented outcome
        worst = max(worst, code)
    doc = {"suite": entries, "version": __version__}
    payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    if not quiet:
        for e in entries:
            sys.stdout.write(f"{e['name']}: exit {e['exit']} "
                             f"verdict {e['report'].get('verdict')}\n")
    if text_path:
        with open(text_path, "w", encoding="utf-8") as fh:
            for e in entries:
                fh.write(f"== {e['name']} (exit {e['exit']})\n")
                fh.write(render_text(e["report"]))
    return worst


# ------------------------------------------------------------------ entry point

def _make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relstab",
                                 description="exact localization triangles from precovering families")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("run", "verify", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("scenario", help="scenario file")
        p.add_argument("--json", dest="json_path")
        p.add_argument("--text", dest="text_path")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--quiet", action="store_true")
    p = sub.add_parser("suite")
    p.add_argument("--json", dest="json_path")
    p.add_argument("--text", dest="text_path")
    p.add_argument("--quiet", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = _make_parser().parse_args(argv)
    if args.command == "suite":
        return run_suite(args.json_path, args.text_path, args.quiet)
    try:
        with open(args.scenario, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"cannot read scenario: {exc}\n")
        return EXIT_INPUT_ERROR
    try:
        sc = parse_scenario(text)
        if args.command == "verify":
            sc.task.kind = "verify"
        elif args.command == "oracle":
            sc.task.kind = "oracle"
        if args.cap is not None:
            sc.task.cap = args.cap
        if args.seed is not None:
            sc.task.seed = args.seed
        report, code = run(sc)
    except (ParseError, ScenarioValidationError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT_ERROR
    except (NotFinite, DimensionBudgetExceeded) as exc:
        sys.stderr.write(f"exhausted: {exc}\n")
        return EXIT_EXHAUSTED
    except RelstabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR
    try:
        emit_reports(report, args.json_path, args.text_path, args.quiet)
    except OSError as exc:
        sys.stderr.write(f"cannot write report: {exc}\n")
        return EXIT_INPUT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())

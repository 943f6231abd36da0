"""Line-oriented scenario format: `section key=value ...` records.

Sections may appear in any order; unknown sections or keys are parse
errors with line/column positions, and out-of-range values are validation
errors carrying the offending key path. All defaults are filled here so a
parsed Scenario is self-contained: cap 4, window 2, seed 1, extension
depth 1, dimension budget 4096.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

from .errors import ParseError, ScenarioValidationError

_SECTIONS = {"field", "context", "group", "subgroup", "system", "object", "task"}
_KEYS = {
    "field": {"p"},
    "context": {"kind"},
    "group": {"kind", "n", "perms"},
    "subgroup": {"elems"},
    "system": {"kind", "generators", "cutoff"},
    "object": {"kind", "size", "of", "parts", "recipe", "seed",
               "degrees", "dims"},  # plus d<i> keys, validated separately
    "task": {"kind", "cap", "window", "seed", "extension_depth", "budget"},
}
_TASK_KINDS = {"stable-hom", "resolve", "localize", "verify", "oracle"}
_ATOM = re.compile(r"^[A-Za-z0-9_.:()\-]+$")


@dataclass
class TaskSpec:
    kind: str = "verify"
    cap: int = 4
    window: int = 2
    seed: int = 1
    extension_depth: int = 1
    budget: int = 4096


@dataclass
class Scenario:
    p: int = 2
    context_kind: str = "module"
    group: Dict = dc_field(default_factory=dict)
    subgroup: Optional[Dict] = None
    system: Dict = dc_field(default_factory=dict)
    obj: Dict = dc_field(default_factory=dict)
    task: TaskSpec = dc_field(default_factory=TaskSpec)

    def to_json(self) -> dict:
        return {
            "field": {"p": self.p},
            "context": {"kind": self.context_kind},
            "group": self.group or None,
            "subgroup": self.subgroup,
            "system": self.system or None,
            "object": self.obj or None,
            "task": {
                "kind": self.task.kind,
                "cap": self.task.cap,
                "window": self.task.window,
                "seed": self.task.seed,
                "extension_depth": self.task.extension_depth,
                "budget": self.task.budget,
            },
        }


def _parse_value(tok: str, line_no: int, col: int):
    if tok.startswith("["):
        return _parse_list(tok, line_no, col)
    if re.fullmatch(r"-?\d+", tok):
        return int(tok)
    if _ATOM.fullmatch(tok):
        return tok
    raise ParseError(f"cannot parse value {tok!r}", line_no, col)


def _parse_list(tok: str, line_no: int, col: int):
    if not tok.endswith("]"):
        raise ParseError(f"unterminated list {tok!r}", line_no, col)
    inner = tok[1:-1].strip()
    if not inner:
        return []
    parts, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {tok!r}", line_no, col)
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [_parse_value(p.strip(), line_no, col) for p in parts]


def _split_tokens(body: str, line_no: int) -> List[tuple]:
    """Split `key=value` tokens, keeping bracketed values whole."""
    out = []
    i = 0
    n = len(body)
    while i < n:
        if body[i].isspace():
            i += 1
            continue
        start = i
        eq = body.find("=", i)
        if eq < 0:
            raise ParseError(f"expected key=value, got {body[i:].strip()!r}", line_no, start + 1)
        key = body[i:eq].strip()
        j = eq + 1
        if j < n and body[j] == "[":
            depth = 0
            while j < n:
                if body[j] == "[":
                    depth += 1
                elif body[j] == "]":
                    depth -= 1
                    if depth == 0:
                        j += 1
                        break
                j += 1
            if depth != 0:
                raise ParseError("unterminated list", line_no, eq + 2)
        else:
            while j < n and not body[j].isspace():
                j += 1
        out.append((key, body[eq + 1:j].strip(), start + 1))
        i = j
    return out


def parse_scenario(text: str) -> Scenario:
    """Parse and validate; all defaults filled."""
    sc = Scenario()
    seen_object_dkeys: Dict[str, object] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, _, body = line.strip().partition(" ")
        if head not in _SECTIONS:
            raise ParseError(f"unknown section {head!r}", line_no, 1)
        pairs = _split_tokens(body, line_no)
        record = {}
        for key, val_tok, col in pairs:
            if head == "object" and re.fullmatch(r"d-?\d+", key):
                pass  # differentials keyed by degree
            elif key not in _KEYS[head]:
                raise ParseError(f"unknown key {key!r} in section {head!r}", line_no, col)
            record[key] = _parse_value(val_tok, line_no, col)
        if head == "field":
            sc.p = record.get("p", sc.p)
        elif head == "context":
            sc.context_kind = record.get("kind", sc.context_kind)
        elif head == "group":
            sc.group = record
        elif head == "subgroup":
            sc.subgroup = record
        elif head == "system":
            sc.system = record
        elif head == "object":
            sc.obj = record
        elif head == "task":
            t = sc.task
            t.kind = record.get("kind", t.kind)
            t.cap = record.get("cap", t.cap)
            t.window = record.get("window", t.window)
            t.seed = record.get("seed", t.seed)
            t.extension_depth = record.get("extension_depth", t.extension_depth)
            t.budget = record.get("budget", t.budget)
    _validate(sc)
    return sc


def _validate(sc: Scenario) -> None:
    from .linalg import PrimeField

    try:
        PrimeField(sc.p)
    except ValueError:
        raise ScenarioValidationError(f"{sc.p} is not a prime in [2, 97]", "field.p")
    if sc.context_kind not in ("module", "complex"):
        raise ScenarioValidationError(f"unknown context {sc.context_kind!r}", "context.kind")
    t = sc.task
    if t.kind not in _TASK_KINDS:
        raise ScenarioValidationError(f"unknown task {t.kind!r}", "task.kind")
    for key, val, lohi in (
        ("task.cap", t.cap, (0, 16)),
        ("task.window", t.window, (0, 4)),
        ("task.extension_depth", t.extension_depth, (0, 4)),
        ("task.budget", t.budget, (1, 1_000_000)),
    ):
        if not isinstance(val, int) or not (lohi[0] <= val <= lohi[1]):
            raise ScenarioValidationError(f"{val!r} outside [{lohi[0]}, {lohi[1]}]", key)
    if not isinstance(t.seed, int) or t.seed < 0:
        raise ScenarioValidationError("seed must be a nonnegative integer", "task.seed")
    if sc.context_kind == "module":
        if not sc.group:
            raise ScenarioValidationError("module context needs a group section", "group")
        if sc.system.get("kind", "subgroup_induced") == "subgroup_induced" and sc.subgroup is None:
            raise ScenarioValidationError(
                "subgroup_induced needs a subgroup section", "subgroup")
        if sc.system.get("kind") == "truncation":
            raise ScenarioValidationError("truncation lives in the complex context", "system.kind")
    else:
        if sc.system.get("kind", "truncation") in ("subgroup_induced",):
            raise ScenarioValidationError(
                "subgroup_induced lives in the module context", "system.kind")
    if not sc.obj:
        raise ScenarioValidationError("an object section is required", "object")

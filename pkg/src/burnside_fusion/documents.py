"""Reading group/fusion documents and writing exact artifacts.

Group documents are YAML or JSON::

    name: D8
    domain: 6
    generators:
      - "(1,2,3,4)(5,6)"
      - [[1, 3], [5, 6]]

Points are 1-based.  A generator is either a cycle string or a list of
cycles.  Fusion documents wrap one or two group documents::

    mode: ambient            # or: partition
    prime: 2
    group: {...}             # S, inline or a path
    ambient: {...}           # G (ambient mode)
    classes:                 # partition mode; each entry names subgroups of S
      - ["<(1,3)(5,6)>", "<(1,3)(2,4)>"]

Artifacts are JSON with every rational written as ``[numerator, denominator]``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .group import ELEMENT_CAP, Embedding, GroupTable, build_group, subgroup_closure
from .fusion import FusionSystem, fusion_from_ambient, fusion_from_partition, trivial_fusion
from .lattice import SubgroupLattice, enumerate_subgroups


class SpecError(ValueError):
    """A malformed input document; the message names the offending field."""


_CYCLE = re.compile(r"\(([^()]*)\)")


def load_document(source, where: str) -> Any:
    if isinstance(source, (dict, list)):
        return source
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"{where}: cannot read {path}: {exc.strerror}") from None
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        pos = f" line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise SpecError(f"{path}:{pos} {getattr(exc, 'problem', exc)}") from None


def parse_cycles(text: str, where: str = "generator") -> list[list[int]]:
    """``"(1,2,3)(4 5)"`` -> ``[[1, 2, 3], [4, 5]]``; ``"()"`` is the identity."""
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise SpecError(f"{where}: unexpected text {stripped!r} in {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [t for t in re.split(r"[,\s]+", body.strip()) if t]
        try:
            cycles.append([int(t) for t in pts])
        except ValueError:
            raise SpecError(f"{where}: non-integer point in {text!r}") from None
    return [c for c in cycles if c]


def cycles_to_perm(cycles, degree: int, where: str = "generator") -> tuple[int, ...]:
    perm = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        if not isinstance(cyc, list) or not all(isinstance(x, int) for x in cyc):
            raise SpecError(f"{where}: a cycle must be a list of integers, got {cyc!r}")
        for i, a in enumerate(cyc):
            if not 1 <= a <= degree:
                raise SpecError(f"{where}: point {a} outside the domain 1..{degree}")
            if a in seen:
                raise SpecError(f"{where}: point {a} appears twice")
            seen.add(a)
            perm[a - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(perm)


def _generator(raw, degree: int, where: str) -> tuple[int, ...]:
    if isinstance(raw, str):
        raw = parse_cycles(raw, where)
    if not isinstance(raw, list):
        raise SpecError(f"{where}: expected a cycle string or a list of cycles")
    if raw and all(isinstance(x, int) for x in raw):
        raw = [raw]
    return cycles_to_perm(raw, degree, where)


def group_from_document(doc, where: str = "group", cap: int = ELEMENT_CAP) -> GroupTable:
    doc = load_document(doc, where)
    if not isinstance(doc, dict):
        raise SpecError(f"{where}: expected a mapping with fields name, domain, generators")
    gens = doc.get("generators")
    if gens is None:
        raise SpecError(f"{where}.generators: missing field")
    if not isinstance(gens, list):
        raise SpecError(f"{where}.generators: expected a list")
    degree = doc.get("domain")
    if degree is None:
        points = [int(t) for g in gens for t in re.findall(r"\d+", json.dumps(g))]
        degree = max(points, default=1)
    if not isinstance(degree, int) or degree < 1:
        raise SpecError(f"{where}.domain: expected a positive integer, got {degree!r}")
    perms = [_generator(g, degree, f"{where}.generators[{i}]") for i, g in enumerate(gens)]
    return build_group(perms, degree, str(doc.get("name", "")), cap=cap)


def subgroup_index(l: SubgroupLattice, ref, where: str) -> int:
    """A subgroup named by its label ``"<(1,2), (3,4)>"``, ``"1"`` or a generator list."""
    if isinstance(ref, str):
        s = ref.strip()
        if s in ("1", "<>", "()"):
            gens = []
        else:
            if s.startswith("<") and s.endswith(">"):
                s = s[1:-1]
            gens = [g for g in re.split(r"\s*,\s*(?=\()", s) if g]
    elif isinstance(ref, list):
        gens = ref
    else:
        raise SpecError(f"{where}: expected a subgroup label or generator list")
    g = l.group
    elems = []
    for i, raw in enumerate(gens):
        perm = _generator(raw, g.degree, f"{where}[{i}]")
        if perm not in g.index:
            raise SpecError(f"{where}: {raw!r} is not an element of {g.label or 'the group'}")
        elems.append(g.index[perm])
    return l.find(subgroup_closure(g, elems))


def fusion_from_document(doc, base: Path | None = None, strict: bool = True,
                         cap: int = ELEMENT_CAP) -> FusionSystem:
    doc = load_document(doc, "fusion")
    if not isinstance(doc, dict):
        raise SpecError("fusion: expected a mapping")
    base = base or Path(".")

    def sub(field):
        raw = doc.get(field)
        if raw is None:
            raise SpecError(f"fusion.{field}: missing field")
        return group_from_document(base / raw if isinstance(raw, str) else raw, f"fusion.{field}", cap)

    mode = doc.get("mode", "ambient" if "ambient" in doc else "partition")
    prime = doc.get("prime")
    if prime is not None and not isinstance(prime, int):
        raise SpecError(f"fusion.prime: expected an integer, got {prime!r}")
    s = sub("group")
    if mode == "ambient":
        return fusion_from_ambient(embed(s, sub("ambient")), prime, strict=strict)
    if mode != "partition":
        raise SpecError(f"fusion.mode: expected 'ambient' or 'partition', got {mode!r}")
    l = enumerate_subgroups(s)
    classes = doc.get("classes")
    if classes is None:
        return trivial_fusion(l)
    return fusion_from_partition(l, partition_blocks(l, classes), prime)


def partition_blocks(l: SubgroupLattice, classes, where: str = "fusion.classes") -> list[list[int]]:
    """Turn lists of subgroup names into a partition of S-classes.

    S-classes not mentioned stay on their own.
    """
    if not isinstance(classes, list):
        raise SpecError(f"{where}: expected a list of blocks")
    blocks, used = [], set()
    for i, block in enumerate(classes):
        if not isinstance(block, list):
            raise SpecError(f"{where}[{i}]: expected a list of subgroups")
        cs = sorted({l.s_class_of[subgroup_index(l, x, f"{where}[{i}][{j}]")] for j, x in enumerate(block)})
        if used & set(cs):
            raise SpecError(f"{where}[{i}]: S-class listed in two blocks")
        used |= set(cs)
        blocks.append(cs)
    blocks += [[c] for c in range(l.n_classes) if c not in used]
    return blocks


def embed(s: GroupTable, g: GroupTable) -> Embedding:
    try:
        return Embedding.by_permutations(s, g)
    except ValueError as exc:
        raise SpecError(f"fusion: {exc}") from None


# -- artifacts -----------------------------------------------------------------

def encode_rational(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def decode_rational(pair) -> Fraction | int:
    if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
        raise SpecError(f"expected [numerator, denominator], got {pair!r}")
    x = Fraction(pair[0], pair[1])
    return x.numerator if x.denominator == 1 else x


def table(rows: list[str], cols: list[str], entries) -> dict:
    entries = np.asarray(entries, dtype=object)
    return {
        "rows": list(rows),
        "cols": list(cols),
        "entries": [[encode_rational(v) for v in row] for row in entries],
    }


def decode_table(t: dict) -> dict:
    return {
        "rows": t["rows"],
        "cols": t["cols"],
        "entries": [[decode_rational(v) for v in row] for row in t["entries"]],
    }


def _encoded(t: dict) -> dict:
    if all(isinstance(v, list) for row in t["entries"] for v in row):
        return t
    return table(t["rows"], t["cols"], t["entries"])


def dumps(artifact: dict) -> str:
    """JSON text; tables decoded by :func:`load_artifact` are re-encoded."""
    if "tables" in artifact:
        artifact = {**artifact, "tables": {k: _encoded(t) for k, t in artifact["tables"].items()}}
    return json.dumps(artifact, indent=2, ensure_ascii=False) + "\n"


def save_artifact(artifact: dict, path) -> None:
    Path(path).write_text(dumps(artifact))


def load_artifact(path) -> dict:
    """Read an artifact; every table comes back with exact ints/Fractions."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SpecError(f"{path}: not an artifact (no 'kind' field)")
    doc["tables"] = {k: decode_table(t) for k, t in doc.get("tables", {}).items()}
    return doc

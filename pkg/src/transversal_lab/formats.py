"""JSON input/output for groups, loops, relations and transversals."""

from __future__ import annotations

import json
import os
import re

from .catalog import parse_group_ref
from .errors import TransversalLabError
from .groups import FiniteGroup, Permutation, Subgroup, make_group_from_permutations, make_group_from_table, subgroup_generated
from .rightloop import LoopRelation, RightLoop
from .transversal import Transversal


class BadInput(TransversalLabError):
    pass


def group_from_json(data: dict, name: str = "G") -> FiniteGroup:
    """``{"type": "table", "n", "table"}`` or ``{"type": "perm", "degree", "generators"}``."""
    kind = data.get("type")
    if kind == "table":
        table = data["table"]
        if "n" in data and data["n"] != len(table):
            raise BadInput(f"n = {data['n']} but table has {len(table)} rows")
        return make_group_from_table(table, name)
    if kind == "perm":
        return make_group_from_permutations(data["generators"], data["degree"], name)
    raise BadInput(f"unknown group type {kind!r}")


def load_group(ref: str) -> FiniteGroup:
    """A catalog reference, or a path to a group JSON file."""
    if os.path.exists(ref):
        with open(ref) as fh:
            data = json.load(fh)
        return group_from_json(data, name=os.path.splitext(os.path.basename(ref))[0])
    return parse_group_ref(ref)


def parse_subgroup(G: FiniteGroup, text: str) -> Subgroup:
    """Subgroup generated by cycle words ``"(1 2)(3 4), (1 3)"`` or indices ``"1,2"``."""
    text = text.strip()
    if not text:
        return subgroup_generated(G, [])
    if "(" in text:
        if G.perms is None:
            raise BadInput(f"{G.name} has no permutation labels; give element indices")
        index = {p: i for i, p in enumerate(G.perms)}
        degree = G.perms[0].degree
        gens = []
        for word in re.findall(r"(?:\([^)]*\)\s*)+", text):
            p = Permutation.from_cycles(word, degree)
            if p not in index:
                raise BadInput(f"{word.strip()} is not an element of {G.name}")
            gens.append(index[p])
        return subgroup_generated(G, gens)
    return subgroup_generated(G, parse_indices(text, G.order))


def parse_indices(text: str, bound: int) -> list[int]:
    try:
        vals = [int(t) for t in re.split(r"[,\s]+", text.strip().strip("[]")) if t]
    except ValueError:
        raise BadInput(f"cannot parse indices {text!r}") from None
    for v in vals:
        if not 0 <= v < bound:
            raise BadInput(f"index {v} outside 0..{bound - 1}")
    return vals


def transversal_from_json(G: FiniteGroup, H: Subgroup, data: dict) -> Transversal:
    return Transversal(G, H, tuple(data["reps"]))


def transversal_to_json(S: Transversal) -> dict:
    return {"reps": list(S.reps)}


def loop_to_json(S: RightLoop) -> dict:
    return {"order": S.order, "table": [list(r) for r in S.table]}


def loop_from_json(data: dict) -> RightLoop:
    table = data["table"]
    if data.get("order", len(table)) != len(table):
        raise BadInput("order does not match table size")
    return RightLoop(table, data.get("label", "S"))


def relation_to_json(R: LoopRelation) -> dict:
    return {"classes": [list(c) for c in R.classes]}


def relation_from_json(data: dict, order: int | None = None) -> LoopRelation:
    classes = data["classes"]
    k = order if order is not None else sum(len(c) for c in classes)
    return LoopRelation(k, tuple(tuple(c) for c in classes))

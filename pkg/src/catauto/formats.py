"""Loaders for the on-disk inputs: signatures, equation systems, automorphism
specs and bijection families.  Finite-algebra tables live in :mod:`catauto.finite`.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import yaml

from .automorphisms import AutomorphismSpec, BijectionFamily
from .derived import EquationSystem
from .terms import Signature, parse_term
from .varieties import Variety


def _arity_pairs(entries: Any) -> list[tuple[str, int]]:
    """Accept ``["mul/2", ...]``, ``[["mul", 2], ...]`` or ``{mul: 2, ...}``."""
    if isinstance(entries, dict):
        return [(str(k), int(v)) for k, v in entries.items()]
    out = []
    for e in entries:
        if isinstance(e, str):
            name, _, k = e.partition("/")
            if not k:
                raise ValueError(f"expected NAME/ARITY, got {e!r}")
            out.append((name.strip(), int(k)))
        else:
            name, k = e
            out.append((str(name), int(k)))
    return out


def load_yaml(path: str | Path) -> Any:
    with open(path) as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level")
    return data


def parse_signature(data: dict) -> Signature:
    return Signature(tuple(_arity_pairs(data["operations"])))


def load_signature(path: str | Path) -> Signature:
    return parse_signature(load_yaml(path))


def parse_system(data: dict, name: str = "") -> EquationSystem:
    v = Variety(data["variety"])
    unknowns = tuple(_arity_pairs(data["unknowns"]))
    sig = v.signature.extend(unknowns)
    eqs = []
    for pair in data.get("equations", []):
        if len(pair) != 2:
            raise ValueError(f"equation must be a [lhs, rhs] pair: {pair!r}")
        eqs.append((parse_term(pair[0], sig), parse_term(pair[1], sig)))
    expr = tuple((e["op"], int(e["max_size"])) for e in data.get("expressible", []))
    return EquationSystem(v, unknowns, tuple(eqs), expr, data.get("name", name),
                          data.get("note", ""))


def load_system(path: str | Path) -> EquationSystem:
    return parse_system(load_yaml(path), Path(path).stem)


def load_spec(path: str | Path) -> AutomorphismSpec:
    with open(path) as fh:
        return AutomorphismSpec.from_json(json.load(fh))


def load_family(path: str | Path) -> BijectionFamily:
    with open(path) as fh:
        return BijectionFamily.from_json(json.load(fh))


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)

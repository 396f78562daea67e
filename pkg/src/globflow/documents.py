"""JSON document schema for decomposition scripts.

A document is a UTF-8 JSON object::

    {"skeleton0": ["A", "m", "B"],
     "steps": [{"cells": ["x"], "boundary": [], "endpoints": ["A", "m"],
                "boundary_map": {}}]}

``skeleton0`` must be nonempty.  Atom ids referenced in boundary maps are
the namespaced "step<k>.<cell>" names (or base generator names when a
flow was assembled programmatically).  Identifiers must not contain
``*``.  All serialization is byte-stable: keys and sets are sorted.
"""

from __future__ import annotations

import json
from typing import Any

from .builder import DecompositionScript, ScriptStep
from .core import PACK_SEPARATOR, Flow
from .errors import ParseError


def _fail(path: str, message: str):
    raise ParseError(message, field=path)


def _identifier(value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        _fail(path, "must be a nonempty string")
    if PACK_SEPARATOR in value:
        _fail(path, "must not contain '*'")
    return value


def _string_list(value: Any, path: str, *, distinct: bool = True) -> list[str]:
    if not isinstance(value, list):
        _fail(path, "must be an array")
    items = [_identifier(v, f"{path}[{i}]") for i, v in enumerate(value)]
    if distinct and len(set(items)) != len(items):
        _fail(path, "entries must be distinct")
    return items


def _parse_step(value: Any, path: str) -> ScriptStep:
    if not isinstance(value, dict):
        _fail(path, "must be an object")
    allowed = {"cells", "boundary", "endpoints", "boundary_map"}
    for key in value:
        if key not in allowed:
            _fail(f"{path}.{key}", "unexpected field")
    if "cells" not in value:
        _fail(f"{path}.cells", "missing field")
    if "endpoints" not in value:
        _fail(f"{path}.endpoints", "missing field")
    cells = _string_list(value["cells"], f"{path}.cells")
    endpoints = value["endpoints"]
    if not isinstance(endpoints, list) or len(endpoints) != 2:
        _fail(f"{path}.endpoints", "must be an array of exactly two states")
    endpoints = tuple(
        _identifier(e, f"{path}.endpoints[{i}]") for i, e in enumerate(endpoints)
    )
    boundary = _string_list(value.get("boundary", []), f"{path}.boundary")
    for i, cell in enumerate(boundary):
        if cell not in cells:
            _fail(f"{path}.boundary[{i}]", f"{cell!r} is not one of the cells")
    raw_map = value.get("boundary_map", {})
    if not isinstance(raw_map, dict):
        _fail(f"{path}.boundary_map", "must be an object")
    if set(raw_map) != set(boundary):
        _fail(f"{path}.boundary_map", "keys must be exactly the boundary cells")
    boundary_map = {}
    for cell in sorted(raw_map):
        ids = raw_map[cell]
        if not isinstance(ids, list) or not ids:
            _fail(f"{path}.boundary_map.{cell}", "must be a nonempty array of atom ids")
        boundary_map[cell] = tuple(
            _identifier(a, f"{path}.boundary_map.{cell}[{i}]") for i, a in enumerate(ids)
        )
    return ScriptStep(tuple(cells), tuple(boundary), endpoints, boundary_map)


def document_to_script(doc: Any) -> DecompositionScript:
    """Validate a decoded document against the schema."""
    if not isinstance(doc, dict):
        _fail("$", "document must be a JSON object")
    allowed = {"skeleton0", "steps"}
    for key in doc:
        if key not in allowed:
            _fail(f"$.{key}", "unexpected field")
    if "skeleton0" not in doc:
        _fail("$.skeleton0", "missing field")
    skeleton0 = _string_list(doc["skeleton0"], "$.skeleton0")
    if not skeleton0:
        _fail("$.skeleton0", "must declare at least one state")
    steps = doc.get("steps", [])
    if not isinstance(steps, list):
        _fail("$.steps", "must be an array")
    parsed = tuple(_parse_step(s, f"$.steps[{i}]") for i, s in enumerate(steps))
    return DecompositionScript(tuple(skeleton0), parsed)


def parse_document(text: str) -> DecompositionScript:
    """Parse JSON text into a script; syntax errors carry line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return document_to_script(doc)


def script_to_document(script: DecompositionScript) -> dict:
    return {
        "skeleton0": list(script.skeleton0),
        "steps": [
            {
                "cells": sorted(s.cells),
                "boundary": sorted(s.boundary),
                "endpoints": list(s.endpoints),
                "boundary_map": {c: list(ids) for c, ids in sorted(s.boundary_map.items())},
            }
            for s in script.steps
        ],
    }


def _safe_label(atom_id: str) -> str:
    # Packed restriction atoms carry '*', which documents reserve.
    return atom_id.replace(PACK_SEPARATOR, "~")


def flow_to_document(flow: Flow) -> dict:
    """Dump a flow in the document schema: one step per atom, then one
    identified step per alias.  Rebuilding yields an isomorphic flow."""
    atom_steps = []
    new_id = {}
    for index, atom in enumerate(sorted(flow.atoms, key=lambda a: a.id)):
        label = _safe_label(atom.id)
        new_id[atom.id] = f"step{index}.{label}"
        atom_steps.append(
            {
                "cells": [label],
                "boundary": [],
                "endpoints": [atom.src, atom.tgt],
                "boundary_map": {},
            }
        )
    for alias in sorted(flow.identifications):
        target = flow.identifications[alias]
        first = flow.atom(target[0])
        last = flow.atom(target[-1])
        atom_steps.append(
            {
                "cells": [_safe_label(alias)],
                "boundary": [_safe_label(alias)],
                "endpoints": [first.src, last.tgt],
                "boundary_map": {_safe_label(alias): [new_id[a] for a in target]},
            }
        )
    return {"skeleton0": sorted(flow.states), "steps": atom_steps}


def dumps(doc: dict) -> str:
    """Canonical document text: sorted keys, two-space indent, newline end."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"

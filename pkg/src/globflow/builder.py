"""Building flows from decomposition scripts.

A script is an ordered list of globe attachments over a fixed 0-skeleton.
Cell labels are namespaced by step index ("step3.z") so atoms stay
globally unique; boundary maps reference atoms of the flow accumulated so
far, either by their namespaced ids or, for aliases, through earlier
identifications.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import core, pushout
from .core import Flow, StateId
from .errors import (
    IllTypedAttachment,
    NotComposable,
    StepIndexOutOfOrder,
    UnknownAtom,
)

_STEP_REF = re.compile(r"^step(\d+)\.")


@dataclass(frozen=True)
class ScriptStep:
    """One attachment: cells, glued boundary subset, endpoints, boundary images."""

    cells: tuple[str, ...]
    boundary: tuple[str, ...]
    endpoints: tuple[StateId, StateId]
    boundary_map: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class DecompositionScript:
    skeleton0: tuple[StateId, ...]
    steps: tuple[ScriptStep, ...]


def script(skeleton0: Iterable[StateId], steps: Iterable[ScriptStep] = ()) -> DecompositionScript:
    return DecompositionScript(tuple(skeleton0), tuple(steps))


def step(
    cells: Iterable[str],
    endpoints: tuple[StateId, StateId],
    boundary: Iterable[str] = (),
    boundary_map: Mapping[str, Sequence[str]] | None = None,
) -> ScriptStep:
    return ScriptStep(
        tuple(cells), tuple(boundary), endpoints,
        {k: tuple(v) for k, v in (boundary_map or {}).items()},
    )


def glob(cells: Iterable[str]) -> Flow:
    """The globe over a label set: states 0 and 1, one atom per label."""
    return core.validate(
        core.presentation(["0", "1"], [(z, "0", "1") for z in sorted(cells)])
    )


def concat(globes: Sequence[Iterable[str]]) -> Flow:
    """Globes glued end to start: block j runs between states j-1 and j.

    Labels must be unique across blocks.
    """
    if not globes:
        raise ValueError("concat needs at least one block")
    states = [str(i) for i in range(len(globes) + 1)]
    atoms = [
        (z, str(j), str(j + 1))
        for j, block in enumerate(globes)
        for z in sorted(block)
    ]
    return core.validate(core.presentation(states, atoms))


def _resolve_boundary_path(flow: Flow, current_step: int, atom_ids: Sequence[str]) -> core.Path:
    for aid in atom_ids:
        if flow.has_atom(aid) or aid in flow.identifications:
            continue
        ref = _STEP_REF.match(aid)
        if ref and int(ref.group(1)) >= current_step:
            raise StepIndexOutOfOrder(
                f"step {current_step} references {aid!r} from a later step"
            )
        raise IllTypedAttachment(f"boundary path references unknown atom {aid!r}")
    try:
        return flow.make_path(atom_ids)
    except (UnknownAtom, NotComposable) as exc:
        raise IllTypedAttachment(str(exc)) from exc


def resolve_step(flow: Flow, index: int, raw: ScriptStep) -> pushout.AttachSpec:
    """Namespace a script step's cells and resolve its boundary images
    against the flow accumulated so far."""
    prefix = f"step{index}."
    cells = {prefix + c for c in raw.cells}
    boundary = {prefix + c for c in raw.boundary}
    if not set(raw.boundary) <= set(raw.cells):
        raise IllTypedAttachment(f"step {index}: boundary not a subset of cells")
    if set(raw.boundary_map) != set(raw.boundary):
        raise IllTypedAttachment(
            f"step {index}: boundary_map keys must match the boundary"
        )
    boundary_map = {
        prefix + c: _resolve_boundary_path(flow, index, ids)
        for c, ids in sorted(raw.boundary_map.items())
    }
    return pushout.attach_spec(
        cells, boundary, raw.endpoints[0], raw.endpoints[1], boundary_map, step=index
    )


def build(scr: DecompositionScript) -> Flow:
    """Left fold of globe attachments over the script's steps, starting
    from the achronal flow on the skeleton."""
    flow = core.validate(core.presentation(scr.skeleton0, []))
    for index, raw in enumerate(scr.steps):
        flow = pushout.attach_globe(flow, resolve_step(flow, index, raw))
    return flow

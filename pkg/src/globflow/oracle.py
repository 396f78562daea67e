"""Brute-force ground truth for globe attachments.

The pushout path spaces are recomputed here the dumb way: walk every
composable arrow sequence over host atoms, fresh cells, and boundary
aliases, substitute each alias by its image's atoms, and deduplicate.
This on purpose shares nothing with the colimit machinery in
:mod:`globflow.pushout`, so agreement between the two is evidence.
"""

from __future__ import annotations

import random
from typing import Iterable

from . import core, pushout
from .core import Atom, Flow, Path, StateId
from .errors import CyclicResult


def _has_cycle(states: Iterable[StateId], arrows: list[tuple[str, StateId, StateId]]) -> bool:
    remaining = {s: 0 for s in states}
    outgoing: dict[StateId, list[StateId]] = {}
    for _, src, tgt in arrows:
        remaining[tgt] += 1
        outgoing.setdefault(src, []).append(tgt)
    queue = [s for s, deg in remaining.items() if deg == 0]
    seen = 0
    while queue:
        state = queue.pop()
        seen += 1
        for tgt in outgoing.get(state, ()):
            remaining[tgt] -= 1
            if remaining[tgt] == 0:
                queue.append(tgt)
    return seen != len(remaining)


def brute_force_pushout(
    host: Flow, spec: pushout.AttachSpec
) -> dict[tuple[StateId, StateId], frozenset[Path]]:
    """Path sets of the attached flow by exhaustive sequence enumeration."""
    pushout.check_spec(host, spec)
    arrows = [(a.id, a.src, a.tgt) for a in host.atoms]
    for cell in sorted(spec.cells):
        arrows.append((cell, spec.endpoint0, spec.endpoint1))
    if _has_cycle(host.states, arrows):
        raise CyclicResult("attachment closes a directed cycle")

    expansion = {aid: (aid,) for aid, _, _ in arrows}
    for cell in spec.boundary:
        expansion[cell] = spec.boundary_map[cell].atoms

    by_src: dict[StateId, list[tuple[str, StateId]]] = {}
    for aid, src, tgt in sorted(arrows):
        by_src.setdefault(src, []).append((aid, tgt))

    found: dict[tuple[StateId, StateId], set[Path]] = {}

    def walk(seq: tuple[str, ...], start: StateId, cursor: StateId) -> None:
        for aid, tgt in by_src.get(cursor, ()):
            grown = seq + expansion[aid]
            found.setdefault((start, tgt), set()).add(Path(grown, start, tgt))
            walk(grown, start, tgt)

    for state in sorted(host.states):
        walk((), state, state)
    return {pair: frozenset(paths) for pair, paths in found.items()}


def random_instance(
    seed: int,
    max_states: int = 6,
    max_atoms: int = 8,
    max_aliases: int = 3,
) -> tuple[Flow, pushout.AttachSpec]:
    """A reproducible valid acyclic (host, attachment) pair.

    Atoms only ever point forward along the state numbering, so hosts are
    acyclic by construction; attachment endpoints are drawn from pairs the
    host has no opposing path for.  Boundary images prefer composite paths
    when any exist.
    """
    rng = random.Random(seed)
    n_states = rng.randint(2, max_states)
    states = [f"s{i}" for i in range(n_states)]

    n_atoms = rng.randint(1, max_atoms)
    atoms = []
    for t in range(n_atoms):
        i = rng.randrange(n_states - 1)
        j = rng.randrange(i + 1, n_states)
        atoms.append(Atom(f"a{t}", states[i], states[j]))

    base = core.validate(core.presentation(states, atoms))
    identifications: dict[str, tuple[str, ...]] = {}
    alias_atoms: list[Atom] = []
    base_paths = base.sorted_paths()
    for t in range(rng.randint(0, max_aliases)):
        target = rng.choice(base_paths)
        alias = Atom(f"w{t}", target.src, target.tgt)
        alias_atoms.append(alias)
        identifications[alias.id] = target.atoms
    host = core.validate(
        core.presentation(states, list(atoms) + alias_atoms, identifications)
    )

    ordered = [
        (a, b)
        for ia, a in enumerate(states)
        for b in states[ia + 1:]
    ]
    candidates = [
        (a, b) for (a, b) in ordered if not core.paths_between(host, b, a)
    ]
    composite_pairs = [
        (a, b)
        for (a, b) in candidates
        if any(len(p) > 1 for p in core.paths_between(host, a, b))
    ]
    if composite_pairs and rng.random() < 0.8:
        endpoints = rng.choice(composite_pairs)
    else:
        endpoints = rng.choice(candidates)

    old = sorted(core.paths_between(host, *endpoints), key=Path.sort_key)
    n_fresh = rng.randint(0, 3)
    cells = {f"z{t}" for t in range(n_fresh)}
    boundary: set[str] = set()
    boundary_map: dict[str, Path] = {}
    if old:
        composites = [p for p in old if len(p) > 1]
        for t in range(rng.randint(0 if not composites else 1, 2)):
            cell = f"b{t}"
            cells.add(cell)
            boundary.add(cell)
            pool = composites if composites and rng.random() < 0.7 else old
            boundary_map[cell] = rng.choice(pool)
    spec = pushout.attach_spec(cells, boundary, *endpoints, boundary_map)
    pushout.check_spec(host, spec)
    return host, spec

"""Globe attachment computed through the explicit path-space colimit.

Attaching a globe over a cell set ``Z`` with boundary ``bZ`` along two
states of a host flow is a pushout.  Its path spaces are computed here the
structural way: enumerate the admissible state sequences, form for each
one the product of per-pair factors (old path sets, with every occurrence
of the attachment pair replaced by the cell quotient ``T``), and glue the
products along the simplification and inclusion maps.  Classes of the
resulting colimit, flattened to atom sequences, are the paths of the
attached flow.

An independent brute-force recomputation lives in :mod:`globflow.oracle`;
the two must agree on every acyclic instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import core
from ._util import UnionFind
from .core import Atom, Flow, Path, StateId
from .errors import CyclicResult, IllTypedAttachment, IndexNotGlobePair


@dataclass(frozen=True)
class AttachSpec:
    """One globe attachment against a host flow.

    ``cells`` are the labels of the attached globe's path space; the ones in
    ``boundary`` are glued onto existing host paths via ``boundary_map``
    and become aliases, the rest become fresh atoms from ``endpoint0`` to
    ``endpoint1``.
    """

    cells: frozenset[str]
    boundary: frozenset[str]
    endpoint0: StateId
    endpoint1: StateId
    boundary_map: Mapping[str, Path] = field(default_factory=dict)
    step: int | None = None

    @property
    def pair(self) -> tuple[StateId, StateId]:
        return (self.endpoint0, self.endpoint1)

    @property
    def fresh_cells(self) -> tuple[str, ...]:
        return tuple(sorted(self.cells - self.boundary))


def attach_spec(
    cells,
    boundary,
    endpoint0: StateId,
    endpoint1: StateId,
    boundary_map: Mapping[str, Path] | None = None,
    step: int | None = None,
) -> AttachSpec:
    return AttachSpec(
        frozenset(cells), frozenset(boundary), endpoint0, endpoint1,
        dict(boundary_map or {}), step,
    )


def check_spec(host: Flow, spec: AttachSpec) -> None:
    """Raise IllTypedAttachment unless ``spec`` typechecks against ``host``."""
    for endpoint in spec.pair:
        if endpoint not in host.states:
            raise IllTypedAttachment(f"endpoint {endpoint!r} is not a state of the host")
    if not spec.boundary <= spec.cells:
        raise IllTypedAttachment("boundary is not a subset of the cells")
    if spec.endpoint0 == spec.endpoint1 and spec.cells != spec.boundary:
        raise IllTypedAttachment(
            "fresh cells on a single state would create a loop"
        )
    if set(spec.boundary_map) != set(spec.boundary):
        raise IllTypedAttachment("boundary_map keys must be exactly the boundary cells")
    old = core.paths_between(host, spec.endpoint0, spec.endpoint1)
    for cell, path in spec.boundary_map.items():
        if path not in old:
            raise IllTypedAttachment(
                f"boundary cell {cell!r} maps to {path.label()!r}, "
                f"not a host path {spec.endpoint0!r} -> {spec.endpoint1!r}"
            )
    for cell in spec.cells:
        core._check_identifier("cell", cell)
        if host.has_atom(cell) or cell in host.identifications:
            raise IllTypedAttachment(f"cell {cell!r} collides with an existing atom")


def _guard_acyclic(host: Flow, spec: AttachSpec, quotient: "TQuotient") -> None:
    # A nonempty attachment factor means a forward hop endpoint0 -> endpoint1;
    # any host path back from endpoint1 to endpoint0 would close a cycle.
    if len(quotient) and core.paths_between(host, spec.endpoint1, spec.endpoint0):
        raise CyclicResult(
            f"host has a path {spec.endpoint1!r} -> {spec.endpoint0!r} "
            f"opposing the attachment"
        )


@dataclass(frozen=True)
class TClass:
    """One element of the cell quotient: an old path with the boundary cells
    glued onto it, or a single fresh cell."""

    path: Path | None
    cells: tuple[str, ...]

    @property
    def representative(self) -> Path | str:
        return self.path if self.path is not None else self.cells[0]

    def label(self) -> str:
        return self.path.label() if self.path is not None else self.cells[0]

    def sort_key(self) -> tuple:
        if self.path is not None:
            return (0, self.path.sort_key())
        return (1, self.cells)


@dataclass(frozen=True)
class TQuotient:
    """The quotient of cells and old attachment-pair paths by the boundary gluing."""

    classes: tuple[TClass, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_path_index",
            {cls.path: cls for cls in self.classes if cls.path is not None},
        )

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def of_path(self, path: Path) -> TClass:
        return self._path_index[path]


def build_T(host: Flow, spec: AttachSpec) -> TQuotient:
    """Quotient the disjoint union of cells and old attachment-pair paths
    by gluing each boundary cell onto its image."""
    check_spec(host, spec)
    old = core.paths_between(host, spec.endpoint0, spec.endpoint1)
    glued: dict[Path, list[str]] = {p: [] for p in old}
    for cell in sorted(spec.boundary):
        glued[spec.boundary_map[cell]].append(cell)
    classes = [TClass(p, tuple(sorted(cells))) for p, cells in glued.items()]
    classes.extend(TClass(None, (cell,)) for cell in spec.fresh_cells)
    return TQuotient(tuple(sorted(classes, key=TClass.sort_key)))


@dataclass(frozen=True)
class AdmissibleSequence:
    """A state sequence whose factor product feeds the path-space colimit."""

    states: tuple[StateId, ...]

    def __post_init__(self) -> None:
        if len(self.states) < 2:
            raise ValueError("an admissible sequence needs at least two states")

    def __len__(self) -> int:
        return len(self.states)

    def pairs(self) -> tuple[tuple[StateId, StateId], ...]:
        return tuple(zip(self.states, self.states[1:]))


def _factor_size(host: Flow, spec: AttachSpec, quotient: TQuotient,
                 pair: tuple[StateId, StateId]) -> int:
    if pair == spec.pair:
        return len(quotient)
    return len(core.paths_between(host, *pair))


def admissible_sequences(host: Flow, spec: AttachSpec) -> tuple[AdmissibleSequence, ...]:
    """All state sequences with nonempty factors in which no two consecutive
    pairs both differ from the attachment pair.

    Sequences whose product would be empty contribute nothing to the
    colimit and are pruned, which is what makes the enumeration finite.
    """
    quotient = build_T(host, spec)
    _guard_acyclic(host, spec, quotient)
    found: list[AdmissibleSequence] = []

    def grow(states: tuple[StateId, ...], last_designated: bool) -> None:
        for nxt in sorted(host.states):
            pair = (states[-1], nxt)
            designated = pair == spec.pair
            if len(states) > 1 and not last_designated and not designated:
                continue
            if _factor_size(host, spec, quotient, pair) == 0:
                continue
            seq = states + (nxt,)
            found.append(AdmissibleSequence(seq))
            grow(seq, designated)

    for start in sorted(host.states):
        grow((start,), True)
    return tuple(sorted(found, key=lambda s: (len(s.states), s.states)))


def _designated_positions(spec: AttachSpec, seq: AdmissibleSequence) -> tuple[int, ...]:
    return tuple(i for i, pair in enumerate(seq.pairs()) if pair == spec.pair)


def simplification_maps(
    host: Flow,
    spec: AttachSpec,
    seq: AdmissibleSequence,
    i: int,
) -> tuple[Callable | None, Callable]:
    """The two maps out of the product whose ``i``-th factor is kept as an
    old path instead of its quotient class.

    ``compose_map`` merges that path into its neighboring old-path factors
    (None when both neighbors are quotient factors or absent, as in the
    two-state case), returning the shorter sequence and tuple.
    ``include_map`` sends the path to its quotient class in place.
    """
    return _simplification_maps(host, spec, build_T(host, spec), seq, i)


def _simplification_maps(
    host: Flow,
    spec: AttachSpec,
    quotient: TQuotient,
    seq: AdmissibleSequence,
    i: int,
) -> tuple[Callable | None, Callable]:
    pairs = seq.pairs()
    if i < 0 or i >= len(pairs) or pairs[i] != spec.pair:
        raise IndexNotGlobePair(f"position {i} of {seq.states} is not the attachment pair")
    designated = set(_designated_positions(spec, seq))

    def check_entry(tpl: tuple) -> None:
        if len(tpl) != len(pairs):
            raise IndexNotGlobePair(f"tuple of length {len(tpl)} for {len(pairs)} factors")
        if not isinstance(tpl[i], Path):
            raise IndexNotGlobePair(f"entry {i} is not an old path: {tpl[i]!r}")

    def include_map(tpl: tuple) -> tuple:
        check_entry(tpl)
        return tpl[:i] + (quotient.of_path(tpl[i]),) + tpl[i + 1:]

    left = i - 1 if i - 1 >= 0 and i - 1 not in designated else i
    right = i + 1 if i + 1 < len(pairs) and i + 1 not in designated else i
    if left == i and right == i:
        return None, include_map

    def compose_map(tpl: tuple) -> tuple[AdmissibleSequence, tuple]:
        check_entry(tpl)
        merged = tpl[left]
        for entry in tpl[left + 1: right + 1]:
            merged = core.compose(host, merged, entry)
        states = seq.states[: left + 1] + seq.states[right + 1:]
        return AdmissibleSequence(states), tpl[:left] + (merged,) + tpl[right + 1:]

    return compose_map, include_map


def _flatten(entries: tuple) -> tuple[str, ...]:
    atoms: list[str] = []
    for entry in entries:
        if isinstance(entry, Path):
            atoms.extend(entry.atoms)
        else:
            path = entry.path
            atoms.extend(path.atoms if path is not None else entry.cells)
    return tuple(atoms)


def colimit_paths(host: Flow, spec: AttachSpec) -> dict[tuple[StateId, StateId], frozenset[Path]]:
    """Path sets of the attached flow, one frozenset per endpoint pair,
    computed as colimit classes of the factor-product diagram."""
    quotient = build_T(host, spec)
    sequences = admissible_sequences(host, spec)
    old_designated = core.paths_between(host, spec.endpoint0, spec.endpoint1)

    factors_of: dict[AdmissibleSequence, list[tuple]] = {}
    for seq in sequences:
        factors = []
        for pair in seq.pairs():
            if pair == spec.pair:
                factors.append(tuple(quotient.classes))
            else:
                factors.append(tuple(sorted(core.paths_between(host, *pair), key=Path.sort_key)))
        factors_of[seq] = factors

    uf = UnionFind()
    for seq, factors in factors_of.items():
        for tpl in itertools.product(*factors):
            uf.add((seq, tpl))

    for seq, factors in factors_of.items():
        for i in _designated_positions(spec, seq):
            compose_map, include_map = _simplification_maps(host, spec, quotient, seq, i)
            aux_factors = list(factors)
            aux_factors[i] = tuple(sorted(old_designated, key=Path.sort_key))
            for tpl in itertools.product(*aux_factors):
                included = (seq, include_map(tpl))
                if compose_map is None:
                    uf.add(included)
                    continue
                shorter_seq, shorter_tpl = compose_map(tpl)
                assert shorter_seq in factors_of, "simplified sequence left the diagram"
                uf.union(included, (shorter_seq, shorter_tpl))

    result: dict[tuple[StateId, StateId], set[Path]] = {}
    flattened: dict = {}
    for seq, factors in factors_of.items():
        endpoints = (seq.states[0], seq.states[-1])
        for tpl in itertools.product(*factors):
            root = uf.find((seq, tpl))
            atoms = _flatten(tpl)
            if root in flattened:
                assert flattened[root] == atoms, "colimit class flattens ambiguously"
                continue
            flattened[root] = atoms
            result.setdefault(endpoints, set()).add(Path(atoms, *endpoints))
    return {pair: frozenset(paths) for pair, paths in result.items()}


def attach_globe(host: Flow, spec: AttachSpec) -> Flow:
    """Push a globe onto ``host`` along the attachment spec.

    Fresh cells become atoms between the endpoints, boundary cells become
    aliases for their images, and the path set is the one computed by
    :func:`colimit_paths`.
    """
    by_pair = colimit_paths(host, spec)
    atoms = list(host.atoms)
    for cell in spec.fresh_cells:
        atoms.append(Atom(cell, spec.endpoint0, spec.endpoint1, origin="cell", step=spec.step))
    identifications = dict(host.identifications)
    for cell in sorted(spec.boundary):
        identifications[cell] = spec.boundary_map[cell].atoms
    paths = frozenset(p for group in by_pair.values() for p in group)
    assert host.paths <= paths, "attachment must keep every host path"
    return core._from_parts(host.states, atoms, identifications, paths)

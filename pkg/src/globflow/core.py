"""Finite acyclic flows.

A flow is a set of states (the 0-skeleton) together with a finite set of
directed atoms between states and the induced path set: every nonempty
composable sequence of atoms is a path, and path composition is
concatenation.  Atom graphs must be acyclic so that path sets are finite.

Presentations may additionally carry *identifications*: alias labels that
rewrite to an existing composable atom sequence.  Aliases arise from globe
attachments whose boundary cells land on existing paths; they never appear
inside stored paths, which are always in normal form over the realized
atoms.

The character ``*`` is reserved: it separates the constituents of packed
atoms created by :func:`restrict` and must not occur in user identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ._util import UnionFind
from .errors import (
    BadIdentifier,
    CyclicGraph,
    DanglingEndpoint,
    DuplicateId,
    IllTypedIdentification,
    NotComposable,
    UnknownAtom,
    UnknownState,
)

StateId = str

MINUS = "minus"
PLUS = "plus"

PACK_SEPARATOR = "*"


@dataclass(frozen=True)
class Atom:
    """A generating step of a flow: one irreducible path from src to tgt.

    ``origin`` is "base" for presentation generators and "cell" for cells
    added by a globe attachment (``step`` then records the attachment
    index).  Atoms created by :func:`restrict` pack a whole through-path of
    the host flow; their id joins the host atom ids with ``*``.
    """

    id: str
    src: StateId
    tgt: StateId
    origin: str = "base"
    step: int | None = None

    def parts(self) -> tuple[str, ...]:
        """Host atom ids packed into this atom (itself, if unpacked)."""
        return tuple(self.id.split(PACK_SEPARATOR))


@dataclass(frozen=True)
class Path:
    """A nonempty composable atom sequence in normal form."""

    atoms: tuple[str, ...]
    src: StateId
    tgt: StateId

    def __post_init__(self) -> None:
        if not self.atoms:
            raise NotComposable("a path needs at least one atom")

    def __len__(self) -> int:
        return len(self.atoms)

    def label(self) -> str:
        return PACK_SEPARATOR.join(self.atoms)

    def sort_key(self) -> tuple:
        return (self.src, self.tgt, len(self.atoms), self.atoms)


def expand_path(path: Path) -> Path:
    """Unfold packed atoms, returning the corresponding host-flow path."""
    atoms = tuple(part for a in path.atoms for part in a.split(PACK_SEPARATOR))
    return Path(atoms, path.src, path.tgt)


@dataclass(frozen=True)
class FlowPresentation:
    """Raw input to :func:`validate`: states, atoms, alias rewrites."""

    states: tuple[StateId, ...]
    atoms: tuple[Atom, ...]
    identifications: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


def presentation(
    states: Iterable[StateId],
    atoms: Iterable[Atom | tuple],
    identifications: Mapping[str, Sequence[str]] | None = None,
) -> FlowPresentation:
    """Convenience constructor; atoms may be (id, src, tgt) triples."""
    packed = tuple(a if isinstance(a, Atom) else Atom(*a) for a in atoms)
    idents = {k: tuple(v) for k, v in (identifications or {}).items()}
    return FlowPresentation(tuple(states), packed, idents)


@dataclass(frozen=True, repr=False)
class Flow:
    """A realized flow: immutable after validation, safe to share.

    ``paths`` is the full finite path set; composition of paths is
    concatenation of their atom sequences.
    """

    states: frozenset[StateId]
    atoms: tuple[Atom, ...]
    identifications: Mapping[str, tuple[str, ...]]
    paths: frozenset[Path]

    def __post_init__(self) -> None:
        by_id = {a.id: a for a in self.atoms}
        by_pair: dict[tuple[StateId, StateId], set[Path]] = {}
        outgoing: dict[StateId, set[Path]] = {s: set() for s in self.states}
        incoming: dict[StateId, set[Path]] = {s: set() for s in self.states}
        for p in self.paths:
            by_pair.setdefault((p.src, p.tgt), set()).add(p)
            outgoing[p.src].add(p)
            incoming[p.tgt].add(p)
        object.__setattr__(self, "_atom_by_id", by_id)
        object.__setattr__(self, "_by_pair", {k: frozenset(v) for k, v in by_pair.items()})
        object.__setattr__(self, "_outgoing", {k: frozenset(v) for k, v in outgoing.items()})
        object.__setattr__(self, "_incoming", {k: frozenset(v) for k, v in incoming.items()})

    def __repr__(self) -> str:
        return (
            f"Flow(states={len(self.states)}, atoms={len(self.atoms)}, "
            f"paths={len(self.paths)})"
        )

    def atom(self, atom_id: str) -> Atom:
        try:
            return self._atom_by_id[atom_id]
        except KeyError:
            raise UnknownAtom(atom_id) from None

    def has_atom(self, atom_id: str) -> bool:
        return atom_id in self._atom_by_id

    def atoms_between(self, src: StateId, tgt: StateId) -> tuple[Atom, ...]:
        return tuple(a for a in self.atoms if a.src == src and a.tgt == tgt)

    def sorted_states(self) -> tuple[StateId, ...]:
        return tuple(sorted(self.states))

    def sorted_paths(self) -> tuple[Path, ...]:
        return tuple(sorted(self.paths, key=Path.sort_key))

    def make_path(self, atom_ids: Sequence[str]) -> Path:
        """Resolve aliases in ``atom_ids`` and return the normal-form path."""
        if not atom_ids:
            raise NotComposable("empty atom sequence")
        resolved: list[str] = []
        for raw in atom_ids:
            if raw in self.identifications:
                resolved.extend(self.identifications[raw])
            elif raw in self._atom_by_id:
                resolved.append(raw)
            else:
                raise UnknownAtom(raw)
        cursor = self._atom_by_id[resolved[0]].src
        for aid in resolved:
            atom = self._atom_by_id[aid]
            if atom.src != cursor:
                raise NotComposable(f"{aid} starts at {atom.src}, expected {cursor}")
            cursor = atom.tgt
        return Path(tuple(resolved), self._atom_by_id[resolved[0]].src, cursor)


def _check_identifier(kind: str, value: str) -> None:
    if not isinstance(value, str) or not value:
        raise BadIdentifier(f"{kind} id must be a nonempty string, got {value!r}")
    if PACK_SEPARATOR in value:
        raise BadIdentifier(f"{kind} id {value!r} contains reserved character '*'")


def _find_cycle(states: Iterable[StateId], edges: set[tuple[StateId, StateId]]) -> list[StateId] | None:
    adjacency: dict[StateId, list[StateId]] = {}
    for src, tgt in sorted(edges):
        adjacency.setdefault(src, []).append(tgt)
    done: set[StateId] = set()
    for root in sorted(states):
        if root in done:
            continue
        stack: list[tuple[StateId, int]] = [(root, 0)]
        trail: list[StateId] = [root]
        on_trail = {root}
        while stack:
            state, child = stack[-1]
            succs = adjacency.get(state, [])
            if child < len(succs):
                stack[-1] = (state, child + 1)
                nxt = succs[child]
                if nxt in on_trail:
                    return trail[trail.index(nxt):] + [nxt]
                if nxt not in done:
                    stack.append((nxt, 0))
                    trail.append(nxt)
                    on_trail.add(nxt)
            else:
                stack.pop()
                trail.pop()
                on_trail.discard(state)
                done.add(state)
    return None


def _enumerate_paths(states: Iterable[StateId], atoms: Sequence[Atom]) -> set[Path]:
    by_src: dict[StateId, list[Atom]] = {}
    for atom in sorted(atoms, key=lambda a: a.id):
        by_src.setdefault(atom.src, []).append(atom)
    found: set[Path] = set()

    def grow(prefix: tuple[str, ...], src: StateId, cursor: StateId) -> None:
        for atom in by_src.get(cursor, ()):
            seq = prefix + (atom.id,)
            found.add(Path(seq, src, atom.tgt))
            grow(seq, src, atom.tgt)

    for state in sorted(states):
        grow((), state, state)
    return found


def _resolve_identifications(
    idents: Mapping[str, Sequence[str]],
    declared: Mapping[str, Atom],
) -> dict[str, tuple[str, ...]]:
    """Expand alias chains down to realized atoms, rejecting cycles."""
    resolved: dict[str, tuple[str, ...]] = {}
    in_progress: set[str] = set()

    def resolve(key: str) -> tuple[str, ...]:
        if key in resolved:
            return resolved[key]
        if key in in_progress:
            raise IllTypedIdentification(f"alias cycle through {key!r}")
        in_progress.add(key)
        target: list[str] = []
        for aid in idents[key]:
            if aid in idents:
                target.extend(resolve(aid))
            elif aid in declared:
                target.append(aid)
            else:
                raise IllTypedIdentification(f"{key!r} rewrites to unknown atom {aid!r}")
        in_progress.discard(key)
        if not target:
            raise IllTypedIdentification(f"{key!r} rewrites to an empty sequence")
        resolved[key] = tuple(target)
        return resolved[key]

    for key in idents:
        resolve(key)
    return resolved


def validate(pres: FlowPresentation) -> Flow:
    """Realize a presentation as a flow, materializing the full path set.

    Raises CyclicGraph (naming one cycle), DanglingEndpoint, DuplicateId,
    BadIdentifier, or IllTypedIdentification.
    """
    seen_states: set[StateId] = set()
    for s in pres.states:
        _check_identifier("state", s)
        if s in seen_states:
            raise DuplicateId(f"state {s!r} declared twice")
        seen_states.add(s)

    declared: dict[str, Atom] = {}
    for atom in pres.atoms:
        _check_identifier("atom", atom.id)
        if atom.id in declared:
            raise DuplicateId(f"atom {atom.id!r} declared twice")
        if atom.src not in seen_states:
            raise DanglingEndpoint(f"atom {atom.id!r} starts at unknown state {atom.src!r}")
        if atom.tgt not in seen_states:
            raise DanglingEndpoint(f"atom {atom.id!r} ends at unknown state {atom.tgt!r}")
        declared[atom.id] = atom

    for key in pres.identifications:
        if key not in declared:
            raise IllTypedIdentification(f"alias {key!r} is not a declared atom")
    realized = {aid: a for aid, a in declared.items() if aid not in pres.identifications}
    idents = _resolve_identifications(pres.identifications, realized)

    for key, target in idents.items():
        cursor = declared[key].src
        for aid in target:
            atom = realized[aid]
            if atom.src != cursor:
                raise IllTypedIdentification(
                    f"{key!r} rewrite breaks at {aid!r}: starts at {atom.src}, expected {cursor}"
                )
            cursor = atom.tgt
        if cursor != declared[key].tgt:
            raise IllTypedIdentification(
                f"{key!r} rewrite ends at {cursor}, expected {declared[key].tgt}"
            )

    edges = {(a.src, a.tgt) for a in realized.values()}
    cycle = _find_cycle(seen_states, edges)
    if cycle is not None:
        raise CyclicGraph(cycle)

    atoms = tuple(sorted(realized.values(), key=lambda a: a.id))
    paths = frozenset(_enumerate_paths(seen_states, atoms))
    return Flow(frozenset(seen_states), atoms, idents, paths)


def _from_parts(
    states: Iterable[StateId],
    atoms: Iterable[Atom],
    identifications: Mapping[str, tuple[str, ...]],
    paths: Iterable[Path],
) -> Flow:
    """Trusted constructor for flows whose path set was computed elsewhere."""
    return Flow(
        frozenset(states),
        tuple(sorted(atoms, key=lambda a: a.id)),
        dict(identifications),
        frozenset(paths),
    )


def paths_between(flow: Flow, src: StateId, tgt: StateId) -> frozenset[Path]:
    """All paths of ``flow`` from ``src`` to ``tgt``."""
    for s in (src, tgt):
        if s not in flow.states:
            raise UnknownState(s)
    return flow._by_pair.get((src, tgt), frozenset())


def compose(flow: Flow, first: Path, second: Path) -> Path:
    """Concatenate two composable paths of ``flow``."""
    if first.tgt != second.src:
        raise NotComposable(f"{first.label()} ends at {first.tgt}, {second.label()} starts at {second.src}")
    return Path(first.atoms + second.atoms, first.src, second.tgt)


def restrict(flow: Flow, keep: Iterable[StateId]) -> Flow:
    """The flow over ``keep`` whose paths are exactly flow paths between kept states.

    Atoms of the restriction are the through-paths that visit no kept state
    strictly inside; each packs its host atoms into an id joined with ``*``.
    """
    kept = frozenset(keep)
    for s in kept:
        if s not in flow.states:
            raise UnknownState(s)
    if kept == flow.states:
        return flow

    survivors = [p for p in flow.sorted_paths() if p.src in kept and p.tgt in kept]
    atoms: dict[str, Atom] = {}
    cut_paths: set[Path] = set()
    for p in survivors:
        segments: list[tuple[str, ...]] = []
        bounds: list[StateId] = [p.src]
        current: list[str] = []
        cursor = p.src
        for aid in p.atoms:
            current.append(aid)
            cursor = flow.atom(aid).tgt
            if cursor in kept:
                segments.append(tuple(current))
                bounds.append(cursor)
                current = []
        seg_ids = []
        for i, seg in enumerate(segments):
            seg_id = PACK_SEPARATOR.join(seg)
            if seg_id not in atoms:
                if len(seg) == 1:
                    atoms[seg_id] = flow.atom(seg[0])
                else:
                    atoms[seg_id] = Atom(seg_id, bounds[i], bounds[i + 1])
            seg_ids.append(seg_id)
        cut_paths.add(Path(tuple(seg_ids), p.src, p.tgt))
    return _from_parts(kept, atoms.values(), {}, cut_paths)


@dataclass(frozen=True)
class BranchClassSet:
    """Partition of the paths leaving (minus) or entering (plus) a state."""

    state: StateId
    direction: str
    classes: tuple[frozenset[Path], ...]

    def __len__(self) -> int:
        return len(self.classes)


def branch_classes(flow: Flow, direction: str) -> dict[StateId, BranchClassSet]:
    """Branching (minus) or merging (plus) classes at every state.

    Minus classes are the finest partition of paths out of a state in which
    a path and every extension of it agree; plus is the mirror image over
    paths into a state.
    """
    if direction not in (MINUS, PLUS):
        raise ValueError(f"direction must be {MINUS!r} or {PLUS!r}")
    anchored = flow._outgoing if direction == MINUS else flow._incoming
    result: dict[StateId, BranchClassSet] = {}
    for state in flow.sorted_states():
        uf = UnionFind(anchored[state])
        for p in anchored[state]:
            for q in flow._outgoing[p.tgt] if direction == MINUS else flow._incoming[p.src]:
                extended = compose(flow, p, q) if direction == MINUS else compose(flow, q, p)
                uf.union(p, extended)
        classes = sorted(uf.classes(), key=lambda c: min(p.sort_key() for p in c))
        result[state] = BranchClassSet(state, direction, tuple(classes))
    return result


def initial_states(flow: Flow) -> frozenset[StateId]:
    """States no path ends at."""
    return frozenset(s for s in flow.states if not flow._incoming[s])


def final_states(flow: Flow) -> frozenset[StateId]:
    """States no path starts at."""
    return frozenset(s for s in flow.states if not flow._outgoing[s])


@dataclass(frozen=True)
class ReachabilityReport:
    initial: tuple[StateId, ...]
    final: tuple[StateId, ...]
    unreachable: tuple[StateId, ...]
    deadlocks: tuple[StateId, ...]

    @property
    def clean(self) -> bool:
        return not self.unreachable and not self.deadlocks


def reachability_report(
    flow: Flow,
    designated_initial: Iterable[StateId],
    designated_final: Iterable[StateId],
) -> ReachabilityReport:
    """Unreachable and deadlock states relative to designated entry/exit sets."""
    initial = frozenset(designated_initial)
    final = frozenset(designated_final)
    for s in initial | final:
        if s not in flow.states:
            raise UnknownState(s)
    reached = set(initial)
    for p in flow.paths:
        if p.src in initial:
            reached.add(p.tgt)
    unreachable = tuple(sorted(flow.states - reached))
    deadlocks = tuple(
        sorted(s for s in flow.states if not flow._outgoing[s] and s not in final)
    )
    return ReachabilityReport(
        tuple(sorted(initial)), tuple(sorted(final)), unreachable, deadlocks
    )

"""Flow morphisms, isomorphism, and subdivision (T-homotopy) equivalence.

At the discrete level a weak equivalence that fixes no states is just a
flow isomorphism, and because every path factors uniquely into atoms, flow
isomorphisms are exactly state bijections under which the per-pair atom
counts agree.  Subdivision equivalence is decided by the three-condition
check: isomorphism onto the restriction, no branching or merging at new
states, and no new state unreachable from or dead-ended away from old
ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import core
from .core import MINUS, PLUS, Flow, Path, StateId
from .errors import NotAMorphism, SearchBudgetExceeded


@dataclass(frozen=True)
class FlowMorphism:
    """A state map plus a path map, assumed validated by :func:`is_morphism`."""

    state_map: Mapping[StateId, StateId]
    path_map: Mapping[Path, Path]

    def image_states(self) -> frozenset[StateId]:
        return frozenset(self.state_map.values())


def is_morphism(
    state_map: Mapping[StateId, StateId],
    path_map: Mapping[Path, Path],
    source: Flow,
    target: Flow,
) -> FlowMorphism:
    """Validate candidate maps, raising NotAMorphism naming the violated law."""
    for s in source.states:
        if s not in state_map:
            raise NotAMorphism("state totality", s)
        if state_map[s] not in target.states:
            raise NotAMorphism("state image", (s, state_map[s]))
    for p in source.paths:
        if p not in path_map:
            raise NotAMorphism("path totality", p)
        if path_map[p] not in target.paths:
            raise NotAMorphism("path image", (p, path_map[p]))
    for p in source.paths:
        image = path_map[p]
        if state_map[p.src] != image.src:
            raise NotAMorphism("source", p)
        if state_map[p.tgt] != image.tgt:
            raise NotAMorphism("target", p)
    for p in source.paths:
        for q in source.paths:
            if p.tgt != q.src:
                continue
            composite = core.compose(source, p, q)
            expected = core.compose(target, path_map[p], path_map[q])
            if path_map[composite] != expected:
                raise NotAMorphism("composition", (p, q))
    return FlowMorphism(dict(state_map), dict(path_map))


def _state_signature(flow: Flow, state: StateId) -> tuple[int, int]:
    return (len(flow._incoming[state]), len(flow._outgoing[state]))


def _atom_counts(flow: Flow) -> dict[tuple[StateId, StateId], int]:
    counts: dict[tuple[StateId, StateId], int] = {}
    for a in flow.atoms:
        counts[(a.src, a.tgt)] = counts.get((a.src, a.tgt), 0) + 1
    return counts


def _pairwise_morphism(
    source: Flow, target: Flow, state_map: Mapping[StateId, StateId]
) -> FlowMorphism:
    """Extend a compatible state bijection atomwise (sorted ids per pair)."""
    atom_map: dict[str, str] = {}
    for (src, tgt), count in _atom_counts(source).items():
        mine = sorted(a.id for a in source.atoms_between(src, tgt))
        theirs = sorted(
            a.id for a in target.atoms_between(state_map[src], state_map[tgt])
        )
        assert len(mine) == len(theirs) == count
        atom_map.update(zip(mine, theirs))
    path_map = {}
    for p in source.paths:
        image_atoms = tuple(atom_map[a] for a in p.atoms)
        path_map[p] = Path(image_atoms, state_map[p.src], state_map[p.tgt])
    return FlowMorphism(dict(state_map), path_map)


def is_isomorphic(left: Flow, right: Flow) -> FlowMorphism | None:
    """Search for a flow isomorphism; deterministic in sorted state order.

    Backtracks over state bijections pruned by path-count signatures and
    per-pair atom counts; parallel atoms are interchangeable, so a
    compatible state bijection settles the whole isomorphism.
    """
    if (
        len(left.states) != len(right.states)
        or len(left.atoms) != len(right.atoms)
        or len(left.paths) != len(right.paths)
    ):
        return None
    left_states = sorted(left.states)
    right_states = sorted(right.states)
    left_sigs = {s: _state_signature(left, s) for s in left_states}
    right_sigs = {s: _state_signature(right, s) for s in right_states}
    if sorted(left_sigs.values()) != sorted(right_sigs.values()):
        return None
    left_counts = _atom_counts(left)
    right_counts = _atom_counts(right)

    assignment: dict[StateId, StateId] = {}
    used: set[StateId] = set()

    def consistent(x: StateId, y: StateId) -> bool:
        if left_sigs[x] != right_sigs[y]:
            return False
        for seen_x, seen_y in assignment.items():
            for (a, b), (c, d) in (((x, seen_x), (y, seen_y)), ((seen_x, x), (seen_y, y))):
                if left_counts.get((a, b), 0) != right_counts.get((c, d), 0):
                    return False
        return left_counts.get((x, x), 0) == right_counts.get((y, y), 0)

    def extend(index: int) -> bool:
        if index == len(left_states):
            return True
        x = left_states[index]
        for y in right_states:
            if y in used or not consistent(x, y):
                continue
            assignment[x] = y
            used.add(y)
            if extend(index + 1):
                return True
            del assignment[x]
            used.discard(y)
        return False

    if not extend(0):
        return None
    return _pairwise_morphism(left, right, assignment)


@dataclass(frozen=True)
class ConditionOne:
    passed: bool
    detail: str
    restriction: Flow | None = None


@dataclass(frozen=True)
class ConditionTwo:
    passed: bool
    offenders: tuple[tuple[StateId, int, int], ...]  # (state, minus, plus)


@dataclass(frozen=True)
class ConditionThree:
    passed: bool
    offenders: tuple[StateId, ...]


@dataclass(frozen=True)
class THomotopyReport:
    condition1: ConditionOne
    condition2: ConditionTwo
    condition3: ConditionThree

    @property
    def verdict(self) -> bool:
        return self.condition1.passed and self.condition2.passed and self.condition3.passed


def _check_condition1(f: FlowMorphism, source: Flow, target: Flow) -> ConditionOne:
    if len(f.image_states()) != len(f.state_map):
        return ConditionOne(False, "state map is not injective")
    image = f.image_states()
    restriction = core.restrict(target, image)
    wanted = {core.expand_path(p) for p in restriction.paths}
    got = set(f.path_map.values())
    if len(got) != len(f.path_map):
        return ConditionOne(False, "path map is not injective", restriction)
    missing = wanted - got
    extra = got - wanted
    if missing:
        path = sorted(missing, key=Path.sort_key)[0]
        return ConditionOne(
            False, f"restriction path {path.label()!r} has no preimage", restriction
        )
    if extra:
        path = sorted(extra, key=Path.sort_key)[0]
        return ConditionOne(
            False, f"image path {path.label()!r} leaves the restriction", restriction
        )
    return ConditionOne(True, "isomorphism onto the restriction", restriction)


def check_T_homotopy(f: FlowMorphism, source: Flow, target: Flow) -> THomotopyReport:
    """Evaluate the three subdivision-equivalence conditions for ``f``.

    Failures are report content, not errors.  ``f`` is assumed validated.
    """
    condition1 = _check_condition1(f, source, target)
    image = f.image_states()
    new_states = sorted(target.states - image)

    minus = core.branch_classes(target, MINUS)
    plus = core.branch_classes(target, PLUS)
    offenders2 = tuple(
        (s, len(minus[s]), len(plus[s]))
        for s in new_states
        if len(minus[s]) != 1 or len(plus[s]) != 1
    )

    offenders3 = []
    for s in new_states:
        has_in = any(p.src in image for p in target._incoming[s])
        has_out = any(p.tgt in image for p in target._outgoing[s])
        if not (has_in and has_out):
            offenders3.append(s)

    return THomotopyReport(
        condition1,
        ConditionTwo(not offenders2, offenders2),
        ConditionThree(not offenders3, tuple(offenders3)),
    )


def _candidate_morphisms(source: Flow, target: Flow) -> Iterable[FlowMorphism]:
    """Injections of the source states extended over matching restrictions.

    Yields one canonical morphism per injection that satisfies condition 1;
    conditions 2 and 3 only depend on the image, so one atom pairing per
    injection is enough.
    """
    k = len(source.states)
    if k > len(target.states):
        return
    source_states = sorted(source.states)
    source_counts = _atom_counts(source)
    for image in itertools.combinations(sorted(target.states), k):
        restriction = core.restrict(target, image)
        if len(restriction.paths) != len(source.paths):
            continue
        restriction_counts = _atom_counts(restriction)
        for ordering in itertools.permutations(image):
            state_map = dict(zip(source_states, ordering))
            ok = all(
                restriction_counts.get((state_map[a], state_map[b]), 0) == n
                for (a, b), n in source_counts.items()
            ) and len(restriction.atoms) == len(source.atoms)
            if not ok:
                continue
            packed = _pairwise_morphism(source, restriction, state_map)
            path_map = {
                p: core.expand_path(q) for p, q in packed.path_map.items()
            }
            yield FlowMorphism(state_map, path_map)


def find_T_homotopy(
    source: Flow,
    target: Flow,
    max_states: int = 12,
) -> tuple[FlowMorphism, THomotopyReport] | None:
    """First subdivision equivalence found under canonical enumeration, if any."""
    if len(target.states) > max_states:
        raise SearchBudgetExceeded(
            f"target has {len(target.states)} states, budget is {max_states}"
        )
    for f in _candidate_morphisms(source, target):
        report = check_T_homotopy(f, source, target)
        if report.verdict:
            return f, report
    return None


@dataclass(frozen=True)
class StateSummary:
    in_paths: int
    out_paths: int
    minus_classes: int
    plus_classes: int


@dataclass(frozen=True)
class FlowSummary:
    states: tuple[StateId, ...]
    initial: tuple[StateId, ...]
    final: tuple[StateId, ...]
    path_count: int
    matrix: tuple[tuple[int, ...], ...]
    per_state: Mapping[StateId, StateSummary]


def invariant_summary(flow: Flow) -> FlowSummary:
    """Per-state path and branching counts plus the pairwise path matrix."""
    states = flow.sorted_states()
    minus = core.branch_classes(flow, MINUS)
    plus = core.branch_classes(flow, PLUS)
    matrix = tuple(
        tuple(len(core.paths_between(flow, a, b)) for b in states) for a in states
    )
    per_state = {
        s: StateSummary(
            len(flow._incoming[s]),
            len(flow._outgoing[s]),
            len(minus[s]),
            len(plus[s]),
        )
        for s in states
    }
    return FlowSummary(
        states,
        tuple(sorted(core.initial_states(flow))),
        tuple(sorted(core.final_states(flow))),
        len(flow.paths),
        matrix,
        per_state,
    )

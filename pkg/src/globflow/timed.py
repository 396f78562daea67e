"""Timed execution paths: weighted concatenation, reparametrization,
normalization.

A timed path is a formal tree of weighted concatenations of atomic steps,
realized as a piecewise-linear schedule: each leaf occupies a rational
subinterval of [0,1] traversed affinely.  Two timed paths are equal when
their schedules are, regardless of tree shape; that is what makes the
reassociation identity an actual equality here.

Everything in this module is exact rational arithmetic; floats are
rejected outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Flow, Path, StateId
from .errors import (
    BadParameter,
    NotAPathOfHost,
    NotComposable,
    UnknownAtom,
)

Span = tuple[Fraction, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise BadParameter(f"floats are not allowed, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise BadParameter(f"not a rational: {value!r}") from exc


@dataclass(frozen=True, eq=False)
class TimedPath:
    """A scheduled traversal of composable atoms.

    Equality and hashing use the schedule (spans), not the tree.
    """

    src: StateId
    tgt: StateId
    spans: tuple[Span, ...]
    tree: tuple = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimedPath):
            return NotImplemented
        return self.spans == other.spans and self.src == other.src and self.tgt == other.tgt

    def __hash__(self) -> int:
        return hash((self.src, self.tgt, self.spans))

    def leaves(self) -> tuple[str, ...]:
        return tuple(atom for _, _, atom in self.spans)

    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(end for _, end, _ in self.spans[:-1])

    def at(self, t) -> tuple[str, Fraction]:
        """(atom, local time) at global time ``t``; left leaf wins at breakpoints."""
        t = _as_fraction(t)
        if t < ZERO or t > ONE:
            raise BadParameter(f"time {t} outside [0,1]")
        for start, end, atom in self.spans:
            if t <= end:
                return atom, (t - start) / (end - start)
        raise AssertionError("spans must cover [0,1]")


def _tree_from_spans(spans: Sequence[Span]) -> tuple:
    if len(spans) == 1:
        return ("leaf", spans[0][2])
    start, end, atom = spans[0]
    scale = ONE - end
    tail = tuple(
        ((s - end) / scale, (e - end) / scale, a) for s, e, a in spans[1:]
    )
    return ("node", ("leaf", atom), end, _tree_from_spans(tail))


def leaf(flow: Flow, atom_id: str) -> TimedPath:
    """A single atomic step traversed over all of [0,1].

    Alias labels are accepted; their endpoints come from their expansion.
    """
    if flow.has_atom(atom_id):
        atom = flow.atom(atom_id)
        src, tgt = atom.src, atom.tgt
    elif atom_id in flow.identifications:
        expansion = flow.identifications[atom_id]
        src = flow.atom(expansion[0]).src
        tgt = flow.atom(expansion[-1]).tgt
    else:
        raise UnknownAtom(atom_id)
    return TimedPath(src, tgt, ((ZERO, ONE, atom_id),), ("leaf", atom_id))


def concat_at(first: TimedPath, weight, second: TimedPath) -> TimedPath:
    """Glue two timed paths, the first on [0, weight], the second after it."""
    a = _as_fraction(weight)
    if not ZERO < a < ONE:
        raise BadParameter(f"weight must lie strictly between 0 and 1, got {a}")
    if first.tgt != second.src:
        raise NotComposable(
            f"timed paths do not meet: {first.tgt!r} then {second.src!r}"
        )
    spans = tuple((s * a, e * a, atom) for s, e, atom in first.spans) + tuple(
        (a + s * (ONE - a), a + e * (ONE - a), atom) for s, e, atom in second.spans
    )
    return TimedPath(first.src, second.tgt, spans, ("node", first.tree, a, second.tree))


def check_reassociation(
    first: TimedPath, second: TimedPath, third: TimedPath, a, b
) -> tuple[Fraction, Fraction, tuple[Span, ...]]:
    """Solve for the right-leaning weights and check the two groupings
    produce the same schedule.

    Given weights a then b for ((first, second), third), the weights
    c = a*b and d = (b - c)/(1 - c) satisfy (1-c)(1-d) = (1-b), and the
    regrouped (first, (second, third)) schedule is identical.  A mismatch
    is a defect, reported as AssertionError.
    """
    a = _as_fraction(a)
    b = _as_fraction(b)
    c = a * b
    d = (b - c) / (ONE - c)
    left = concat_at(concat_at(first, a, second), b, third)
    right = concat_at(first, c, concat_at(second, d, third))
    assert (ONE - c) * (ONE - d) == ONE - b
    assert left == right, (
        f"reassociation mismatch: {left.spans} != {right.spans}"
    )
    return c, d, left.spans


@dataclass(frozen=True)
class Reparametrization:
    """A strictly increasing piecewise-linear bijection of [0,1].

    ``points`` are (time, image) pairs; both coordinates strictly increase
    and the endpoints are fixed.  Stalling (constant subintervals) is
    rejected at construction: a stalled traversal is not an execution path.
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = tuple(
            (_as_fraction(t), _as_fraction(u)) for t, u in self.points
        )
        object.__setattr__(self, "points", pts)
        if len(pts) < 2 or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise BadParameter("reparametrization must run from (0,0) to (1,1)")
        for (t0, u0), (t1, u1) in zip(pts, pts[1:]):
            if t1 <= t0 or u1 <= u0:
                raise BadParameter(
                    f"breakpoints must strictly increase, got ({t0},{u0}) then ({t1},{u1})"
                )

    @classmethod
    def identity(cls) -> "Reparametrization":
        return cls(((ZERO, ZERO), (ONE, ONE)))

    def __call__(self, t) -> Fraction:
        t = _as_fraction(t)
        if t < ZERO or t > ONE:
            raise BadParameter(f"time {t} outside [0,1]")
        for (t0, u0), (t1, u1) in zip(self.points, self.points[1:]):
            if t <= t1:
                return u0 + (t - t0) * (u1 - u0) / (t1 - t0)
        raise AssertionError("breakpoints must cover [0,1]")

    def inverse_at(self, u) -> Fraction:
        u = _as_fraction(u)
        if u < ZERO or u > ONE:
            raise BadParameter(f"value {u} outside [0,1]")
        for (t0, u0), (t1, u1) in zip(self.points, self.points[1:]):
            if u <= u1:
                return t0 + (u - u0) * (t1 - t0) / (u1 - u0)
        raise AssertionError("breakpoints must cover [0,1]")


def reparametrize(timed: TimedPath, phi: Reparametrization) -> TimedPath:
    """Precompose the schedule with ``phi``: leaf order is unchanged, the
    leaf of the new path at time t is the old leaf at phi(t)."""
    spans = tuple(
        (phi.inverse_at(s), phi.inverse_at(e), atom) for s, e, atom in timed.spans
    )
    return TimedPath(timed.src, timed.tgt, spans, _tree_from_spans(spans))


def normalize(flow: Flow, timed: TimedPath) -> Path:
    """Forget the schedule: the flow path traversing the same atoms in order.

    Invariant under reparametrization and homomorphic over concatenation.
    """
    try:
        return flow.make_path(timed.leaves())
    except (UnknownAtom, NotComposable) as exc:
        raise NotAPathOfHost(str(exc)) from exc

#!/usr/bin/env python3
"""Flows from scratch: states, atoms, paths, restriction, branching.

A flow is a finite acyclic state graph together with *every* composable
atom sequence as its path set.  This script builds the two smallest
interesting machines and pokes at them.
"""

import globflow as gf

# The branching machine: one computation x, then a fork onto y and z.
fork = gf.validate(
    gf.presentation(
        ["A", "m", "B", "C"],
        [("x", "A", "m"), ("y", "m", "B"), ("z", "m", "C")],
    )
)

print("== the fork ==")
print(fork)
for p in fork.sorted_paths():
    print(f"  {p.src} -> {p.tgt}:  {p.label()}")

print("\npaths A -> B:", sorted(p.label() for p in gf.paths_between(fork, "A", "B")))

# Composition is concatenation, and it is associative on the nose.
x = fork.make_path(["x"])
y = fork.make_path(["y"])
print("x * y =", gf.compose(fork, x, y).label())

# Restricting to the outer states hides m: the two routes survive as
# single packed atoms.
outer = gf.restrict(fork, ["A", "B", "C"])
print("\nrestricted to {A,B,C}:", sorted(p.label() for p in outer.paths))

# Branching shows up as multiple minus-classes at the fork state.
minus = gf.branch_classes(fork, gf.MINUS)
print("\nminus classes at m:", [sorted(p.label() for p in c) for c in minus["m"].classes])
print("minus classes at A:", [sorted(p.label() for p in c) for c in minus["A"].classes])

# Reachability: declare A the entry and B the only exit; C deadlocks.
report = gf.reachability_report(fork, ["A"], ["B"])
print("\nunreachable:", report.unreachable, " deadlocks:", report.deadlocks)

# Aliases: a label that rewrites to an existing composite path.  The
# realized flow never stores the alias inside a path.
with_alias = gf.validate(
    gf.presentation(
        ["0", "1", "2"],
        [("a", "0", "1"), ("b", "1", "2"), ("shortcut", "0", "2")],
        {"shortcut": ["a", "b"]},
    )
)
print("\nalias resolves:", with_alias.make_path(["shortcut"]).label())

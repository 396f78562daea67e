#!/usr/bin/env python3
"""Globe attachment, step by step.

Attaching a globe over cells Z with boundary bZ along two states is a
pushout.  The engine computes its path spaces structurally: admissible
state sequences, factor products with the cell quotient T substituted at
the attachment pair, and gluing along the simplification/inclusion maps.
The oracle recomputes everything by brute force; they must agree.
"""

import globflow as gf
from globflow import oracle
from globflow.pushout import colimit_paths

# Host: a chain a -> 0 -> 1 -> b.
host = gf.validate(
    gf.presentation(
        ["a", "0", "1", "b"],
        [("g", "a", "0"), ("e", "0", "1"), ("k", "1", "b")],
    )
)

# Attach one fresh cell z parallel to e.
spec = gf.attach_spec({"z"}, set(), "0", "1")

print("== the cell quotient T ==")
quotient = gf.build_T(host, spec)
print("classes:", [c.label() for c in quotient])

print("\n== admissible sequences ==")
for seq in gf.admissible_sequences(host, spec):
    tag = "  <- contains the attachment pair" if spec.pair in seq.pairs() else ""
    print(" ", " -> ".join(seq.states), tag)

print("\n== the simplification maps on [a,0,1,b]_1 ==")
seq = gf.AdmissibleSequence(("a", "0", "1", "b"))
compose_map, include_map = gf.simplification_maps(host, spec, seq, 1)
g, e, k = (host.make_path([n]) for n in "gek")
shorter_seq, shorter = compose_map((g, e, k))
print("compose (g,e,k):", " -> ".join(shorter_seq.states), "carrying", shorter[0].label())
print("include (g,e,k): middle entry becomes the class", include_map((g, e, k))[1].label())

print("\n== the attached flow ==")
attached = gf.attach_globe(host, spec)
print("paths a -> b:", sorted(p.label() for p in gf.paths_between(attached, "a", "b")))

print("\n== colimit vs. oracle on 20 random instances ==")
for seed in range(20):
    random_host, random_spec = oracle.random_instance(seed)
    assert colimit_paths(random_host, random_spec) == oracle.brute_force_pushout(
        random_host, random_spec
    )
print("all agree")

# Gluing a boundary cell onto an existing composite path: the cell
# becomes an alias, not a new atom.
glued_spec = gf.attach_spec(
    {"lid"}, {"lid"}, "a", "1", {"lid": host.make_path(["g", "e"])}
)
glued = gf.attach_globe(host, glued_spec)
print("\nglued cell rewrites to:", glued.identifications["lid"])
print("atom count unchanged:", len(glued.atoms) == len(host.atoms))

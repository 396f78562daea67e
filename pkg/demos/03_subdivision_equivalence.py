#!/usr/bin/env python3
"""When are two machines the same computation at different granularity?

Subdivision (T-homotopy) equivalence: a morphism that is an isomorphism
onto the restriction over its image, where every new state sits strictly
inside a subdivided step: no branching or merging there (condition 2) and
no new state cut off from the old ones (condition 3).
"""

import globflow as gf

segment = gf.glob({"u"})
two_step = gf.validate(
    gf.presentation(["s", "m", "t"], [("v", "s", "m"), ("w", "m", "t")])
)


def show(report):
    print("  condition 1:", "pass" if report.condition1.passed else "FAIL",
          "-", report.condition1.detail)
    print("  condition 2:", "pass" if report.condition2.passed else "FAIL",
          report.condition2.offenders or "")
    print("  condition 3:", "pass" if report.condition3.passed else "FAIL",
          report.condition3.offenders or "")
    print("  verdict:", report.verdict)


print("== a segment against its subdivision (accepted) ==")
f = gf.is_morphism(
    {"0": "s", "1": "t"},
    {segment.make_path(["u"]): two_step.make_path(["v", "w"])},
    segment,
    two_step,
)
show(gf.check_T_homotopy(f, segment, two_step))

print("\n== branching location matters (rejected) ==")
# Immediate fork vs. a computation x before the fork: conditions 1 and 3
# hold, but the junction m branches, so condition 2 fails.
wedge = gf.validate(
    gf.presentation(["a", "b", "c"], [("u", "a", "b"), ("v", "a", "c")])
)
fork = gf.validate(
    gf.presentation(
        ["A", "m", "B", "C"],
        [("x", "A", "m"), ("y", "m", "B"), ("z", "m", "C")],
    )
)
g = gf.is_morphism(
    {"a": "A", "b": "B", "c": "C"},
    {
        wedge.make_path(["u"]): fork.make_path(["x", "y"]),
        wedge.make_path(["v"]): fork.make_path(["x", "z"]),
    },
    wedge,
    fork,
)
show(gf.check_T_homotopy(g, wedge, fork))

print("\n== disconnected leftovers matter (rejected) ==")
# A spare component passes the restriction test but fails reachability.
spare = gf.validate(
    gf.presentation(["s", "t", "p", "q"], [("u2", "s", "t"), ("k", "p", "q")])
)
h = gf.is_morphism(
    {"0": "s", "1": "t"},
    {segment.make_path(["u"]): spare.make_path(["u2"])},
    segment,
    spare,
)
show(gf.check_T_homotopy(h, segment, spare))

print("\n== searching for a witness ==")
found = gf.find_T_homotopy(segment, two_step)
print("segment ~ two_step:", found[0].state_map if found else None)
print("two parallel arrows ~ fork:", gf.find_T_homotopy(gf.glob({"u", "v"}), fork))

print("\n== plain isomorphism is label-blind ==")
print("Glob{a,b} ~ Glob{c,d}:", gf.is_isomorphic(gf.glob({"a", "b"}), gf.glob({"c", "d"})) is not None)
print("2x3 blocks ~ 3x2 blocks:",
      gf.is_isomorphic(gf.concat([{"a", "b"}, {"c", "d", "e"}]),
                       gf.concat([{"a", "b", "c"}, {"d", "e"}])) is not None)

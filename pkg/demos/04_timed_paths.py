#!/usr/bin/env python3
"""The timed path algebra, in exact rational arithmetic.

A timed path runs its first factor on [0, a] and its second on [a, 1].
Different groupings of three factors give literally the same schedule when
the weights satisfy c = a*b and (1-c)(1-d) = (1-b); normalization forgets
the schedule and is invariant under reparametrization.
"""

from fractions import Fraction as F

import globflow as gf
from globflow import timed

chain = gf.concat([{"u"}, {"v"}, {"w"}])
u, v, w = (timed.leaf(chain, x) for x in "uvw")

print("== weighted concatenation ==")
g = timed.concat_at(u, F(1, 3), v)
print("u *_(1/3) v  spans:")
for start, end, atom in g.spans:
    print(f"  [{start}, {end}] -> {atom}")
print("value at t=1/6:", g.at(F(1, 6)))

print("\n== the reassociation identity ==")
c, d, spans = timed.check_reassociation(u, v, w, F(1, 2), F(1, 2))
print(f"a=b=1/2 gives c={c}, d={d}; common breakpoints:",
      [str(end) for _, end, _ in spans[:-1]])
c, d, _ = timed.check_reassociation(u, v, w, F(1, 3), F(3, 4))
print(f"a=1/3, b=3/4 gives c={c}, d={d}")

left = timed.concat_at(timed.concat_at(u, F(1, 2), v), F(1, 2), w)
right = timed.concat_at(u, F(1, 4), timed.concat_at(v, F(1, 3), w))
print("different trees, equal schedules:", left == right and left.tree != right.tree)

print("\n== reparametrization ==")
phi = timed.Reparametrization(((F(0), F(0)), (F(1, 4), F(1, 2)), (F(1), F(1))))
g12 = timed.concat_at(u, F(1, 2), v)
moved = timed.reparametrize(g12, phi)
print("breakpoint 1/2 pulled back to:", moved.breakpoints()[0])
print("leaf order unchanged:", moved.leaves() == g12.leaves())

print("\n== normalization ==")
full = timed.concat_at(g, F(1, 2), w)
print("normalize((u *_(1/3) v) *_(1/2) w) =", timed.normalize(chain, full).label())
print("invariant under phi:",
      timed.normalize(chain, timed.reparametrize(full, phi)) == timed.normalize(chain, full))
print("homomorphic over concatenation:",
      timed.normalize(chain, g)
      == gf.compose(chain, timed.normalize(chain, u), timed.normalize(chain, v)))

print("\nfloats are rejected:")
try:
    timed.concat_at(u, 0.5, v)
except gf.FlowError as exc:
    print(" ", exc)

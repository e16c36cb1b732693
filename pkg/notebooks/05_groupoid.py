"""
Germs of the semidirect product groupoid
========================================

Two points x, y are related with displacement n - m when α_n(x) = α_m(y).
We collect such germs around a fixed point, within length caps on the
candidate y, and check the groupoid laws on the sample.
"""

from collections import Counter

from kshift import builtin
from kshift.groupoid import canonical_germ, compose_germs, invert_germ, orbit_sample, parse_ep, preimage_caps

g = builtin("flip2")
x = parse_ep(g, "/a·x")
germs = orbit_sample(g, x, 2)
print("x =", x, " caps:", preimage_caps(x, 2), " germs:", len(germs))

displacements = Counter(h.displacement for h in germs)
for d in sorted(displacements):
    print("  displacement", d, "->", displacements[d], "germs")

###############################################################################
# Composition adds displacements, inverses swap the witnesses.

a = next(h for h in germs if h.displacement == (1, 0))
b = next(h for h in orbit_sample(g, a.y, 1) if h.displacement == (0, 1))
ab = compose_germs(a, b)
print(a, "then", b, "=", ab)
print("a·a⁻¹ is a unit:", compose_germs(a, invert_germ(a)).is_unit())

# a larger witness names the same element; canonical_germ finds the smallest
big = type(a)(a.x, (a.n[0] + 2, a.n[1] + 2), (a.m[0] + 2, a.m[1] + 2), a.y)
print("same element:", big == a, " smallest witness:", canonical_germ(g, big).n, canonical_germ(g, big).m)

###############################################################################
# For a single-vertex 2-graph with one letter, the space is a point and the
# sample is the whole box of displacements.

d = builtin("delta2")
pt = parse_ep(d, "/e·f")
print(sorted(h.displacement for h in orbit_sample(d, pt, 1)))

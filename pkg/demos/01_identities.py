"""
=======================================
Exact identities of the octagon map
=======================================

The closed-form map on 4-fold symmetric octagons, its invariant, the
duality and the two symmetries satisfy a handful of rational-function
identities.  On Fraction inputs they can be checked with no tolerance
at all.
"""
from fractions import Fraction

from pentagram import dual_D, psi, sigma2, t3, t3_inverse
from pentagram.octagon import dual_D_mirrored
from pentagram.verify import check_identities, erratum_checks, random_points

# %%
# One orbit point, by hand.  (9/10, 2/5) is a convex octagon.
o = (Fraction(9, 10), Fraction(2, 5))
print("T3(o)       =", t3(o))
print("psi(o)      =", psi(o), " psi(T3 o) =", psi(t3(o)))
print("D(T3(D(o))) =", dual_D(t3(dual_D(o))), " T3^-1(o) =", t3_inverse(o))
print("D(s2(D(s2(o)))) == T3(o):", dual_D(sigma2(dual_D(sigma2(o)))) == t3(o))

# %%
# The duality as usually printed reads the dual polygon with the same
# orientation as the input.  That version is not an involution:
m = dual_D_mirrored(dual_D_mirrored(o))
print("mirrored dual applied twice:", m, "(x, y) / (x^2 + y^2) swapped")

# %%
# Now 500 random rationals with numerators and denominators up to 1000.
for c in check_identities(random_points(500, "rational", seed=1)):
    print(f"{c.name:22s} {c.trials - c.failures}/{c.trials} exact   skipped {c.skipped}")

# %%
# The invariant uses x^2 + y^2 - 1.  It homogenises to the cubic V and
# is identically 2 on the line y = x - 1 and on a circle of radius 1/sqrt2.
for c in erratum_checks():
    print(f"{c.name:42s} {c.trials - c.failures}/{c.trials}")

"""
===============================
General polygons and Poncelet
===============================

On pentagons the pentagram map returns a projective copy of the input;
on hexagons it does so after two steps.  A Poncelet octagon (inscribed in
one circle, circumscribed about another) is also carried to a projective
copy of itself by the 3-diagonal map.
"""
import random

from pentagram import Conic, deep_diagonal, equivalence_map, is_convex_projective, poncelet_polygon
from pentagram.verify import pentagram_classics, random_convex_polygon

# %%
rng = random.Random(0)
p = random_convex_polygon(5, rng)
m, shift, direction = equivalence_map(p, deep_diagonal(p, 2))
print("pentagon -> T2(pentagon): relabel shift", shift, "direction", direction)
print("50 pentagons / 50 hexagons:", pentagram_classics(50))

# %%
res = poncelet_polygon(Conic.circle(0, 0, 1), 8, (0.6, 0.8), lambda r: Conic.circle(0.1, 0, r), (0.7, 0.9 - 1e-6))
print("inner radius", res.parameter, "closure defect", res.closure_defect)
print("convex:", is_convex_projective(res.polygon))
found = equivalence_map(res.polygon, deep_diagonal(res.polygon, 3))
print("T3 image equivalent:", found is not None, "shift", found[1] if found else None)

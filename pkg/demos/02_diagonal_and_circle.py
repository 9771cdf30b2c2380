"""
=====================================
Orbits on the diagonal and the circle
=====================================

On the diagonal the map is x -> (1+x)/(1+2x): orbits are pulled into the
regular octagon forward and thrown out of the convex region backward.
The duality swaps the diagonal with the unit circle and reverses time,
so circle orbits do the opposite.
"""
import math

from pentagram import orbit
from pentagram.dynamics import (
    circle_backward_escape,
    dps_for_cap,
    escape_times,
    unit_circle_seed,
)

# %%
rec = orbit((0.8, 0.8), 6, 4)
for s in rec:
    print(f"j={s.j:3d}  x={s.x: .12f}  convex={s.convex}")

print("distance to 1/sqrt2 after 6 steps:", abs(rec.at(6).x - math.sqrt(0.5)))

# %%
# A point of the unit circle inside the convex region.  Forward, it
# leaves quickly; backward it approaches the regular octagon, a saddle,
# so plain doubles lose about 0.77 digits per step and the computed orbit
# drifts off the circle.
seed = unit_circle_seed(40)
print("float escape times      :", escape_times(seed, 1000))

# %%
# Two honest ways to follow it: enough digits (about 0.8 per step) ...
dps = dps_for_cap(1000)
print(f"mpmath at {dps} digits  :", escape_times(unit_circle_seed(40, dps), 1000, dps=dps))

# %%
# ... or the conjugacy T3^-1 = D T3 D, which moves the orbit to the
# stable one-dimensional map on the diagonal.
print("via duality, cap 10^4   : backward escape =", circle_backward_escape(seed, 10_000))

# %%
# The seed (5, 6) lies on psi = -2, where T3 squared has order 3.
rec = orbit((5, 6), 6)
print([(str(s.x), str(s.y)) for s in rec])

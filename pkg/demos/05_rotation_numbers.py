"""
=====================================
Rotation numbers on the level curves
=====================================

T3 squared preserves each real loop of a level set and acts on it like a
circle homeomorphism.  Its rotation number is measured against the
arc-length parameter of the traced loop.  At the level through the
point x* of the antidiagonal the map has order two, so the rotation
number is exactly 1/2.
"""
import numpy as np

from pentagram.cubic import trace_real_curve
from pentagram.dynamics import X_STAR, antidiagonal_fixed_residual, order_two_level, rotation_number_estimate

# %%
print("x* =", X_STAR, " residual =", antidiagonal_fixed_residual(X_STAR))
lam_star = order_two_level()
for c in trace_real_curve(lam_star):
    seed = tuple(c.polyline[len(c.polyline) // 3])
    print("lam* bounded" if c.bounded else "lam* unbounded", rotation_number_estimate(lam_star, seed))

# %%
for lam in np.linspace(0.25, 4.0, 6):
    c = trace_real_curve(lam)[0]
    r = rotation_number_estimate(lam, tuple(c.polyline[0]))
    print(f"lam = {lam:5.2f}  rotation {r.value:.8f}  (half-orbit change {r.cauchy_error:.1e})")

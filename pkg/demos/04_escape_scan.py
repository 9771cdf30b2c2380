"""
===========================
Leaving the convex region
===========================

Every convex orbit that is not on the diagonal or the unit circle
becomes non-convex both forward and backward.  The scan below samples
the convex region on a grid and records the first exit in each
direction.
"""
from pathlib import Path

import numpy as np

from pentagram.io import escape_svg
from pentagram.verify import escape_scan_report

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %%
s = escape_scan_report(resolution=128, cap=10_000)
f = s.pop("field")
for k, v in s.items():
    print(f"{k:24s} {v}")

# %%
# Escape times are short away from the two special curves.
inside = f.fwd != 0
both = np.minimum(np.where(f.fwd > 0, f.fwd, 10**9), np.where(f.bwd > 0, f.bwd, 10**9))[inside]
print("histogram of min(fwd, bwd):", np.bincount(both[both < 10**9]))

(out / "escape_128.svg").write_text(escape_svg(f))
print("heatmap in", out / "escape_128.svg")
